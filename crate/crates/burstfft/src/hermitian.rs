//! One-point codes on the Hermitian curve y^κ + y = x^{κ+1} over GF(κ²).
//!
//! The places over a base point a form the coset b_0 + W with
//! W = {β : β^κ + β = 0}. A function in L(λ·P∞) is written
//! f = Σ_u f_u(x)·𝐲^u, where 𝐲^u is the additive composite monomial of u
//! over W (degree u in y, pole order u(κ+1)) and f_u lives in the base
//! composite basis with fewer than k_u = ⌊(λ - u(κ+1))/κ⌋ + 1 terms.
//!
//! Codeword index c·κ + t is the t-th place over base point c, with the
//! places of a block in the order of that block's additive plan.

use crate::affine::AffineGroupParams;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::gfft::{Direction, GfftPlan};
use crate::irs::{FoldShape, Folded, IrsMatrix};
use crate::par;
use crate::rs::RsCode;
use std::collections::HashMap;
use std::sync::Arc;

/// The affine places of the Hermitian curve over GF(κ²).
#[derive(Debug, Clone)]
pub struct HermitianCurve {
    field: Arc<Field>,
    kappa: usize,
    /// GF(p)-basis of W.
    w_basis: Vec<Elem>,
    /// One b with b^κ + b = c, for each c in GF(κ).
    trace_root: HashMap<Elem, Elem>,
}

impl HermitianCurve {
    pub fn new(field: Arc<Field>, kappa: usize) -> Result<Self> {
        let q = field.order();
        if (kappa as u64).checked_mul(kappa as u64) != Some(q) {
            return Err(Error::FieldOrderMismatch { q, kappa: kappa as u64 });
        }
        let f = &*field;
        let mut kernel = Vec::new();
        let mut trace_root = HashMap::new();
        for b in f.elements() {
            let t = f.add(f.pow(b, kappa as u64), b);
            if t == 0 {
                kernel.push(b);
            }
            trace_root.entry(t).or_insert(b);
        }
        let mut w_basis = Vec::new();
        for &b in &kernel {
            w_basis.push(b);
            if f.rank_over_prime(&w_basis) < w_basis.len() {
                w_basis.pop();
            }
        }
        if kernel.len() != kappa || trace_root.len() != kappa {
            return Err(Error::FieldOrderMismatch { q, kappa: kappa as u64 });
        }
        Ok(HermitianCurve { field, kappa, w_basis, trace_root })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    /// κ(κ-1)/2
    pub fn genus(&self) -> usize {
        self.kappa * (self.kappa - 1) / 2
    }

    /// GF(p)-basis of W = ker(β ↦ β^κ + β).
    pub fn w_basis(&self) -> &[Elem] {
        &self.w_basis
    }

    /// Additive plan over the κ places above a, in block order.
    pub fn fiber_plan(&self, a: Elem) -> Result<GfftPlan> {
        let f = &*self.field;
        let norm = f.pow(a, self.kappa as u64 + 1);
        let b0 = self.trace_root[&norm];
        GfftPlan::new(self.field.clone(), &AffineGroupParams::additive(self.w_basis.clone(), b0))
    }

    /// All κ³ affine places, grouped by a.
    pub fn places(&self) -> Result<Vec<(Elem, Elem)>> {
        let mut out = Vec::with_capacity(self.kappa.pow(3));
        for a in self.field.elements() {
            for &b in self.fiber_plan(a)?.points() {
                out.push((a, b));
            }
        }
        Ok(out)
    }
}

/// The pairs (j, u), u < κ, with j·κ + u·(κ+1) ≤ λ, ordered by u then j.
pub fn rr_basis(kappa: usize, lambda: usize) -> Result<Vec<(usize, usize)>> {
    let g = kappa * (kappa - 1) / 2;
    if lambda + 1 < 2 * g {
        return Err(Error::LambdaTooSmall { lambda: lambda as i64, min: 2 * g as i64 - 1 });
    }
    let dims = u_dims(kappa, lambda);
    Ok(dims.iter().enumerate().flat_map(|(u, &k)| (0..k).map(move |j| (j, u))).collect())
}

/// k_u = ⌊(λ - u(κ+1))/κ⌋ + 1, or 0 when negative.
pub fn u_dims(kappa: usize, lambda: usize) -> Vec<usize> {
    (0..kappa)
        .map(|u| {
            let rem = lambda as i64 - (u * (kappa + 1)) as i64;
            if rem < 0 {
                0
            } else {
                rem as usize / kappa + 1
            }
        })
        .collect()
}

/// Heterogeneous row dimensions after folding at base level s: row
/// u + κ·i gets ⌊(k_u - 1 - i)/m_s⌋ + 1 (zero when i ≥ k_u).
pub fn ag_row_dims(kappa: usize, lambda: usize, m_s: usize) -> Vec<usize> {
    let ku = u_dims(kappa, lambda);
    let mut out = vec![0; kappa * m_s];
    for i in 0..m_s {
        for (u, &k) in ku.iter().enumerate() {
            out[u + kappa * i] = if i < k { (k - 1 - i) / m_s + 1 } else { 0 };
        }
    }
    out
}

/// C(λ·P∞) evaluated at the places over the base plan's points.
#[derive(Debug, Clone)]
pub struct HermitianCode {
    curve: Arc<HermitianCurve>,
    base: Arc<GfftPlan>,
    blocks: Vec<GfftPlan>,
    lambda: usize,
    k_u: Vec<usize>,
    offsets: Vec<usize>,
}

impl HermitianCode {
    pub fn new(curve: Arc<HermitianCurve>, base_params: &AffineGroupParams, lambda: usize) -> Result<Self> {
        let base = Arc::new(GfftPlan::new(curve.field().clone(), base_params)?);
        Self::with_base(curve, base, lambda)
    }

    pub fn with_base(curve: Arc<HermitianCurve>, base: Arc<GfftPlan>, lambda: usize) -> Result<Self> {
        let kappa = curve.kappa();
        rr_basis(kappa, lambda)?;
        let n_total = base.len() * kappa;
        if lambda >= n_total {
            return Err(Error::DimensionOutOfRange { k: lambda, n: n_total });
        }
        let blocks = base.points().iter().map(|&a| curve.fiber_plan(a)).collect::<Result<Vec<_>>>()?;
        let k_u = u_dims(kappa, lambda);
        let mut offsets = vec![0];
        for &k in &k_u {
            offsets.push(offsets.last().unwrap() + k);
        }
        Ok(HermitianCode { curve, base, blocks, lambda, k_u, offsets })
    }

    pub fn curve(&self) -> &HermitianCurve {
        &self.curve
    }

    pub fn base_plan(&self) -> &Arc<GfftPlan> {
        &self.base
    }

    pub fn field(&self) -> &Field {
        self.curve.field()
    }

    pub fn kappa(&self) -> usize {
        self.curve.kappa()
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// N = n·κ.
    pub fn len(&self) -> usize {
        self.base.len() * self.kappa()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// λ + 1 - g
    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn k_u(&self) -> &[usize] {
        &self.k_u
    }

    pub fn basis_set(&self) -> Vec<(usize, usize)> {
        rr_basis(self.kappa(), self.lambda).expect("checked at construction")
    }

    /// The places in codeword order.
    pub fn places(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::with_capacity(self.len());
        for (c, &a) in self.base.points().iter().enumerate() {
            out.extend(self.blocks[c].points().iter().map(|&b| (a, b)));
        }
        out
    }

    /// Position of basis pair (j, u) in the message vector.
    pub fn message_index(&self, j: usize, u: usize) -> Result<usize> {
        if u >= self.kappa() || j >= self.k_u[u] {
            return Err(Error::IndexOutsideBasis(j, u));
        }
        Ok(self.offsets[u] + j)
    }

    /// Message vector from (j, u, value) triples.
    pub fn message_from_pairs(&self, pairs: &[(usize, usize, Elem)]) -> Result<Vec<Elem>> {
        let mut m = vec![0; self.dim()];
        for &(j, u, v) in pairs {
            m[self.message_index(j, u)?] = v;
        }
        Ok(m)
    }

    /// Per-u coefficient vectors padded to the base length.
    fn split(&self, message: &[Elem]) -> Vec<Vec<Elem>> {
        let n = self.base.len();
        (0..self.kappa())
            .map(|u| {
                let mut v = message[self.offsets[u]..self.offsets[u + 1]].to_vec();
                v.resize(n, 0);
                v
            })
            .collect()
    }

    pub fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>> {
        if message.len() != self.dim() {
            return Err(Error::LengthMismatch { expected: self.dim(), got: message.len() });
        }
        let parts = self.split(message);
        let evals = par::map_range(self.kappa(), true, |u| self.base.forward(&parts[u]));
        let evals = evals.into_iter().collect::<Result<Vec<_>>>()?;
        self.columns_to_places(&evals)
    }

    /// Given g[u][c] = f_u(P_c), runs the local curve transform per block.
    fn columns_to_places(&self, g: &[Vec<Elem>]) -> Result<Vec<Elem>> {
        let kappa = self.kappa();
        let cols = par::map_range(self.base.len(), true, |c| {
            let col: Vec<Elem> = (0..kappa).map(|u| g[u][c]).collect();
            self.blocks[c].forward(&col)
        });
        let mut out = Vec::with_capacity(self.len());
        for c in cols {
            out.extend(c?);
        }
        Ok(out)
    }

    /// Inverse of [`Self::columns_to_places`].
    fn places_to_columns(&self, v: &[Elem]) -> Result<Vec<Vec<Elem>>> {
        let kappa = self.kappa();
        let n = self.base.len();
        let cols = par::map_range(n, true, |c| self.blocks[c].inverse(&v[c * kappa..(c + 1) * kappa]));
        let mut g = vec![vec![0; n]; kappa];
        for (c, col) in cols.into_iter().enumerate() {
            for (u, x) in col?.into_iter().enumerate() {
                g[u][c] = x;
            }
        }
        Ok(g)
    }

    /// Codeword to message, and whether v is in the code.
    pub fn unencode(&self, v: &[Elem]) -> Result<(Vec<Elem>, bool)> {
        self.check_len(v.len())?;
        let g = self.places_to_columns(v)?;
        let mut msg = Vec::with_capacity(self.dim());
        let mut ok = true;
        for (u, gu) in g.iter().enumerate() {
            let c = self.base.inverse(gu)?;
            ok &= c[self.k_u[u]..].iter().all(|&x| x == 0);
            msg.extend_from_slice(&c[..self.k_u[u]]);
        }
        Ok((msg, ok))
    }

    pub fn is_codeword(&self, v: &[Elem]) -> Result<bool> {
        Ok(self.unencode(v)?.1)
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got });
        }
        Ok(())
    }

    /// AG τ at base level s: an (κ·m_s) × n_s matrix whose row u + κ·i holds
    /// the i-th component over x_s of f_u.
    pub fn tau_forward(&self, v: &[Elem], s: usize) -> Result<IrsMatrix> {
        self.check_len(v.len())?;
        self.check_level(s)?;
        let kappa = self.kappa();
        let m_s = self.base.block_size(s);
        let n_s = self.base.num_blocks(s);
        let mut g = self.places_to_columns(v)?;
        for gu in g.iter_mut() {
            self.base.run_levels(gu, 0, s, Direction::Inverse, 0);
        }
        let mut out = IrsMatrix::zeros(kappa * m_s, n_s);
        for (u, gu) in g.iter().enumerate() {
            for jcol in 0..n_s {
                for i in 0..m_s {
                    out.set(u + kappa * i, jcol, gu[jcol * m_s + i]);
                }
            }
        }
        out.row_dims = ag_row_dims(kappa, self.lambda, m_s);
        Ok(out)
    }

    pub fn tau_inverse(&self, m: &IrsMatrix, s: usize) -> Result<Vec<Elem>> {
        self.check_level(s)?;
        let kappa = self.kappa();
        let m_s = self.base.block_size(s);
        let n_s = self.base.num_blocks(s);
        if m.rows() != kappa * m_s || m.cols() != n_s {
            return Err(Error::LengthMismatch { expected: self.len(), got: m.rows() * m.cols() });
        }
        let mut g = vec![vec![0; self.base.len()]; kappa];
        for (u, gu) in g.iter_mut().enumerate() {
            for jcol in 0..n_s {
                for i in 0..m_s {
                    gu[jcol * m_s + i] = m.get(u + kappa * i, jcol);
                }
            }
            self.base.run_levels(gu, 0, s, Direction::Forward, 0);
        }
        self.columns_to_places(&g)
    }

    fn check_level(&self, s: usize) -> Result<()> {
        if s > self.base.depth() {
            return Err(Error::LevelOutOfRange { level: s, max: self.base.depth() });
        }
        Ok(())
    }
}

/// A Hermitian code viewed through its fold at base level s.
#[derive(Debug, Clone)]
pub struct FoldedAg {
    code: Arc<HermitianCode>,
    s: usize,
    row_code: RsCode,
}

impl FoldedAg {
    pub fn new(code: Arc<HermitianCode>, s: usize) -> Result<Self> {
        let sub = Arc::new(code.base_plan().sub_plan(s)?);
        let m_s = code.base_plan().block_size(s);
        let ks = code.k_u()[0].div_ceil(m_s);
        let row_code = RsCode::with_dimension(sub, ks, false)?;
        Ok(FoldedAg { code, s, row_code })
    }

    pub fn code(&self) -> &HermitianCode {
        &self.code
    }

    pub fn level(&self) -> usize {
        self.s
    }
}

impl Folded for FoldedAg {
    fn field(&self) -> &Field {
        self.code.field()
    }

    fn n(&self) -> usize {
        self.code.len()
    }

    fn dim(&self) -> usize {
        self.code.dim()
    }

    fn shape(&self) -> FoldShape {
        let b = self.code.base_plan();
        FoldShape {
            s: self.s,
            m: b.block_size(self.s) * self.code.kappa(),
            n_s: b.num_blocks(self.s),
            k_s: self.row_code.k(),
        }
    }

    fn row_dims(&self) -> Vec<usize> {
        ag_row_dims(self.code.kappa(), self.code.lambda(), self.code.base_plan().block_size(self.s))
    }

    fn row_code(&self) -> &RsCode {
        &self.row_code
    }

    fn tau_forward(&self, v: &[Elem]) -> Result<IrsMatrix> {
        self.code.tau_forward(v, self.s)
    }

    fn tau_inverse(&self, m: &IrsMatrix) -> Result<Vec<Elem>> {
        self.code.tau_inverse(m, self.s)
    }

    fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>> {
        self.code.encode(message)
    }

    /// N - λ - 2M
    fn list_theorem_radius(&self) -> i64 {
        self.code.len() as i64 - self.code.lambda() as i64 - 2 * self.shape().m as i64
    }

    /// N - λ - 1, i.e. N(1 - R) - g
    fn unique_theorem_gap(&self) -> i64 {
        self.code.len() as i64 - self.code.lambda() as i64 - 1
    }
}
