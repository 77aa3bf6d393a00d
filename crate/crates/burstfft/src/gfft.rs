//! Generalized FFT over a chain of subgroups of an affine group T ⋉ W.
//!
//! A plan fixes the chain G_0 = {1} < G_1 < ... < G_r = G with indices
//! p_1..p_r: first one prime-index step per GF(p)-basis vector of W, then the
//! factors q_1..q_μ of |T|. Level generators are x_0 = x, x_{i+1} = x_i^p -
//! β_i^{p-1}·x_i on additive steps and x_{i+1} = x_i^{q} on multiplicative
//! steps.
//!
//! The composite monomial of index u (mixed radix digits u_0..u_{r-1}) is
//! ∏ x_i^{u_i}; it has degree u in x, so "degree < k" means the top n - k
//! composite coefficients vanish.
//!
//! Points are ordered so that every level-s block, i.e. the index range
//! [j·m_s, (j+1)·m_s), is a fiber of x_s. A level-s butterfly then only mixes
//! p_{s+1} consecutive level-s blocks, and the transform is a product of
//! block-diagonal p×p Vandermonde matrices.

use crate::affine::{AffineGroup, AffineGroupParams};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::par;
use std::sync::Arc;

/// Default bound on chain factors.
pub const DEFAULT_SMOOTHNESS: usize = 256;

/// The map taking the level-s generator to the level-(s+1) generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelMap {
    /// y ↦ y^p - c·y
    Linear { c: Elem },
    /// y ↦ y^e
    Power { e: u64 },
}

impl LevelMap {
    pub fn apply(&self, f: &Field, y: Elem) -> Elem {
        match *self {
            LevelMap::Linear { c } => f.sub(f.pow(y, f.characteristic() as u64), f.mul(c, y)),
            LevelMap::Power { e } => f.pow(y, e),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// An evaluation plan over an ordered orbit.
#[derive(Debug, Clone)]
pub struct GfftPlan {
    field: Arc<Field>,
    factors: Vec<usize>,
    maps: Vec<LevelMap>,
    /// m_0 = 1, m_s = p_1···p_s.
    radix: Vec<usize>,
    /// `levels[s][j]` is x_s on block j.
    levels: Vec<Arc<[Elem]>>,
    /// Per-group p×p Vandermonde matrices and inverses. Factor-2 levels keep
    /// no matrices; their `vander_inv` entry holds 1/(y_1 - y_0) per group.
    vander: Vec<Arc<[Elem]>>,
    vander_inv: Vec<Arc<[Elem]>>,
    n_add: usize,
    /// dx_i/dx for the additive levels 0..=n_add (constants).
    dconst: Vec<Elem>,
    group: Option<Arc<AffineGroup>>,
}

impl GfftPlan {
    /// Builds a plan with the default smoothness bound.
    pub fn new(field: Arc<Field>, desc: &AffineGroupParams) -> Result<Self> {
        Self::build(field, desc, DEFAULT_SMOOTHNESS)
    }

    /// Builds a plan, rejecting chain factors above `bound`.
    pub fn build(field: Arc<Field>, desc: &AffineGroupParams, bound: usize) -> Result<Self> {
        let group = AffineGroup::new(&field, desc)?;
        let p = field.characteristic() as usize;
        let w = group.wdim();
        let mut factors = vec![p; w];
        factors.extend(group.t_factors.iter().map(|&x| x as usize));
        if let Some(&bad) = factors.iter().find(|&&x| x > bound) {
            return Err(Error::SmoothnessExceeded { factor: bad, bound });
        }
        let mut maps = Vec::with_capacity(factors.len());
        let mut dconst = vec![1 as Elem];
        for i in 0..w {
            let beta = group.chain[i].eval(&field, group.fp_basis[i]);
            let c = field.pow(beta, p as u64 - 1);
            maps.push(LevelMap::Linear { c });
            dconst.push(field.neg(field.mul(c, dconst[i])));
        }
        for &q in &group.t_factors {
            maps.push(LevelMap::Power { e: q });
        }
        let points = group.points(&field)?;
        let mut plan = Self::assemble(field, points, factors, maps, w, dconst)?;
        plan.group = Some(Arc::new(group));
        Ok(plan)
    }

    fn assemble(
        field: Arc<Field>,
        points: Vec<Elem>,
        factors: Vec<usize>,
        maps: Vec<LevelMap>,
        n_add: usize,
        dconst: Vec<Elem>,
    ) -> Result<Self> {
        let mut radix = vec![1usize];
        for &p in &factors {
            radix.push(radix.last().unwrap() * p);
        }
        if *radix.last().unwrap() != points.len() {
            return Err(Error::LengthMismatch { expected: *radix.last().unwrap(), got: points.len() });
        }
        let mut levels: Vec<Arc<[Elem]>> = vec![points.into()];
        for (s, map) in maps.iter().enumerate() {
            let prev = &levels[s];
            let next: Vec<Elem> = prev.iter().step_by(factors[s]).map(|&y| map.apply(&field, y)).collect();
            levels.push(next.into());
        }
        let mut vander = Vec::with_capacity(factors.len());
        let mut vander_inv = Vec::with_capacity(factors.len());
        for (s, &p) in factors.iter().enumerate() {
            let groups = levels[s].len() / p;
            if p == 2 {
                let dinv = levels[s]
                    .chunks(2)
                    .map(|y| field.inv(field.sub(y[1], y[0])).map_err(|_| Error::DuplicatePoints))
                    .collect::<Result<Vec<_>>>()?;
                vander.push(Vec::new().into());
                vander_inv.push(dinv.into());
                continue;
            }
            let mut v = Vec::with_capacity(groups * p * p);
            let mut vi = Vec::with_capacity(groups * p * p);
            for g in 0..groups {
                let xs = &levels[s][g * p..(g + 1) * p];
                let mat = vandermonde(&field, xs);
                let inv = invert(&field, &mat, p).ok_or(Error::DuplicatePoints)?;
                v.extend_from_slice(&mat);
                vi.extend_from_slice(&inv);
            }
            vander.push(v.into());
            vander_inv.push(vi.into());
        }
        Ok(GfftPlan { field, factors, maps, radix, levels, vander, vander_inv, n_add, dconst, group: None })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// The affine group this plan was built from (absent for sub-plans).
    pub fn group(&self) -> Option<&AffineGroup> {
        self.group.as_deref()
    }

    pub fn len(&self) -> usize {
        self.levels[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[Elem] {
        &self.levels[0]
    }

    /// Chain factors p_1..p_r.
    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn level_maps(&self) -> &[LevelMap] {
        &self.maps
    }

    /// Chain length r.
    pub fn depth(&self) -> usize {
        self.factors.len()
    }

    /// Number of additive (prime-index translation) levels.
    pub fn additive_levels(&self) -> usize {
        self.n_add
    }

    /// Block size m_s at level s.
    pub fn block_size(&self, s: usize) -> usize {
        self.radix[s]
    }

    /// Number of blocks n_s at level s.
    pub fn num_blocks(&self, s: usize) -> usize {
        self.len() / self.radix[s]
    }

    /// Values of x_s, one per level-s block.
    pub fn level_values(&self, s: usize) -> &[Elem] {
        &self.levels[s]
    }

    /// x_s at point index `idx`.
    pub fn generator_at(&self, s: usize, idx: usize) -> Elem {
        self.levels[s][idx / self.radix[s]]
    }

    /// Mixed-radix digits of a composite exponent.
    pub fn exponent_digits(&self, mut u: usize) -> Vec<usize> {
        self.factors
            .iter()
            .map(|&p| {
                let d = u % p;
                u /= p;
                d
            })
            .collect()
    }

    /// The composite monomial of index u evaluated at point `idx` via the
    /// level tables, by repeated multiplication.
    pub fn monomial_at(&self, u: usize, idx: usize) -> Elem {
        let f = &*self.field;
        self.exponent_digits(u)
            .iter()
            .enumerate()
            .fold(1, |acc, (i, &d)| f.mul(acc, f.pow(self.generator_at(i, idx), d as u64)))
    }

    fn check_level(&self, s: usize) -> Result<()> {
        if s > self.depth() {
            return Err(Error::LevelOutOfRange { level: s, max: self.depth() });
        }
        Ok(())
    }

    /// Plan of length n_s over the values of x_s, with chain p_{s+1}..p_r.
    pub fn sub_plan(&self, s: usize) -> Result<GfftPlan> {
        self.check_level(s)?;
        if s == 0 {
            return Ok(self.clone());
        }
        let base = self.radix[s];
        let (n_add, dconst) = if s <= self.n_add {
            let ds = self.field.inv_nonzero(self.dconst[s]);
            (self.n_add - s, self.dconst[s..].iter().map(|&d| self.field.mul(d, ds)).collect())
        } else {
            (0, vec![1])
        };
        Ok(GfftPlan {
            field: self.field.clone(),
            factors: self.factors[s..].to_vec(),
            maps: self.maps[s..].to_vec(),
            radix: self.radix[s..].iter().map(|&m| m / base).collect(),
            levels: self.levels[s..].to_vec(),
            vander: self.vander[s..].to_vec(),
            vander_inv: self.vander_inv[s..].to_vec(),
            n_add,
            dconst,
            group: None,
        })
    }

    /// Composite-basis coefficients to evaluations.
    pub fn forward(&self, coeffs: &[Elem]) -> Result<Vec<Elem>> {
        self.check_len(coeffs.len())?;
        let mut a = coeffs.to_vec();
        self.run_levels(&mut a, 0, self.depth(), Direction::Forward, 0);
        Ok(a)
    }

    /// Evaluations to composite-basis coefficients.
    pub fn inverse(&self, evals: &[Elem]) -> Result<Vec<Elem>> {
        self.check_len(evals.len())?;
        let mut a = evals.to_vec();
        self.run_levels(&mut a, 0, self.depth(), Direction::Inverse, 0);
        Ok(a)
    }

    /// The length-m_s transform restricted to level-s block `block`.
    ///
    /// Forward maps the block-local coefficients (f_0, ..., f_{m_s-1}) at
    /// x_s = x_s(block) to the m_s evaluations inside the block.
    pub fn local_column_transform(&self, s: usize, block: usize, column: &[Elem], dir: Direction) -> Result<Vec<Elem>> {
        self.check_level(s)?;
        if column.len() != self.radix[s] {
            return Err(Error::LengthMismatch { expected: self.radix[s], got: column.len() });
        }
        if block >= self.num_blocks(s) {
            return Err(Error::LevelOutOfRange { level: block, max: self.num_blocks(s) - 1 });
        }
        let mut a = column.to_vec();
        self.run_levels(&mut a, 0, s, dir, block * self.radix[s]);
        Ok(a)
    }

    /// Applies levels `lo..hi` to `a`, whose first entry sits at global index
    /// `offset` (a multiple of m_hi). `a` spans whole level-`hi` blocks.
    pub(crate) fn run_levels(&self, a: &mut Vec<Elem>, lo: usize, hi: usize, dir: Direction, offset: usize) {
        if lo >= hi {
            return;
        }
        let mut tmp = vec![0; a.len()];
        match dir {
            Direction::Forward => {
                for s in (lo..hi).rev() {
                    self.level(a, &mut tmp, s, offset, dir);
                    std::mem::swap(a, &mut tmp);
                }
            }
            Direction::Inverse => {
                for s in lo..hi {
                    self.level(a, &mut tmp, s, offset, dir);
                    std::mem::swap(a, &mut tmp);
                }
            }
        }
    }

    fn level(&self, src: &[Elem], dst: &mut [Elem], s: usize, offset: usize, dir: Direction) {
        let p = self.factors[s];
        let m = self.radix[s];
        let gsz = p * m;
        let first_group = offset / gsz;
        if p == 2 {
            return self.pair_level(src, dst, s, m, first_group, dir);
        }
        let mats: &[Elem] = match dir {
            Direction::Forward => &self.vander[s],
            Direction::Inverse => &self.vander_inv[s],
        };
        let f = &*self.field;
        par::for_each_chunk(dst, par::SEQ_CUTOFF, |off, out| {
            for (k, o) in out.iter_mut().enumerate() {
                let idx = off + k;
                let g = idx / gsz;
                let r = idx % gsz;
                let (j, u) = (r / m, r % m);
                let row = &mats[((first_group + g) * p + j) * p..][..p];
                let base = g * gsz + u;
                let mut acc = 0;
                for (d, &c) in row.iter().enumerate() {
                    acc = f.add(acc, f.mul(c, src[base + m * d]));
                }
                *o = acc;
            }
        });
    }

    /// Factor-2 level as a butterfly: (a, b) ↦ (a + b·y_0, a + b·y_1).
    fn pair_level(&self, src: &[Elem], dst: &mut [Elem], s: usize, m: usize, first_group: usize, dir: Direction) {
        let f = &*self.field;
        let ys = &self.levels[s];
        let dinv = &self.vander_inv[s];
        let gsz = 2 * m;
        par::for_each_chunk(dst, par::SEQ_CUTOFF, |off, out| {
            for (k, o) in out.iter_mut().enumerate() {
                let idx = off + k;
                let (g, r) = (idx / gsz, idx % gsz);
                let (j, u) = (r / m, r % m);
                let gg = first_group + g;
                let (a, b) = (src[g * gsz + u], src[g * gsz + m + u]);
                *o = match dir {
                    Direction::Forward => f.add(a, f.mul(b, ys[2 * gg + j])),
                    Direction::Inverse => {
                        let hi = f.mul(f.sub(b, a), dinv[gg]);
                        if j == 1 {
                            hi
                        } else {
                            f.sub(a, f.mul(hi, ys[2 * gg]))
                        }
                    }
                };
            }
        });
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got });
        }
        Ok(())
    }

    /// Derivative d/dx of a function given by composite coefficients.
    ///
    /// With u = a + m_w·v (additive digits a_i, multiplicative part v), the
    /// monomial is ∏_{i<w} x_i^{a_i} · x_w^v and dx_i/dx = D_i is constant on
    /// additive levels, so each nonzero digit contributes one lowered term.
    pub fn composite_derivative(&self, coeffs: &[Elem]) -> Result<Vec<Elem>> {
        self.check_len(coeffs.len())?;
        let n = self.len();
        let f = &*self.field;
        let p = f.characteristic() as usize;
        let w = self.n_add;
        let mw = self.radix[w];
        let has_mult = w < self.depth();
        let mut out = vec![0; n];
        par::for_each_chunk(&mut out, par::SEQ_CUTOFF, |off, chunk| {
            for (k, o) in chunk.iter_mut().enumerate() {
                let u = off + k;
                let mut acc = 0;
                for i in 0..w {
                    let digit = (u / self.radix[i]) % p;
                    if digit + 1 < p {
                        let c = coeffs[u + self.radix[i]];
                        if c != 0 {
                            let t = f.mul(f.from_int(digit as u64 + 1), self.dconst[i]);
                            acc = f.add(acc, f.mul(t, c));
                        }
                    }
                }
                if has_mult && u + mw < n {
                    let v = u / mw + 1;
                    let c = coeffs[u + mw];
                    if c != 0 && !v.is_multiple_of(p) {
                        let t = f.mul(f.from_int(v as u64), self.dconst[w]);
                        acc = f.add(acc, f.mul(t, c));
                    }
                }
                *o = acc;
            }
        });
        Ok(out)
    }

    /// dx_s/dx evaluated at point `idx`.
    pub fn generator_derivative(&self, s: usize, idx: usize) -> Elem {
        let f = &*self.field;
        if s <= self.n_add {
            return self.dconst[s];
        }
        let q = (self.radix[s] / self.radix[self.n_add]) as u64;
        let xw = self.generator_at(self.n_add, idx);
        f.mul(self.dconst[self.n_add], f.mul(f.from_int(q), f.pow(xw, q - 1)))
    }

    /// `(ξ, α)` when the points are ξ·α^j in index order and the plan has
    /// no additive levels.
    pub fn cyclic_structure(&self) -> Option<(Elem, Elem)> {
        let pts = self.points();
        let n = pts.len();
        if n < 2 || self.n_add > 0 || pts[0] == 0 {
            return None;
        }
        let f = &*self.field;
        let xi = pts[0];
        let alpha = f.mul(pts[1], f.inv_nonzero(xi));
        let mut cur = xi;
        for &pt in pts {
            if pt != cur {
                return None;
            }
            cur = f.mul(cur, alpha);
        }
        (cur == xi).then_some((xi, alpha))
    }
}

fn vandermonde(f: &Field, xs: &[Elem]) -> Vec<Elem> {
    let p = xs.len();
    let mut m = Vec::with_capacity(p * p);
    for &x in xs {
        let mut pw = 1;
        for _ in 0..p {
            m.push(pw);
            pw = f.mul(pw, x);
        }
    }
    m
}

/// Gauss-Jordan inverse of a p×p row-major matrix.
fn invert(f: &Field, mat: &[Elem], p: usize) -> Option<Vec<Elem>> {
    let mut a = mat.to_vec();
    let mut inv = vec![0; p * p];
    for i in 0..p {
        inv[i * p + i] = 1;
    }
    for col in 0..p {
        let piv = (col..p).find(|&r| a[r * p + col] != 0)?;
        if piv != col {
            for c in 0..p {
                a.swap(piv * p + c, col * p + c);
                inv.swap(piv * p + c, col * p + c);
            }
        }
        let s = f.inv_nonzero(a[col * p + col]);
        for c in 0..p {
            a[col * p + c] = f.mul(a[col * p + c], s);
            inv[col * p + c] = f.mul(inv[col * p + c], s);
        }
        for r in 0..p {
            if r == col {
                continue;
            }
            let factor = a[r * p + col];
            if factor == 0 {
                continue;
            }
            for c in 0..p {
                a[r * p + c] = f.sub(a[r * p + c], f.mul(factor, a[col * p + c]));
                inv[r * p + c] = f.sub(inv[r * p + c], f.mul(factor, inv[col * p + c]));
            }
        }
    }
    Some(inv)
}
