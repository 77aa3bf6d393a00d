//! Reed-Solomon codes on plan point sets: encoding, fast erasure decoding
//! and the syndrome-based burst decoder for cyclic point sets.
//!
//! Messages are composite-basis coefficient vectors of length k. On a plan
//! without additive levels and a single chain factor the composite basis is
//! the monomial basis.
//!
//! Indices are 0-based throughout. A window `(start, len)` covers
//! `start, start+1, ..., start+len-1`, taken mod n for cyclic codes.

use crate::affine::AffineGroupParams;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::gfft::GfftPlan;
use crate::poly::Poly;
use std::collections::HashMap;
use std::sync::Arc;

/// A burst: `values[i]` lands on index `start + i` (mod n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Burst {
    pub start: usize,
    pub values: Vec<Elem>,
}

impl Burst {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Adds the burst onto `word` in place.
    pub fn apply(&self, f: &Field, word: &mut [Elem]) {
        let n = word.len();
        for (i, &v) in self.values.iter().enumerate() {
            let j = (self.start + i) % n;
            word[j] = f.add(word[j], v);
        }
    }

    /// Dense error vector of length n.
    pub fn to_vector(&self, f: &Field, n: usize) -> Vec<Elem> {
        let mut e = vec![0; n];
        self.apply(f, &mut e);
        e
    }
}

/// First and last nonzero index of `e` (no wrap-around).
pub fn burst_extent(e: &[Elem]) -> Option<(usize, usize)> {
    let first = e.iter().position(|&x| x != 0)?;
    let last = e.iter().rposition(|&x| x != 0)?;
    Some((first, last))
}

/// Whether `e` is an ℓ-burst: zero, or last nonzero - first nonzero < ℓ.
pub fn is_burst(e: &[Elem], ell: usize) -> bool {
    match burst_extent(e) {
        None => true,
        Some((a, b)) => b - a < ell,
    }
}

/// Shortest cyclic interval containing every nonzero entry: (start, len).
pub fn cyclic_burst_extent(e: &[Elem]) -> Option<(usize, usize)> {
    let n = e.len();
    let nz: Vec<usize> = (0..n).filter(|&i| e[i] != 0).collect();
    if nz.is_empty() {
        return None;
    }
    // the complement of the largest cyclic gap between nonzeros
    let mut best = (nz[0], nz[nz.len() - 1] - nz[0] + 1);
    for w in nz.windows(2) {
        let gap = w[1] - w[0] - 1;
        let len = n - gap;
        if len < best.1 {
            best = (w[1], len);
        }
    }
    Some(best)
}

/// Result of an erasure decode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub codeword: Vec<Elem>,
    /// Composite-basis coefficients, length n (entries past k are zero).
    pub coeffs: Vec<Elem>,
}

/// Syndrome S and the polynomial Γ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeData {
    pub s: Poly,
    pub gamma: Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootRun {
    NoError,
    /// Inferred burst `[start, start+len)` (cyclic) from a run of `run` roots.
    Found {
        start: usize,
        len: usize,
        run: usize,
        ambiguous: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeStatus {
    Ok,
    DetectedFailure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WuOutcome {
    pub codeword: Vec<Elem>,
    pub status: DecodeStatus,
    pub ambiguous: bool,
    /// The interval that was erased, if any.
    pub burst: Option<(usize, usize)>,
}

/// Precomputed erasure locator data for one window.
#[derive(Debug, Clone)]
pub struct ErasureContext {
    start: usize,
    len: usize,
    /// λ at every point (zero on the window).
    lambda: Vec<Elem>,
    /// 1/λ' on the window, by offset.
    dinv: Vec<Elem>,
}

impl ErasureContext {
    pub fn window(&self) -> (usize, usize) {
        (self.start, self.len)
    }
}

#[derive(Debug, Clone)]
struct Cyclic {
    xi: Elem,
    alpha: Elem,
    /// Monomial-basis DFT over <α>, prime-factor chain.
    aux: GfftPlan,
    /// `perm[e]` is the aux index of α^e.
    perm: Vec<usize>,
    apow: Vec<Elem>,
    xi_pow: Vec<Elem>,
    xi_ipow: Vec<Elem>,
    /// pf[d] = ∏_{e=1..d} (1 - α^e) and its inverse.
    pf: Vec<Elem>,
    pf_inv: Vec<Elem>,
    lambda1: Vec<Elem>,
    delta: Vec<Elem>,
}

/// RS[n, k] on the points of a plan.
#[derive(Debug, Clone)]
pub struct RsCode {
    plan: Arc<GfftPlan>,
    k: usize,
    cyclic: Option<Arc<Cyclic>>,
}

impl RsCode {
    /// `require_cyclic` makes a non-cyclic point set an error; otherwise the
    /// cyclic machinery is attached whenever the points allow it.
    pub fn new(plan: Arc<GfftPlan>, k: usize, require_cyclic: bool) -> Result<Self> {
        let n = plan.len();
        if k >= n {
            return Err(Error::DimensionOutOfRange { k, n });
        }
        Self::with_dimension(plan, k, require_cyclic)
    }

    /// As [`RsCode::new`] but allows k = n (the full space).
    pub(crate) fn with_dimension(plan: Arc<GfftPlan>, k: usize, require_cyclic: bool) -> Result<Self> {
        let n = plan.len();
        if k > n {
            return Err(Error::DimensionOutOfRange { k, n });
        }
        let cyclic = match plan.cyclic_structure() {
            Some((xi, alpha)) => Some(Arc::new(Cyclic::build(&plan, xi, alpha, n - k)?)),
            None if require_cyclic => return Err(Error::CyclicStructureAbsent),
            None => None,
        };
        Ok(RsCode { plan, k, cyclic })
    }

    /// Same points and cyclic tables, different dimension.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        let n = self.n();
        if k >= n {
            return Err(Error::DimensionOutOfRange { k, n });
        }
        let cyclic = match &self.cyclic {
            Some(c) if k == self.k => Some(c.clone()),
            Some(c) => Some(Arc::new(Cyclic::build(&self.plan, c.xi, c.alpha, n - k)?)),
            None => None,
        };
        Ok(RsCode { plan: self.plan.clone(), k, cyclic })
    }

    pub fn plan(&self) -> &Arc<GfftPlan> {
        &self.plan
    }

    pub fn field(&self) -> &Field {
        self.plan.field()
    }

    pub fn n(&self) -> usize {
        self.plan.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic.is_some()
    }

    /// (ξ, α) when the points are ξ·α^j.
    pub fn cyclic_params(&self) -> Option<(Elem, Elem)> {
        self.cyclic.as_ref().map(|c| (c.xi, c.alpha))
    }

    /// Λ^{(1)} = ∏_{j=0}^{r-2} (1 - ξα^j x), low degree first.
    pub fn lambda1(&self) -> Option<&[Elem]> {
        self.cyclic.as_ref().map(|c| c.lambda1.as_slice())
    }

    /// δ_j = 1 / ∏_{i≠j} (P_j - P_i).
    pub fn delta(&self) -> Option<&[Elem]> {
        self.cyclic.as_ref().map(|c| c.delta.as_slice())
    }

    fn to_evals(&self, coeffs: Vec<Elem>) -> Vec<Elem> {
        match &self.cyclic {
            Some(c) => c.eval(self.field(), coeffs),
            None => self.plan.forward(&coeffs).expect("length checked"),
        }
    }

    fn to_coeffs(&self, evals: &[Elem]) -> Vec<Elem> {
        match &self.cyclic {
            Some(c) => c.interp(self.field(), evals),
            None => self.plan.inverse(evals).expect("length checked"),
        }
    }

    /// Evaluates a length-k composite-basis message.
    pub fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>> {
        if message.len() != self.k {
            return Err(Error::LengthMismatch { expected: self.k, got: message.len() });
        }
        let mut c = message.to_vec();
        c.resize(self.n(), 0);
        Ok(self.to_evals(c))
    }

    /// Composite coefficients of a word, and whether it lies in the code.
    pub fn unencode(&self, word: &[Elem]) -> Result<(Vec<Elem>, bool)> {
        self.check_len(word.len())?;
        let c = self.to_coeffs(word);
        let ok = c[self.k..].iter().all(|&x| x == 0);
        Ok((c, ok))
    }

    pub fn is_codeword(&self, word: &[Elem]) -> Result<bool> {
        Ok(self.unencode(word)?.1)
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), got });
        }
        Ok(())
    }

    /// Locator data for erasing `[start, start+len)`.
    pub fn erasure_context(&self, start: usize, len: usize) -> Result<ErasureContext> {
        let n = self.n();
        if len > n - self.k {
            return Err(Error::WindowTooLong { len, max: n - self.k });
        }
        if start >= n && len > 0 {
            return Err(Error::InvalidWindow);
        }
        let f = self.field();
        if let Some(c) = &self.cyclic {
            return Ok(c.context(f, n, start, len));
        }
        // aligned block decomposition of the window, split at n when it wraps
        let plan = &*self.plan;
        let segments =
            if start + len > n { [(start, n), (0, start + len - n)] } else { [(start, start + len), (0, 0)] };
        let mut blocks = Vec::new();
        for (mut pos, end) in segments {
            while pos < end {
                let mut s = 0;
                while s < plan.depth() {
                    let m = plan.block_size(s + 1);
                    if pos % m == 0 && pos + m <= end {
                        s += 1;
                    } else {
                        break;
                    }
                }
                blocks.push((s, pos / plan.block_size(s)));
                pos += plan.block_size(s);
            }
        }
        let factor = |b: &(usize, usize), idx: usize| {
            let (s, c) = *b;
            f.sub(plan.generator_at(s, idx), plan.level_values(s)[c])
        };
        let lambda: Vec<Elem> = crate::par::map_range(n, n >= crate::par::SEQ_CUTOFF, |idx| {
            blocks.iter().fold(1, |acc, b| f.mul(acc, factor(b, idx)))
        });
        let mut dinv = Vec::with_capacity(len);
        for idx in (start..start + len).map(|i| i % n) {
            let mut d = 1;
            for b in &blocks {
                let (s, c) = *b;
                if idx / plan.block_size(s) == c {
                    d = f.mul(d, plan.generator_derivative(s, idx));
                } else {
                    d = f.mul(d, factor(b, idx));
                }
            }
            dinv.push(f.inv_nonzero(d));
        }
        Ok(ErasureContext { start, len, lambda, dinv })
    }

    /// The codeword agreeing with `received` outside the window.
    pub fn erasure_decode(&self, received: &[Elem], start: usize, len: usize) -> Result<Decoded> {
        let ctx = self.erasure_context(start, len)?;
        self.erasure_decode_with(&ctx, received)
    }

    pub fn erasure_decode_with(&self, ctx: &ErasureContext, received: &[Elem]) -> Result<Decoded> {
        self.check_len(received.len())?;
        let n = self.n();
        let f = self.field();
        let mut codeword = received.to_vec();
        if ctx.len > 0 {
            let fev: Vec<Elem> = received.iter().zip(&ctx.lambda).map(|(&r, &l)| f.mul(r, l)).collect();
            let dev = match &self.cyclic {
                Some(c) => c.derivative_evals(f, &fev),
                None => {
                    let fc = self.plan.inverse(&fev)?;
                    self.plan.forward(&self.plan.composite_derivative(&fc)?)?
                }
            };
            for o in 0..ctx.len {
                let j = (ctx.start + o) % n;
                codeword[j] = f.mul(dev[j], ctx.dinv[o]);
            }
        }
        let coeffs = self.to_coeffs(&codeword);
        if ctx.len < n - self.k && coeffs[self.k..].iter().any(|&x| x != 0) {
            return Err(Error::NotACodeword);
        }
        Ok(Decoded { codeword, coeffs })
    }

    fn cyclic(&self) -> Result<&Cyclic> {
        self.cyclic.as_deref().ok_or(Error::CyclicStructureAbsent)
    }

    /// S_i = Σ_j r_j δ_j P_j^i for i < n-k, and Γ_j = S_{r-1-j}·Λ^{(1)}_j.
    pub fn syndrome(&self, received: &[Elem]) -> Result<SyndromeData> {
        let c = self.cyclic()?;
        self.check_len(received.len())?;
        let f = self.field();
        let r = self.n() - self.k;
        let y: Vec<Elem> = received.iter().zip(&c.delta).map(|(&a, &d)| f.mul(a, d)).collect();
        let dft = c.dft(&y);
        let s: Vec<Elem> = (0..r).map(|i| f.mul(c.xi_pow[i], dft[i])).collect();
        let gamma: Vec<Elem> = (0..r).map(|j| f.mul(s[r - 1 - j], c.lambda1[j])).collect();
        Ok(SyndromeData { s: Poly::new(s), gamma: Poly::new(gamma) })
    }

    /// Longest cyclic run of roots α^b, α^{b-1}, ..., α^{b-run+1} of Γ;
    /// the inferred burst starts at b and has length r - run.
    pub fn longest_root_run(&self, gamma: &Poly) -> Result<RootRun> {
        let c = self.cyclic()?;
        if gamma.is_zero() {
            return Ok(RootRun::NoError);
        }
        let n = self.n();
        let r = n - self.k;
        let mut padded = gamma.coeffs().to_vec();
        padded.resize(n, 0);
        let vals = c.dft(&padded);
        let is_root: Vec<bool> = vals.iter().map(|&v| v == 0).collect();
        let Some(anchor) = (0..n).find(|&u| !is_root[u]) else {
            // nonzero Γ of degree < n cannot vanish everywhere
            return Err(Error::NoRootRun);
        };
        // scan cyclically from just after a non-root
        let mut best: Option<(usize, usize)> = None;
        let mut ties = 0;
        let mut run = 0;
        for step in 1..=n {
            let u = (anchor + step) % n;
            if is_root[u] {
                run += 1;
                continue;
            }
            if run > 0 {
                let top = (u + n - 1) % n;
                match best {
                    Some((l, _)) if run < l => {}
                    Some((l, b)) if run == l => {
                        ties += 1;
                        if top < b {
                            best = Some((run, top));
                        }
                    }
                    _ => {
                        best = Some((run, top));
                        ties = 0;
                    }
                }
            }
            run = 0;
        }
        let Some((run, start)) = best else {
            return Err(Error::NoRootRun);
        };
        Ok(RootRun::Found { start, len: r.saturating_sub(run), run, ambiguous: ties > 0 })
    }

    /// Syndrome burst decoding; bursts are accepted only if the root run
    /// exceeds `e`, i.e. the inferred length is below n - k - e.
    pub fn wu_decode(&self, received: &[Elem], e: usize) -> Result<WuOutcome> {
        let syn = self.syndrome(received)?;
        let fail = |ambiguous, burst| WuOutcome {
            codeword: received.to_vec(),
            status: DecodeStatus::DetectedFailure,
            ambiguous,
            burst,
        };
        if syn.s.is_zero() {
            return Ok(WuOutcome {
                codeword: received.to_vec(),
                status: DecodeStatus::Ok,
                ambiguous: false,
                burst: None,
            });
        }
        let run = match self.longest_root_run(&syn.gamma) {
            Ok(r) => r,
            Err(Error::NoRootRun) => return Ok(fail(false, None)),
            Err(err) => return Err(err),
        };
        let (start, len, run, ambiguous) = match run {
            RootRun::NoError => return Ok(fail(false, None)),
            RootRun::Found { start, len, run, ambiguous } => (start, len, run, ambiguous),
        };
        if run <= e {
            return Ok(fail(ambiguous, Some((start, len))));
        }
        match self.erasure_decode(received, start, len) {
            Ok(d) => {
                Ok(WuOutcome { codeword: d.codeword, status: DecodeStatus::Ok, ambiguous, burst: Some((start, len)) })
            }
            Err(Error::NotACodeword) => Ok(fail(ambiguous, Some((start, len)))),
            Err(err) => Err(err),
        }
    }
}

impl Cyclic {
    fn build(plan: &GfftPlan, xi: Elem, alpha: Elem, r: usize) -> Result<Self> {
        let field = plan.field().clone();
        let f = &*field;
        let n = plan.len();
        let aux = GfftPlan::build(field.clone(), &AffineGroupParams::multiplicative(n as u64, 1), usize::MAX)?;
        let index: HashMap<Elem, usize> = aux.points().iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut apow = Vec::with_capacity(n);
        let mut cur = 1;
        for _ in 0..n {
            apow.push(cur);
            cur = f.mul(cur, alpha);
        }
        let perm = apow.iter().map(|x| index[x]).collect();
        let xi_inv = f.inv_nonzero(xi);
        let mut xi_pow = vec![1; n + 1];
        let mut xi_ipow = vec![1; n + 1];
        for i in 1..=n {
            xi_pow[i] = f.mul(xi_pow[i - 1], xi);
            xi_ipow[i] = f.mul(xi_ipow[i - 1], xi_inv);
        }
        let mut pf = vec![1; n];
        for d in 1..n {
            pf[d] = f.mul(pf[d - 1], f.sub(1, apow[d]));
        }
        let pf_inv = pf.iter().map(|&x| f.inv_nonzero(x)).collect();
        let mut lambda1 = vec![1 as Elem];
        for &aj in apow.iter().take(r.saturating_sub(1)) {
            let root = f.mul(xi, aj);
            let mut next = vec![0; lambda1.len() + 1];
            for (i, &a) in lambda1.iter().enumerate() {
                next[i] = f.add(next[i], a);
                next[i + 1] = f.sub(next[i + 1], f.mul(a, root));
            }
            lambda1 = next;
        }
        lambda1.resize(r, 0);
        let scale = f.inv_nonzero(f.mul(f.from_int(n as u64), xi_pow[n]));
        let delta = plan.points().iter().map(|&x| f.mul(x, scale)).collect();
        Ok(Cyclic { xi, alpha, aux, perm, apow, xi_pow, xi_ipow, pf, pf_inv, lambda1, delta })
    }

    /// `out[i] = Σ_j y_j α^{ij}`.
    fn dft(&self, y: &[Elem]) -> Vec<Elem> {
        let ev = self.aux.forward(y).expect("length n");
        self.perm.iter().map(|&a| ev[a]).collect()
    }

    /// Values at ξα^j of Σ m_u x^u.
    fn eval(&self, f: &Field, mut m: Vec<Elem>) -> Vec<Elem> {
        for (u, x) in m.iter_mut().enumerate() {
            *x = f.mul(*x, self.xi_pow[u]);
        }
        self.dft(&m)
    }

    /// Monomial coefficients of the interpolant of `v` at ξα^j.
    fn interp(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        let g = self.gcoeffs(v);
        g.iter().enumerate().map(|(u, &x)| f.mul(x, self.xi_ipow[u])).collect()
    }

    /// Coefficients of G(y) = F(ξy) where F interpolates `v`.
    fn gcoeffs(&self, v: &[Elem]) -> Vec<Elem> {
        let mut aux_order = vec![0; v.len()];
        for (e, &a) in self.perm.iter().enumerate() {
            aux_order[a] = v[e];
        }
        self.aux.inverse(&aux_order).expect("length n")
    }

    /// Values of F' at ξα^j, F interpolating `v`.
    fn derivative_evals(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        let n = v.len();
        let g = self.gcoeffs(v);
        // F'(ξy) has coefficients (u+1)·g_{u+1}/ξ
        let xi_inv = self.xi_ipow[1];
        let h: Vec<Elem> = (0..n)
            .map(|u| if u + 1 < n { f.mul(f.mul(f.from_int(u as u64 + 1), g[u + 1]), xi_inv) } else { 0 })
            .collect();
        self.dft(&h)
    }

    /// ∏_{d=lo..=hi} (1 - α^d) for 1 ≤ lo, hi ≤ n-1; empty when hi < lo.
    fn range_prod(&self, f: &Field, lo: usize, hi: usize) -> Elem {
        if hi < lo {
            return 1;
        }
        f.mul(self.pf[hi], self.pf_inv[lo - 1])
    }

    fn context(&self, f: &Field, n: usize, start: usize, len: usize) -> ErasureContext {
        let mut lambda = vec![0; n];
        let mut dinv = vec![0; len];
        let xi_l = self.xi_pow[len];
        let xi_l1 = if len > 0 { self.xi_pow[len - 1] } else { 1 };
        for (j, lam) in lambda.iter_mut().enumerate() {
            let o = (j + n - start) % n;
            if o < len {
                // derivative at an erased point
                let before = self.range_prod(f, n - o, n - 1);
                let after = self.range_prod(f, 1, len - 1 - o);
                let ajl = self.apow[(j * (len - 1)) % n];
                let d = f.mul(f.mul(xi_l1, ajl), f.mul(before, after));
                dinv[o] = f.inv_nonzero(d);
            } else if len > 0 {
                let lo = (start + n - j) % n;
                let prod = self.range_prod(f, lo, lo + len - 1);
                *lam = f.mul(f.mul(xi_l, self.apow[(j * len) % n]), prod);
            } else {
                *lam = 1;
            }
        }
        ErasureContext { start, len, lambda, dinv }
    }
}
