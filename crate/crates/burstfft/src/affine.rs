//! Affine groups T ⋉ W acting on GF(q), their subspace polynomials and
//! ordered orbit enumeration.

use crate::error::{Error, Result};
use crate::field::{parse_u64, prime_factors, Elem, Field};
use crate::poly::Poly;
use std::fmt;
use std::str::FromStr;

/// Description of G = T ⋉ W.
///
/// `t_factors` is the ordered factor list q_1..q_μ of |T| (empty for T
/// trivial); composite factors are allowed. `w_basis` spans W over GF(ℓ).
/// When `ell` is `None` it defaults to q for W = {0} and otherwise to the
/// smallest subfield with t | ℓ - 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineGroupParams {
    pub t_factors: Vec<u64>,
    pub ell: Option<u64>,
    pub w_basis: Vec<Elem>,
    pub gamma: Elem,
}

impl AffineGroupParams {
    /// Coset γ·T of the order-t subgroup, t factored into primes ascending.
    pub fn multiplicative(t: u64, gamma: Elem) -> Self {
        AffineGroupParams { t_factors: prime_factors(t), ell: None, w_basis: vec![], gamma }
    }

    /// Coset γ·T with an explicit factor order.
    pub fn multiplicative_with(t_factors: Vec<u64>, gamma: Elem) -> Self {
        AffineGroupParams { t_factors, ell: None, w_basis: vec![], gamma }
    }

    /// Affine subspace γ + W with W spanned over the prime field.
    pub fn additive(w_basis: Vec<Elem>, gamma: Elem) -> Self {
        AffineGroupParams { t_factors: vec![], ell: None, w_basis, gamma }
    }

    pub fn t(&self) -> u64 {
        self.t_factors.iter().product()
    }
}

impl fmt::Display for AffineGroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={},wdim={},gamma={:#x}", self.t(), self.w_basis.len(), self.gamma)?;
        if !self.w_basis.is_empty() {
            let b: Vec<String> = self.w_basis.iter().map(|w| format!("{w:#x}")).collect();
            write!(f, ",wbasis={}", b.join(";"))?;
        }
        if let Some(ell) = self.ell {
            write!(f, ",ell={ell}")?;
        }
        let tf: Vec<String> = self.t_factors.iter().map(|x| x.to_string()).collect();
        if !tf.is_empty() {
            write!(f, ",tfac={}", tf.join("."))?;
        }
        Ok(())
    }
}

impl FromStr for AffineGroupParams {
    type Err = Error;

    /// Parses a group string assuming characteristic 2 for the default basis.
    fn from_str(s: &str) -> Result<Self> {
        AffineGroupParams::parse_for(s, 2)
    }
}

impl AffineGroupParams {
    /// Parses `t=<int>,wdim=<int>,gamma=0x<hex>[,wbasis=0x..;0x..][,ell=<int>][,tfac=a.b.c]`.
    ///
    /// The default W basis is 1, z, z^2, ..., i.e. the canonical integers
    /// 1, p, p^2, ... for characteristic `p`.
    pub fn parse_for(s: &str, p: u32) -> Result<Self> {
        let mut t = 1u64;
        let mut wdim = 0usize;
        let mut gamma = 0;
        let mut wbasis = None;
        let mut ell = None;
        let mut tfac = None;
        let p_hint = p as u64;
        for part in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, v) =
                part.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got `{part}`")))?;
            match k.trim() {
                "t" => t = parse_u64(v)?,
                "wdim" => wdim = parse_u64(v)? as usize,
                "gamma" => gamma = parse_u64(v)? as Elem,
                "ell" => ell = Some(parse_u64(v)?),
                "wbasis" => {
                    wbasis = Some(v.split(';').map(|x| parse_u64(x).map(|y| y as Elem)).collect::<Result<Vec<_>>>()?)
                }
                "tfac" => tfac = Some(v.split(['.', '*']).map(parse_u64).collect::<Result<Vec<_>>>()?),
                other => return Err(Error::Parse(format!("unknown group key `{other}`"))),
            }
        }
        let w_basis = match wbasis {
            Some(b) => {
                if b.len() != wdim {
                    return Err(Error::Parse(format!("wdim={wdim} but {} basis elements", b.len())));
                }
                b
            }
            None => (0..wdim).map(|i| p_hint.pow(i as u32) as Elem).collect(),
        };
        let t_factors = match tfac {
            Some(f) => {
                if f.iter().product::<u64>() != t {
                    return Err(Error::Parse(format!("tfac does not multiply to t={t}")));
                }
                f
            }
            None => prime_factors(t),
        };
        Ok(AffineGroupParams { t_factors, ell, w_basis, gamma })
    }
}

/// A linearized polynomial Σ c_j x^{p^j}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearizedPoly {
    /// `coeffs[j]` multiplies x^{p^j}.
    pub coeffs: Vec<Elem>,
}

impl LinearizedPoly {
    pub fn identity() -> Self {
        LinearizedPoly { coeffs: vec![1] }
    }

    pub fn eval(&self, f: &Field, x: Elem) -> Elem {
        let p = f.characteristic() as u64;
        let mut acc = 0;
        let mut xp = x;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                xp = f.pow(xp, p);
            }
            acc = f.add(acc, f.mul(c, xp));
        }
        acc
    }

    /// Degree p^(len-1).
    pub fn degree(&self, f: &Field) -> u64 {
        (f.characteristic() as u64).pow(self.coeffs.len() as u32 - 1)
    }

    /// Derivative, i.e. the coefficient of x.
    pub fn derivative(&self) -> Elem {
        self.coeffs[0]
    }

    /// Dense form; only sensible for small degrees.
    pub fn to_poly(&self, f: &Field) -> Poly {
        let p = f.characteristic() as usize;
        let mut dense = vec![0; self.degree(f) as usize + 1];
        let mut e = 1usize;
        for &c in &self.coeffs {
            dense[e] = c;
            e *= p;
        }
        Poly::new(dense)
    }

    /// L(x)^p - c·L(x).
    fn frobenius_step(&self, f: &Field, c: Elem) -> Self {
        let p = f.characteristic() as u64;
        let mut out = vec![0; self.coeffs.len() + 1];
        for (j, &a) in self.coeffs.iter().enumerate() {
            out[j + 1] = f.add(out[j + 1], f.pow(a, p));
            out[j] = f.sub(out[j], f.mul(c, a));
        }
        LinearizedPoly { coeffs: out }
    }
}

/// Expands a GF(ℓ)-basis into a GF(p)-basis ordered w_0θ_0, w_0θ_1, ...,
/// w_1θ_0, ... and checks independence.
pub fn expand_basis(field: &Field, w_basis: &[Elem], ell: u64) -> Result<Vec<Elem>> {
    let theta = field.subfield_basis(ell)?;
    let mut out = Vec::with_capacity(w_basis.len() * theta.len());
    for &w in w_basis {
        for &th in &theta {
            out.push(field.mul(th, w));
        }
    }
    if field.rank_over_prime(&out) != out.len() {
        return Err(Error::DependentBasis);
    }
    Ok(out)
}

/// The subspace polynomials L_0 = x, L_1, ..., L_m of the flag spanned by
/// successive prefixes of a GF(p)-basis.
pub fn subspace_chain(field: &Field, fp_basis: &[Elem]) -> Result<Vec<LinearizedPoly>> {
    let p = field.characteristic() as u64;
    let mut out = vec![LinearizedPoly::identity()];
    for &b in fp_basis {
        let cur = out.last().unwrap();
        let beta = cur.eval(field, b);
        if beta == 0 {
            return Err(Error::DependentBasis);
        }
        let next = cur.frobenius_step(field, field.pow(beta, p - 1));
        out.push(next);
    }
    Ok(out)
}

/// L(x) = ∏_{α∈W} (x + α) for W = span over GF(ℓ) of `w_basis`.
pub fn linearized_polynomial(field: &Field, w_basis: &[Elem], ell: u64) -> Result<LinearizedPoly> {
    let fp = expand_basis(field, w_basis, ell)?;
    Ok(subspace_chain(field, &fp)?.pop().unwrap())
}

/// A validated affine group with everything needed to enumerate its orbit.
#[derive(Debug, Clone)]
pub struct AffineGroup {
    pub t_factors: Vec<u64>,
    pub t: u64,
    pub ell: u64,
    pub gamma: Elem,
    /// GF(p)-basis of W.
    pub fp_basis: Vec<Elem>,
    /// Subspace polynomials of the prefixes of `fp_basis`.
    pub chain: Vec<LinearizedPoly>,
    /// Generator of T.
    pub alpha: Elem,
    pub n: u64,
}

impl AffineGroup {
    pub fn new(field: &Field, desc: &AffineGroupParams) -> Result<Self> {
        let q = field.order();
        let t = desc.t();
        if desc.t_factors.iter().any(|&x| x < 2) {
            return Err(Error::InvalidGroup("factors of t must be at least 2".into()));
        }
        let ell = match desc.ell {
            Some(e) => e,
            None if desc.w_basis.is_empty() => q,
            None => {
                let p = field.characteristic() as u64;
                let mut e = p;
                loop {
                    if field.has_subfield(e) && (e - 1).is_multiple_of(t) {
                        break e;
                    }
                    if e >= q {
                        return Err(Error::InvalidGroup(format!("no subfield with {t} | l - 1")));
                    }
                    e *= p;
                }
            }
        };
        if !field.has_subfield(ell) {
            return Err(Error::InvalidGroup(format!("GF({ell}) is not a subfield of GF({q})")));
        }
        if (ell - 1) % t != 0 {
            return Err(Error::InvalidGroup(format!("t={t} does not divide l-1={}", ell - 1)));
        }
        let fp_basis = expand_basis(field, &desc.w_basis, ell)?;
        let chain = subspace_chain(field, &fp_basis)?;
        let n = t * (field.characteristic() as u64).pow(fp_basis.len() as u32);
        if n > q {
            return Err(Error::InvalidGroup(format!("group order {n} exceeds q={q}")));
        }
        if t > 1 && chain.last().unwrap().eval(field, desc.gamma) == 0 {
            return Err(Error::GammaInKernel);
        }
        let alpha = field.element_of_order(t)?;
        Ok(AffineGroup { t_factors: desc.t_factors.clone(), t, ell, gamma: desc.gamma, fp_basis, chain, alpha, n })
    }

    /// Number of additive levels (GF(p)-dimension of W).
    pub fn wdim(&self) -> usize {
        self.fp_basis.len()
    }

    /// L = ∏_{α∈W}(x + α).
    pub fn subspace_poly(&self) -> &LinearizedPoly {
        self.chain.last().unwrap()
    }

    /// Orbit points in chain-block order.
    ///
    /// Index i = a + p^w·b with base-p digits a_j and mixed-radix digits b_j
    /// over q_1..q_μ maps to ζ(b)·γ + Σ a_j·e_j where ζ(b) = ∏ g_j^{b_j} and
    /// g_j = α^{t/(q_1···q_{j+1})}. Every level-s block (a contiguous run of
    /// m_s indices) is then a fiber of the level-s generator.
    pub fn points(&self, field: &Field) -> Result<Vec<Elem>> {
        let p = field.characteristic() as usize;
        let mut span = vec![0 as Elem];
        for &e in &self.fp_basis {
            let prev = span.len();
            for digit in 1..p {
                let shift = field.mul(field.from_int(digit as u64), e);
                for i in 0..prev {
                    span.push(field.add(span[i], shift));
                }
            }
        }
        let mut gens = Vec::with_capacity(self.t_factors.len());
        let mut qprod = 1u64;
        for &qj in &self.t_factors {
            qprod *= qj;
            gens.push(field.pow(self.alpha, self.t / qprod));
        }
        let mut zetas = vec![1 as Elem];
        for (j, &qj) in self.t_factors.iter().enumerate() {
            let prev = zetas.len();
            let mut g = 1;
            for _ in 1..qj {
                g = field.mul(g, gens[j]);
                for i in 0..prev {
                    zetas.push(field.mul(zetas[i], g));
                }
            }
        }
        let mut pts = Vec::with_capacity(self.n as usize);
        for &z in &zetas {
            let base = field.mul(z, self.gamma);
            for &v in &span {
                pts.push(field.add(base, v));
            }
        }
        let mut sorted = pts.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoints);
        }
        Ok(pts)
    }
}

/// The n orbit points {u·γ + v}, u ∈ T, v ∈ W, in chain-block order.
pub fn enumerate_coset_points(field: &Field, desc: &AffineGroupParams) -> Result<Vec<Elem>> {
    AffineGroup::new(field, desc)?.points(field)
}
