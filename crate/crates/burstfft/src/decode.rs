//! Burst list decoding and probabilistic unique decoding through τ.
//!
//! Both decoders work on any [`Folded`] code: the received word is mapped
//! to an interleaved RS matrix, where an ℓ-burst touches at most
//! ⌊ℓ/M⌋ + 2 consecutive columns (M the block size), and the rows are
//! decoded on the row point set.

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::irs::{Folded, IrsMatrix};
use crate::par;
use crate::rs::{DecodeStatus, RsCode};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::Range;

pub use crate::rs::{burst_extent, is_burst as fits_burst, Burst};

/// The support interval of `v` if it is an ℓ-burst. The zero vector yields
/// the empty range `0..0`.
pub fn is_burst(v: &[Elem], ell: usize) -> Option<Range<usize>> {
    match burst_extent(v) {
        None => Some(0..0),
        Some((a, b)) if b - a < ell => Some(a..b + 1),
        Some(_) => None,
    }
}

fn diff(f: &crate::field::Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ListDecodeConfig {
    /// Burst radius; defaults to the largest supported one.
    pub radius: Option<usize>,
    /// Decode windows on the rayon pool (when built with `parallel`).
    pub parallel: bool,
}

/// Burst list decoder: one erasure decode per row for each of the k(s)+1
/// windows of n_s - k(s) consecutive columns.
#[derive(Debug, Clone)]
pub struct ListDecoder<F: Folded> {
    code: F,
    radius: usize,
    parallel: bool,
}

impl<F: Folded> ListDecoder<F> {
    pub fn new(code: F, cfg: ListDecodeConfig) -> Result<Self> {
        let max = Self::max_radius(&code)
            .ok_or_else(|| Error::ConfigInfeasible("no columns left to erase at this fold level".into()))?;
        let radius = cfg.radius.unwrap_or(max);
        if radius > max {
            return Err(Error::ConfigInfeasible(format!("radius {radius} exceeds the supported {max}")));
        }
        Ok(ListDecoder { code, radius, parallel: cfg.parallel })
    }

    /// min(theorem radius, M·(n_s - k(s) - 1) - 1), the latter guaranteeing
    /// that every burst's columns fit in one window.
    pub fn max_radius(code: &F) -> Option<usize> {
        let sh = code.shape();
        if sh.k_s >= sh.n_s {
            return None;
        }
        let fit = (sh.m * (sh.n_s - sh.k_s - 1)) as i64 - 1;
        let r = code.list_theorem_radius().min(fit);
        (r >= 0).then_some(r as usize)
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn code(&self) -> &F {
        &self.code
    }

    /// Every codeword c with received - c an ℓ-burst (ℓ = radius), sorted.
    pub fn decode(&self, received: &[Elem]) -> Result<Vec<Vec<Elem>>> {
        let f = self.code.field();
        let sh = self.code.shape();
        let m = self.code.tau_forward(received)?;
        let dims = self.code.row_dims();
        let row_code = self.code.row_code();
        let w = sh.n_s - sh.k_s;
        let attempt = |a: usize| -> Result<Option<Vec<Elem>>> {
            let ctx = row_code.erasure_context(a, w)?;
            let mut out = IrsMatrix::zeros(sh.m, sh.n_s);
            for (i, &ki) in dims.iter().enumerate() {
                let d = match row_code.erasure_decode_with(&ctx, m.row(i)) {
                    Ok(d) => d,
                    Err(Error::NotACodeword) => return Ok(None),
                    Err(e) => return Err(e),
                };
                if d.coeffs[ki.min(sh.n_s)..].iter().any(|&x| x != 0) {
                    return Ok(None);
                }
                out.row_mut(i).copy_from_slice(&d.codeword);
            }
            let c = self.code.tau_inverse(&out)?;
            Ok(is_burst(&diff(f, received, &c), self.radius).map(|_| c))
        };
        let results = par::map_range(sh.k_s + 1, self.parallel, attempt);
        let mut list = Vec::new();
        for r in results {
            if let Some(c) = r? {
                list.push(c);
            }
        }
        list.sort();
        list.dedup();
        Ok(list)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct UniqueDecodeConfig {
    /// Safety margin e.
    pub e: usize,
    /// Burst radius used in the final check; defaults to the largest
    /// supported one.
    pub radius: Option<usize>,
    /// Decode rows independently with no cross-check.
    pub strict: bool,
    pub parallel: bool,
}

/// Radius bounds for unique decoding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Radii {
    /// Largest ℓ with ℓ < G - M·(e+2).
    pub theorem: i64,
    /// Largest ℓ with ⌊ℓ/M⌋ + 2 < n_s - k(s) - e.
    pub row_condition: i64,
    /// n(1 - R - ε) with ε = 1/n_s, for comparison.
    pub rate_form: f64,
    /// Bound on the miscorrection probability, M/q^e.
    pub miscorrection_bound: f64,
}

impl Radii {
    pub fn chosen(&self) -> Option<usize> {
        let r = self.theorem.min(self.row_condition);
        (r >= 0).then_some(r as usize)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniqueOutcome {
    pub codeword: Vec<Elem>,
    pub status: DecodeStatus,
    /// Rows whose root-run search ended in a tie.
    pub ambiguous_rows: usize,
    /// Rows re-decoded on the consensus interval.
    pub redecoded_rows: usize,
}

/// Row-wise syndrome burst decoder with a consensus cross-check.
#[derive(Debug, Clone)]
pub struct UniqueDecoder<F: Folded> {
    code: F,
    cfg: UniqueDecodeConfig,
    radius: usize,
    radii: Radii,
    dims: Vec<usize>,
    row_codes: HashMap<usize, RsCode>,
}

impl<F: Folded> UniqueDecoder<F> {
    pub fn new(code: F, cfg: UniqueDecodeConfig) -> Result<Self> {
        if !code.row_code().is_cyclic() {
            return Err(Error::ConfigInfeasible("row points are not a cyclic coset".into()));
        }
        let radii = Self::radii_for(&code, cfg.e);
        let max =
            radii.chosen().ok_or_else(|| Error::ConfigInfeasible(format!("no feasible radius for e={}", cfg.e)))?;
        let radius = cfg.radius.unwrap_or(max);
        if radius > max {
            return Err(Error::ConfigInfeasible(format!("radius {radius} exceeds the supported {max}")));
        }
        let dims = code.row_dims();
        let mut row_codes = HashMap::new();
        for &d in &dims {
            if let std::collections::hash_map::Entry::Vacant(e) = row_codes.entry(d) {
                e.insert(code.row_code().with_k(d)?);
            }
        }
        Ok(UniqueDecoder { code, cfg, radius, radii, dims, row_codes })
    }

    pub fn radii_for(code: &F, e: usize) -> Radii {
        let sh = code.shape();
        let m = sh.m as i64;
        let theorem = code.unique_theorem_gap() - m * (e as i64 + 2) - 1;
        // ⌊ℓ/M⌋ ≤ n_s - k(s) - e - 3
        let cols = sh.n_s as i64 - sh.k_s as i64 - e as i64 - 3;
        let row_condition = if cols < 0 { -1 } else { m * (cols + 1) - 1 };
        let n = code.n() as f64;
        let rate = code.dim() as f64 / n;
        let q = code.field().order() as f64;
        Radii {
            theorem,
            row_condition,
            rate_form: n * (1.0 - rate - 1.0 / sh.n_s as f64),
            miscorrection_bound: sh.m as f64 / q.powi(e as i32),
        }
    }

    pub fn radii(&self) -> Radii {
        self.radii
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn code(&self) -> &F {
        &self.code
    }

    pub fn decode(&self, received: &[Elem]) -> Result<UniqueOutcome> {
        let f = self.code.field();
        let sh = self.code.shape();
        let m = self.code.tau_forward(received)?;
        let e = self.cfg.e;
        let rows = par::map_range(sh.m, self.cfg.parallel, |i| self.row_codes[&self.dims[i]].wu_decode(m.row(i), e));
        let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
        let failed = |redecoded| UniqueOutcome {
            codeword: received.to_vec(),
            status: DecodeStatus::DetectedFailure,
            ambiguous_rows: 0,
            redecoded_rows: redecoded,
        };
        let ambiguous_rows = rows.iter().filter(|r| r.ambiguous).count();
        let mut out = IrsMatrix::zeros(sh.m, sh.n_s);
        let mut redecoded = 0;
        if self.cfg.strict {
            if rows.iter().any(|r| r.status != DecodeStatus::Ok) {
                return Ok(failed(0));
            }
            for (i, r) in rows.iter().enumerate() {
                out.row_mut(i).copy_from_slice(&r.codeword);
            }
        } else {
            let found: Vec<(usize, usize)> =
                rows.iter().filter(|r| r.status == DecodeStatus::Ok).filter_map(|r| r.burst).collect();
            let consensus = consensus_interval(sh.n_s, &found, self.radius / sh.m + 2);
            for (i, r) in rows.iter().enumerate() {
                let inside = match (r.status, r.burst, consensus) {
                    (DecodeStatus::Ok, None, _) => true,
                    (DecodeStatus::Ok, Some(b), Some(iv)) => cyclic_contains(sh.n_s, iv, b),
                    _ => false,
                };
                if inside {
                    out.row_mut(i).copy_from_slice(&r.codeword);
                    continue;
                }
                let Some((start, len)) = consensus else {
                    return Ok(failed(redecoded));
                };
                redecoded += 1;
                match self.row_codes[&self.dims[i]].erasure_decode(m.row(i), start, len) {
                    Ok(d) => out.row_mut(i).copy_from_slice(&d.codeword),
                    Err(Error::NotACodeword) | Err(Error::WindowTooLong { .. }) => return Ok(failed(redecoded)),
                    Err(err) => return Err(err),
                }
            }
        }
        let c = self.code.tau_inverse(&out)?;
        if is_burst(&diff(f, received, &c), self.radius).is_none() {
            return Ok(failed(redecoded));
        }
        Ok(UniqueOutcome { codeword: c, status: DecodeStatus::Ok, ambiguous_rows, redecoded_rows: redecoded })
    }
}

/// Whether cyclic interval `inner` lies inside `outer` (both (start, len)).
fn cyclic_contains(n: usize, outer: (usize, usize), inner: (usize, usize)) -> bool {
    if inner.1 == 0 {
        return true;
    }
    let off = (inner.0 + n - outer.0) % n;
    off + inner.1 <= outer.1
}

/// Shortest cyclic interval containing every interval of `ivs`.
fn cyclic_hull(n: usize, ivs: &[(usize, usize)]) -> Option<(usize, usize)> {
    ivs.iter()
        .map(|&(a, _)| {
            let len = ivs.iter().map(|&(b, l)| (b + n - a) % n + l).max().unwrap_or(0);
            (len, a)
        })
        .min()
        .map(|(len, a)| (a, len))
}

/// The interval (at most `max_cols` long) that contains the most row
/// intervals; ties go to the shorter one, then the smaller start. The
/// candidates are the row intervals and their hull.
fn consensus_interval(n: usize, found: &[(usize, usize)], max_cols: usize) -> Option<(usize, usize)> {
    let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &b in found {
        *count.entry(b).or_default() += 1;
    }
    let distinct: Vec<(usize, usize)> = count.keys().copied().collect();
    let mut cands: BTreeSet<(usize, usize)> = distinct.iter().copied().collect();
    cands.extend(cyclic_hull(n, &distinct));
    cands
        .into_iter()
        .filter(|c| c.1 <= max_cols)
        .map(|c| {
            let support: usize = count.iter().filter(|(&b, _)| cyclic_contains(n, c, b)).map(|(_, &k)| k).sum();
            (std::cmp::Reverse(support), c.1, c.0)
        })
        .min()
        .map(|(_, len, start)| (start, len))
}
