//! Folding a length-n word into an m_s × n_s matrix and the bijection τ
//! between codewords and interleaved Reed-Solomon words.
//!
//! Column j of the folded matrix holds the m_s values of level-s block j.
//! Applying the inverse local transform to every column turns f into its
//! components f_0..f_{m_s-1} over x_s; row i then lists f_i at the sub-plan
//! points and has degree below k_i = ⌊(k-1-i)/m_s⌋ + 1.
//!
//! Indices are 0-based: entry (i, j) is `v[j·m_s + i]`.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::gfft::{Direction, GfftPlan};
use crate::rs::RsCode;
use std::fmt::Write as _;
use std::sync::Arc;

/// An m × n matrix with per-row degree bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrsMatrix {
    rows: usize,
    cols: usize,
    /// Row-major.
    data: Vec<Elem>,
    pub row_dims: Vec<usize>,
}

impl IrsMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IrsMatrix { rows, cols, data: vec![0; rows * cols], row_dims: vec![cols; rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn set_col(&mut self, j: usize, col: &[Elem]) {
        for (i, &v) in col.iter().enumerate() {
            self.set(i, j, v);
        }
    }

    /// Indices of columns with a nonzero entry.
    pub fn nonzero_cols(&self) -> Vec<usize> {
        (0..self.cols).filter(|&j| (0..self.rows).any(|i| self.get(i, j) != 0)).collect()
    }

    /// Inverse of [`fold`].
    pub fn unfold(&self) -> Vec<Elem> {
        let mut v = vec![0; self.rows * self.cols];
        for j in 0..self.cols {
            for i in 0..self.rows {
                v[j * self.rows + i] = self.get(i, j);
            }
        }
        v
    }

    /// Rows as lines of space-separated hex values.
    pub fn to_hex(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| format!("{v:x}")).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }
}

/// Reshapes v into an m × (n/m) matrix, column j being `v[j·m..(j+1)·m]`.
pub fn fold(v: &[Elem], m: usize) -> Result<IrsMatrix> {
    let n = v.len();
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::NonDivisor { m, n });
    }
    let cols = n / m;
    let mut out = IrsMatrix::zeros(m, cols);
    for j in 0..cols {
        for i in 0..m {
            out.set(i, j, v[j * m + i]);
        }
    }
    Ok(out)
}

pub fn unfold(m: &IrsMatrix) -> Vec<Elem> {
    m.unfold()
}

/// k_i = ⌊(k-1-i)/m⌋ + 1 for i < m (zero once i ≥ k).
pub fn row_dims(k: usize, m: usize) -> Vec<usize> {
    (0..m).map(|i| if i < k { (k - 1 - i) / m + 1 } else { 0 }).collect()
}

/// Columns an ℓ-burst can touch after folding by m.
pub fn folded_burst_bound(ell: usize, m: usize) -> usize {
    if ell == 0 {
        0
    } else {
        ell / m + 2
    }
}

/// τ: fold at level s, then inverse local transforms on every column.
pub fn tau_forward(plan: &GfftPlan, v: &[Elem], s: usize) -> Result<IrsMatrix> {
    if v.len() != plan.len() {
        return Err(Error::LengthMismatch { expected: plan.len(), got: v.len() });
    }
    if s > plan.depth() {
        return Err(Error::LevelOutOfRange { level: s, max: plan.depth() });
    }
    let mut a = v.to_vec();
    plan.run_levels(&mut a, 0, s, Direction::Inverse, 0);
    fold(&a, plan.block_size(s))
}

/// Inverse of [`tau_forward`].
pub fn tau_inverse(plan: &GfftPlan, m: &IrsMatrix, s: usize) -> Result<Vec<Elem>> {
    if s > plan.depth() {
        return Err(Error::LevelOutOfRange { level: s, max: plan.depth() });
    }
    if m.rows() != plan.block_size(s) || m.cols() != plan.num_blocks(s) {
        return Err(Error::LengthMismatch { expected: plan.len(), got: m.rows() * m.cols() });
    }
    let mut a = m.unfold();
    plan.run_levels(&mut a, 0, s, Direction::Forward, 0);
    Ok(a)
}

/// Geometry of a fold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FoldShape {
    pub s: usize,
    /// Rows (block size).
    pub m: usize,
    /// Columns (number of blocks).
    pub n_s: usize,
    /// Largest row dimension.
    pub k_s: usize,
}

/// A code with a τ-style bijection onto interleaved RS words whose rows all
/// live on one row point set.
pub trait Folded: Sync + Send {
    fn field(&self) -> &Field;
    fn n(&self) -> usize;
    /// Dimension of the code.
    fn dim(&self) -> usize;
    fn shape(&self) -> FoldShape;
    fn row_dims(&self) -> Vec<usize>;
    /// RS code on the row points with dimension k(s).
    fn row_code(&self) -> &RsCode;
    fn tau_forward(&self, v: &[Elem]) -> Result<IrsMatrix>;
    fn tau_inverse(&self, m: &IrsMatrix) -> Result<Vec<Elem>>;
    fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>>;
    /// Largest list-decoding radius of the theorem regime (may be negative).
    fn list_theorem_radius(&self) -> i64;
    /// G with unique decoding guaranteed for ℓ < G - M·(e+2).
    fn unique_theorem_gap(&self) -> i64;
}

/// RS[n, k] viewed through its level-s fold.
#[derive(Debug, Clone)]
pub struct FoldedRs {
    code: RsCode,
    s: usize,
    row_code: RsCode,
}

impl FoldedRs {
    pub fn new(code: RsCode, s: usize) -> Result<Self> {
        let plan = code.plan().clone();
        let sub = Arc::new(plan.sub_plan(s)?);
        let ks = code.k().div_ceil(plan.block_size(s));
        let row_code = RsCode::with_dimension(sub, ks, false)?;
        Ok(FoldedRs { code, s, row_code })
    }

    pub fn code(&self) -> &RsCode {
        &self.code
    }

    pub fn level(&self) -> usize {
        self.s
    }
}

impl Folded for FoldedRs {
    fn field(&self) -> &Field {
        self.code.field()
    }

    fn n(&self) -> usize {
        self.code.n()
    }

    fn dim(&self) -> usize {
        self.code.k()
    }

    fn shape(&self) -> FoldShape {
        let p = self.code.plan();
        FoldShape { s: self.s, m: p.block_size(self.s), n_s: p.num_blocks(self.s), k_s: self.row_code.k() }
    }

    fn row_dims(&self) -> Vec<usize> {
        row_dims(self.code.k(), self.code.plan().block_size(self.s))
    }

    fn row_code(&self) -> &RsCode {
        &self.row_code
    }

    fn tau_forward(&self, v: &[Elem]) -> Result<IrsMatrix> {
        let mut m = tau_forward(self.code.plan(), v, self.s)?;
        m.row_dims = self.row_dims();
        Ok(m)
    }

    fn tau_inverse(&self, m: &IrsMatrix) -> Result<Vec<Elem>> {
        tau_inverse(self.code.plan(), m, self.s)
    }

    fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>> {
        self.code.encode(message)
    }

    /// n - k - 2m_s
    fn list_theorem_radius(&self) -> i64 {
        let sh = self.shape();
        self.code.n() as i64 - self.code.k() as i64 - 2 * sh.m as i64
    }

    /// n - k
    fn unique_theorem_gap(&self) -> i64 {
        self.code.n() as i64 - self.code.k() as i64
    }
}

impl<T: Folded + ?Sized> Folded for Arc<T> {
    fn field(&self) -> &Field {
        (**self).field()
    }

    fn n(&self) -> usize {
        (**self).n()
    }

    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn shape(&self) -> FoldShape {
        (**self).shape()
    }

    fn row_dims(&self) -> Vec<usize> {
        (**self).row_dims()
    }

    fn row_code(&self) -> &RsCode {
        (**self).row_code()
    }

    fn tau_forward(&self, v: &[Elem]) -> Result<IrsMatrix> {
        (**self).tau_forward(v)
    }

    fn tau_inverse(&self, m: &IrsMatrix) -> Result<Vec<Elem>> {
        (**self).tau_inverse(m)
    }

    fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>> {
        (**self).encode(message)
    }

    fn list_theorem_radius(&self) -> i64 {
        (**self).list_theorem_radius()
    }

    fn unique_theorem_gap(&self) -> i64 {
        (**self).unique_theorem_gap()
    }
}
