//! Dense univariate polynomials and the quadratic reference algorithms
//! (Horner evaluation, schoolbook product, Lagrange interpolation).
//!
//! Nothing here is used on a fast path; these routines are the independent
//! references the transforms are tested against.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Coefficients low degree first, trailing zeros trimmed. The zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: Elem) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial c·x^k.
    pub fn monomial(c: Elem, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    /// Coefficient of x^i (zero past the end).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, f: &Field, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, f: &Field, c: Elem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Schoolbook product.
    pub fn mul(&self, f: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// Formal derivative: coefficient i is ((i+1) mod p)·coeffs[i+1].
    pub fn derivative(&self, f: &Field) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.mul(f.from_int(i as u64), c)).collect())
    }

    /// Product of (x - r) over the given roots.
    pub fn from_roots(f: &Field, roots: &[Elem]) -> Poly {
        let mut acc = vec![1];
        for &r in roots {
            let mut next = vec![0; acc.len() + 1];
            for (i, &a) in acc.iter().enumerate() {
                next[i + 1] = f.add(next[i + 1], a);
                next[i] = f.sub(next[i], f.mul(a, r));
            }
            acc = next;
        }
        Poly::new(acc)
    }
}

/// Lagrange interpolation through `(x_i, y_i)`; O(m^2) field operations.
pub fn lagrange_interpolate(f: &Field, pts: &[(Elem, Elem)]) -> Result<Poly> {
    let m = pts.len();
    for i in 0..m {
        for j in 0..i {
            if pts[i].0 == pts[j].0 {
                return Err(Error::DuplicateAbscissa);
            }
        }
    }
    let xs: Vec<Elem> = pts.iter().map(|p| p.0).collect();
    let master = Poly::from_roots(f, &xs);
    let mut out = vec![0; m];
    for (i, &(xi, yi)) in pts.iter().enumerate() {
        if yi == 0 {
            continue;
        }
        // master / (x - xi) by synthetic division
        let mc = master.coeffs();
        let mut quot = vec![0; m];
        let mut carry = 0;
        for k in (0..m).rev() {
            carry = f.add(mc[k + 1], f.mul(carry, xi));
            quot[k] = carry;
        }
        let mut denom = 1;
        for (j, &xj) in xs.iter().enumerate() {
            if j != i {
                denom = f.mul(denom, f.sub(xi, xj));
            }
        }
        let scale = f.mul(yi, f.inv_nonzero(denom));
        for k in 0..m {
            out[k] = f.add(out[k], f.mul(quot[k], scale));
        }
    }
    Ok(Poly::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldParams;

    fn gf(s: &str) -> Field {
        Field::new(s.parse::<FieldParams>().unwrap()).unwrap()
    }

    #[test]
    fn eval_basics() {
        let f = gf("2^1");
        assert_eq!(Poly::zero().eval(&f, 1), 0);
        assert_eq!(Poly::new(vec![1, 0, 0, 1]).eval(&f, 1), 0);
    }

    #[test]
    fn derivatives() {
        let f4 = gf("2^2");
        assert_eq!(Poly::new(vec![1, 1, 1]).derivative(&f4), Poly::constant(1));
        let f13 = gf("13^1");
        assert_eq!(Poly::monomial(1, 13).derivative(&f13), Poly::zero());
        assert_eq!(Poly::new(vec![0, 2, 0, 1]).derivative(&f13), Poly::new(vec![2, 0, 3]));
    }

    #[test]
    fn products() {
        let f = gf("2^1");
        let a = Poly::new(vec![1, 1]);
        assert_eq!(a.mul(&f, &a), Poly::new(vec![1, 0, 1]));
        assert_eq!(a.mul(&f, &Poly::zero()), Poly::zero());
    }

    #[test]
    fn interpolation() {
        let f = gf("13^1");
        assert_eq!(lagrange_interpolate(&f, &[(4, 9)]).unwrap(), Poly::constant(9));
        let p = lagrange_interpolate(&f, &[(0, 0), (1, 1), (2, 8), (3, 1)]).unwrap();
        assert_eq!(p, Poly::monomial(1, 3));
        assert_eq!(lagrange_interpolate(&f, &[(1, 0), (1, 2)]), Err(Error::DuplicateAbscissa));
    }
}
