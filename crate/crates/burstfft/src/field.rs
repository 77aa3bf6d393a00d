//! Arithmetic in GF(p^d).
//!
//! Elements are canonical integers in `[0, q)`: the coefficient vector of the
//! residue polynomial packed in base p, so `0` and `1` are the field's zero and
//! one and the prime subfield is `0..p`.
//!
//! Fields up to 2^20 elements use log/exp tables; larger ones fall back to
//! schoolbook polynomial arithmetic.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// A field element in canonical encoding.
pub type Elem = u32;

const TABLE_LIMIT: u64 = 1 << 20;

/// Characteristic, extension degree and modulus of GF(p^d).
///
/// The modulus is the monic degree-d polynomial over GF(p) packed in base p,
/// so `z^4 + z + 1` over GF(2) is `0x13`. Prime fields carry the modulus `z`,
/// i.e. the value `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldParams {
    pub p: u32,
    pub d: u32,
    pub modulus: u64,
}

impl FieldParams {
    pub fn prime(p: u32) -> Self {
        FieldParams { p, d: 1, modulus: p as u64 }
    }

    pub fn new(p: u32, d: u32, modulus: u64) -> Self {
        FieldParams { p, d, modulus }
    }

    /// GF(p^d) with the smallest irreducible monic modulus.
    pub fn with_default_modulus(p: u32, d: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrimeCharacteristic(p as u64));
        }
        if d <= 1 {
            return Ok(Self::prime(p));
        }
        let pd = checked_order(p, d)?;
        for m in pd..2 * pd {
            if is_irreducible(&digits_of(m, p, d as usize + 1), p) {
                return Ok(FieldParams { p, d, modulus: m });
            }
        }
        Err(Error::ReducibleModulus(pd))
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.d)
    }
}

impl fmt::Display for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 1 {
            write!(f, "{}^1", self.p)
        } else {
            write!(f, "{}^{}:{:#x}", self.p, self.d, self.modulus)
        }
    }
}

impl FromStr for FieldParams {
    type Err = Error;

    /// Parses `p^d:0xMODULUS`; the modulus may be omitted when d = 1, and for
    /// d > 1 the smallest irreducible modulus is chosen when it is omitted.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (pd, modulus) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let (p, d) = match pd.split_once('^') {
            Some((p, d)) => (parse_u64(p)?, parse_u64(d)?),
            None => (parse_u64(pd)?, 1),
        };
        let p = u32::try_from(p).map_err(|_| Error::Parse(format!("characteristic {p}")))?;
        let d = u32::try_from(d).map_err(|_| Error::Parse(format!("degree {d}")))?;
        match modulus {
            Some(m) => Ok(FieldParams::new(p, d, parse_u64(m)?)),
            None => FieldParams::with_default_modulus(p, d),
        }
    }
}

/// Parses a decimal or `0x`-prefixed hexadecimal integer.
pub fn parse_u64(s: &str) -> Result<u64> {
    let s = s.trim();
    let r = if let Some(h) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        u64::from_str_radix(h, 16)
    } else {
        s.parse::<u64>()
    };
    r.map_err(|_| Error::Parse(format!("bad integer `{s}`")))
}

#[derive(Debug)]
enum Repr {
    Prime,
    Tables { log: Vec<u32>, exp: Vec<u32> },
    Generic,
}

/// Arithmetic context for GF(p^d). Immutable after construction.
#[derive(Debug)]
pub struct Field {
    desc: FieldParams,
    p: u32,
    d: u32,
    q: u64,
    /// Low coefficients of the modulus (degree < d), as digits.
    red: Vec<u32>,
    repr: Repr,
}

impl Field {
    pub fn new(desc: FieldParams) -> Result<Self> {
        let FieldParams { p, d, modulus } = desc;
        if p < 2 || !is_prime(p as u64) {
            return Err(Error::NonPrimeCharacteristic(p as u64));
        }
        if d == 0 {
            return Err(Error::ReducibleModulus(modulus));
        }
        let q = checked_order(p, d)?;
        if d == 1 {
            if modulus != p as u64 {
                return Err(Error::ReducibleModulus(modulus));
            }
            return Ok(Field { desc, p, d, q, red: vec![], repr: Repr::Prime });
        }
        if modulus < q || modulus >= 2 * q {
            return Err(Error::ReducibleModulus(modulus));
        }
        let digits = digits_of(modulus, p, d as usize + 1);
        if !is_irreducible(&digits, p) {
            return Err(Error::ReducibleModulus(modulus));
        }
        let mut f = Field { desc, p, d, q, red: digits[..d as usize].to_vec(), repr: Repr::Generic };
        if q <= TABLE_LIMIT {
            let g = f.find_primitive();
            let n = (q - 1) as usize;
            let mut exp = vec![0u32; 2 * n];
            let mut log = vec![0u32; q as usize];
            let mut x: Elem = 1;
            for i in 0..n {
                exp[i] = x;
                exp[i + n] = x;
                log[x as usize] = i as u32;
                x = f.mul(x, g);
            }
            f.repr = Repr::Tables { log, exp };
        }
        Ok(f)
    }

    pub fn params(&self) -> FieldParams {
        self.desc
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// Number of elements q.
    pub fn order(&self) -> u64 {
        self.q
    }

    /// All q elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|v| v as Elem)
    }

    /// The image of an integer in the prime subfield.
    #[inline]
    pub fn from_int(&self, n: u64) -> Elem {
        (n % self.p as u64) as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else if self.d == 1 {
            let s = a as u64 + b as u64;
            let p = self.p as u64;
            (if s >= p { s - p } else { s }) as Elem
        } else {
            self.digitwise(a, b, |x, y, p| (x + y) % p)
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else if self.d == 1 {
            let p = self.p as u64;
            ((a as u64 + p - b as u64) % p) as Elem
        } else {
            self.digitwise(a, b, |x, y, p| (x + p - y) % p)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.sub(0, a)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.repr {
            Repr::Prime => ((a as u64 * b as u64) % self.p as u64) as Elem,
            Repr::Tables { log, exp } => {
                if a == 0 || b == 0 {
                    0
                } else {
                    exp[(log[a as usize] + log[b as usize]) as usize]
                }
            }
            Repr::Generic => self.mul_generic(a, b),
        }
    }

    /// Multiplicative inverse; `inv(0)` is an error.
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_nonzero(a))
    }

    /// Inverse of a value the caller knows is nonzero. Returns 0 for 0.
    #[inline]
    pub fn inv_nonzero(&self, a: Elem) -> Elem {
        if a == 0 {
            return 0;
        }
        match &self.repr {
            Repr::Tables { log, exp } => {
                let n = (self.q - 1) as usize;
                exp[(n - log[a as usize] as usize) % n]
            }
            _ => self.pow(a, self.q - 2),
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Repr::Tables { log, exp } = &self.repr {
            let n = self.q - 1;
            let k = (log[a as usize] as u64 * (e % n)) % n;
            return exp[k as usize];
        }
        let mut base = a;
        let mut e = e;
        let mut acc: Elem = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn mul_order(&self, a: Elem) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut n = self.q - 1;
        for (r, _) in factor_pairs(self.q - 1) {
            while n.is_multiple_of(r) && self.pow(a, n / r) == 1 {
                n /= r;
            }
        }
        Ok(n)
    }

    /// An element of multiplicative order exactly `n`.
    ///
    /// Deterministic: candidates g = 1, 2, 3, ... are raised to (q-1)/n and the
    /// first power of order n is returned. For n = q - 1 this is the smallest
    /// primitive element.
    pub fn element_of_order(&self, n: u64) -> Result<Elem> {
        if n == 0 || !(self.q - 1).is_multiple_of(n) {
            return Err(Error::NoSuchOrder(n));
        }
        if n == 1 {
            return Ok(1);
        }
        let cof = (self.q - 1) / n;
        let primes: Vec<u64> = factor_pairs(n).into_iter().map(|(r, _)| r).collect();
        for g in 1..self.q {
            let h = self.pow(g as Elem, cof);
            if primes.iter().all(|&r| self.pow(h, n / r) != 1) {
                return Ok(h);
            }
        }
        Err(Error::NoSuchOrder(n))
    }

    /// Base-p digits of an element, least significant first, length d.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        digits_of(a as u64, self.p, self.d as usize)
    }

    pub fn from_digits(&self, ds: &[u32]) -> Elem {
        from_digits(ds, self.p) as Elem
    }

    /// Rank of a list of elements viewed as vectors over GF(p).
    pub fn rank_over_prime(&self, vs: &[Elem]) -> usize {
        let p = self.p as u64;
        let mut rows: Vec<Vec<u64>> =
            vs.iter().map(|&v| self.digits(v).into_iter().map(|x| x as u64).collect()).collect();
        let mut rank = 0;
        for col in 0..self.d as usize {
            let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, piv);
            let inv = mod_inv(rows[rank][col], p);
            for x in rows[rank].iter_mut() {
                *x = *x * inv % p;
            }
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let f = row[col];
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x = (*x + p * p - f * y) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Whether `ell` is the order of a subfield of this field.
    pub fn has_subfield(&self, ell: u64) -> bool {
        let mut pe = self.p as u64;
        for e in 1..=self.d {
            if pe == ell {
                return self.d.is_multiple_of(e);
            }
            pe = pe.saturating_mul(self.p as u64);
        }
        false
    }

    /// A GF(p)-basis of the subfield GF(ell): 1, g, ..., g^(e-1) for a
    /// generator g of GF(ell)*.
    pub fn subfield_basis(&self, ell: u64) -> Result<Vec<Elem>> {
        if !self.has_subfield(ell) {
            return Err(Error::InvalidGroup(format!("GF({ell}) is not a subfield")));
        }
        let e = ell.trailing_zeros_base(self.p as u64);
        if e == 1 {
            return Ok(vec![1]);
        }
        let g = self.element_of_order(ell - 1)?;
        let mut out = Vec::with_capacity(e as usize);
        let mut x = 1;
        for _ in 0..e {
            out.push(x);
            x = self.mul(x, g);
        }
        Ok(out)
    }

    fn find_primitive(&self) -> Elem {
        let n = self.q - 1;
        let primes: Vec<u64> = factor_pairs(n).into_iter().map(|(r, _)| r).collect();
        (1..self.q as Elem)
            .find(|&g| primes.iter().all(|&r| self.pow(g, n / r) != 1))
            .expect("a finite field has a primitive element")
    }

    fn digitwise(&self, a: Elem, b: Elem, op: impl Fn(u64, u64, u64) -> u64) -> Elem {
        let p = self.p as u64;
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut pw = 1u64;
        for _ in 0..self.d {
            out += op(a % p, b % p, p) * pw;
            a /= p;
            b /= p;
            pw *= p;
        }
        out as Elem
    }

    fn mul_generic(&self, a: Elem, b: Elem) -> Elem {
        let d = self.d as usize;
        if self.p == 2 {
            let mut prod: u64 = 0;
            let (a, mut b) = (a as u64, b as u64);
            let mut sh = 0;
            while b != 0 {
                if b & 1 == 1 {
                    prod ^= a << sh;
                }
                b >>= 1;
                sh += 1;
            }
            let m = self.desc.modulus;
            for bit in (d..2 * d - 1).rev() {
                if prod >> bit & 1 == 1 {
                    prod ^= m << (bit - d);
                }
            }
            return prod as Elem;
        }
        let p = self.p as u64;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &r) in self.red.iter().enumerate() {
                prod[i - d + j] = (prod[i - d + j] + p * p - c * r as u64) % p;
            }
        }
        let ds: Vec<u32> = prod[..d].iter().map(|&x| x as u32).collect();
        self.from_digits(&ds)
    }
}

trait BaseLog {
    fn trailing_zeros_base(self, p: u64) -> u32;
}

impl BaseLog for u64 {
    /// Exponent e with self = p^e (self assumed to be a power of p).
    fn trailing_zeros_base(self, p: u64) -> u32 {
        let mut e = 0;
        let mut x = self;
        while x > 1 {
            x /= p;
            e += 1;
        }
        e
    }
}

fn checked_order(p: u32, d: u32) -> Result<u64> {
    let q = (p as u128).pow(d);
    if q > 1u128 << 32 {
        return Err(Error::FieldTooLarge(q));
    }
    Ok(q as u64)
}

fn digits_of(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    let p = p as u64;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((v % p) as u32);
        v /= p;
    }
    out
}

fn from_digits(ds: &[u32], p: u32) -> u64 {
    ds.iter().rev().fold(0u64, |acc, &x| acc * p as u64 + x as u64)
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Prime factorization as (prime, multiplicity), primes ascending.
pub fn factor_pairs(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut r = 2u64;
    while r * r <= n {
        if n.is_multiple_of(r) {
            let mut k = 0;
            while n.is_multiple_of(r) {
                n /= r;
                k += 1;
            }
            out.push((r, k));
        }
        r += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Prime factors with multiplicity, ascending.
pub fn prime_factors(n: u64) -> Vec<u64> {
    factor_pairs(n).into_iter().flat_map(|(r, k)| std::iter::repeat_n(r, k as usize)).collect()
}

/// Monic polynomial (digits, low first, leading 1) has no monic factor of
/// degree 1..=deg/2 over GF(p).
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for k in 1..=deg / 2 {
        let count = (p as u64).pow(k as u32);
        for low in 0..count {
            let mut g = digits_of(low, p, k);
            g.push(1);
            if poly_rem_is_zero(f, &g, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(f: &[u32], g: &[u32], p: u32) -> bool {
    let p = p as u64;
    let mut r: Vec<u64> = f.iter().map(|&x| x as u64).collect();
    let dg = g.len() - 1;
    for i in (dg..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        for j in 0..=dg {
            r[i - dg + j] = (r[i - dg + j] + p * p - c * g[j] as u64) % p;
        }
    }
    r[..dg].iter().all(|&x| x == 0)
}
