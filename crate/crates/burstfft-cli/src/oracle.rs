//! Quadratic Lagrange reference for erasure decoding.

use burstfft::poly::lagrange_interpolate;
use burstfft::rs::RsCode;
use burstfft::{Elem, Error};

/// Reconstructs the codeword agreeing with `received` outside the cyclic
/// window `[start, start + len)`: interpolate through k unerased points,
/// then check the rest. Same errors as the fast path.
pub fn oracle_decode(code: &RsCode, received: &[Elem], start: usize, len: usize) -> burstfft::Result<Vec<Elem>> {
    let (n, k) = (code.n(), code.k());
    if received.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: received.len() });
    }
    if start >= n {
        return Err(Error::InvalidWindow);
    }
    if len > n - k {
        return Err(Error::WindowTooLong { len, max: n - k });
    }
    let f = code.field();
    let pts = code.plan().points();
    let erased = |j: usize| (j + n - start) % n < len;
    let known: Vec<(Elem, Elem)> = (0..n).filter(|&j| !erased(j)).map(|j| (pts[j], received[j])).collect();
    let poly = lagrange_interpolate(f, &known[..k])?;
    if known[k..].iter().any(|&(x, y)| poly.eval(f, x) != y) {
        return Err(Error::NotACodeword);
    }
    Ok(pts.iter().map(|&x| poly.eval(f, x)).collect())
}
