//! Burst-error list decoding and probabilistic unique decoding of
//! Reed-Solomon and Hermitian codes in quasi-linear time.
//!
//! Codes are evaluated on orbits of affine groups T ⋉ W over GF(q). A chain
//! of normal subgroups gives a generalized FFT ([`gfft`]) and a bijection
//! ([`irs`]) between codewords and short interleaved Reed-Solomon words, on
//! which bursts become a few consecutive erased columns.

pub mod affine;
pub mod decode;
pub mod error;
pub mod field;
pub mod gfft;
pub mod hermitian;
pub mod irs;
pub mod par;
pub mod poly;
pub mod rs;

pub use error::{Error, Result};
pub use field::{Elem, Field, FieldParams};
