use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus {0:#x} is not irreducible of the declared degree")]
    ReducibleModulus(u64),
    #[error("field order {0} exceeds 2^32")]
    FieldTooLarge(u128),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no element of order {0}")]
    NoSuchOrder(u64),
    #[error("basis is linearly dependent")]
    DependentBasis,
    #[error("gamma lies in the kernel of the subspace polynomial")]
    GammaInKernel,
    #[error("evaluation points are not pairwise distinct")]
    DuplicatePoints,
    #[error("duplicate interpolation abscissa")]
    DuplicateAbscissa,
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("chain factor {factor} exceeds smoothness bound {bound}")]
    SmoothnessExceeded { factor: usize, bound: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("level {level} out of range 0..={max}")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("dimension {k} out of range for length {n}")]
    DimensionOutOfRange { k: usize, n: usize },
    #[error("point set is not a cyclic coset in index order")]
    CyclicStructureAbsent,
    #[error("erasure window of length {len} exceeds n - k = {max}")]
    WindowTooLong { len: usize, max: usize },
    #[error("invalid window")]
    InvalidWindow,
    #[error("received word is not consistent with any codeword off the window")]
    NotACodeword,
    #[error("no root run found")]
    NoRootRun,
    #[error("{m} does not divide {n}")]
    NonDivisor { m: usize, n: usize },
    #[error("infeasible configuration: {0}")]
    ConfigInfeasible(String),
    #[error("decoding failure detected")]
    DetectedFailure,
    #[error("field order {q} is not kappa^2 for kappa = {kappa}")]
    FieldOrderMismatch { q: u64, kappa: u64 },
    #[error("lambda = {lambda} is below 2g - 1 = {min}")]
    LambdaTooSmall { lambda: i64, min: i64 },
    #[error("index ({0}, {1}) outside the Riemann-Roch basis")]
    IndexOutsideBasis(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
