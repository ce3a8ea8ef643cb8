use thiserror::Error;

/// Errors raised by the library.
///
/// The CLI maps every variant except the parse/usage ones to exit status 1.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed scalar {0:?}")]
    MalformedScalar(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("decimal syntax {0:?} is not allowed over an exact field")]
    DecimalInExactField(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("inversion of zero")]
    InversionOfZero,
    #[error("operands live over different fields")]
    MixedFieldSpecs,
    #[error("real arithmetic produced a non-finite value")]
    NonFinite,
    #[error("polynomial is identically zero")]
    IdenticallyZeroPolynomial,

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("structure matrix is not square ({rows}x{cols})")]
    NonSquareStructure { rows: usize, cols: usize },
    #[error("structure matrix is empty")]
    EmptyStructure,
    #[error("elements belong to different algebras")]
    MixedAlgebras,
    #[error("basis index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("ambient algebra is not regular")]
    NotRegular,
    #[error("subspace is not a subalgebra")]
    NotASubalgebra,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("unsupported field/dimension combination: {0}")]
    UnsupportedFieldDimension(String),
    #[error("bad index pair ({p}, {q}) for dimension {dim}: need 1 <= p < q <= dim")]
    BadIndices { p: usize, q: usize, dim: usize },
    #[error("dimension {dim} is too small, need at least {min}")]
    DimensionTooSmall { dim: usize, min: usize },
    #[error("(alpha, beta) must not be (0, 0)")]
    ZeroPair,

    #[error("enumeration needs {needed} items, limit is {limit}")]
    TooLarge { needed: u128, limit: u128 },
    #[error("operation requires a prime field")]
    NotFiniteField,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
