use thiserror::Error;

/// Errors raised by the decoding library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field order {p}^{m} exceeds 2^16")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus must be monic of degree {expected} over F_p (got {got} coefficients)")]
    BadModulus { expected: u32, got: usize },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("no default modulus for F_{p}^{m}; supply one explicitly")]
    NoDefaultModulus { p: u32, m: u32 },
    #[error("no primitive element found (internal error)")]
    NoPrimitiveElement,
    #[error("element {value} is outside F_{q}")]
    ElementOutOfRange { value: u32, q: u32 },
    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial division leaves a nonzero remainder")]
    NonExactDivision,
    #[error("duplicate abscissa at positions {0} and {1}")]
    DuplicateAbscissa(usize, usize),
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("message degree {degree} must be below k = {k}")]
    MessageTooLong { degree: usize, k: usize },
    #[error("expected exactly {expected} known positions, got {got}")]
    WrongKnownCount { expected: usize, got: usize },
    #[error("duplicate position {0}")]
    DuplicatePosition(usize),
    #[error("vector length {got} does not match code length {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parameters cannot correct any error (decoding radius {num}/{den})")]
    NoCorrectionCapability { num: i64, den: i64 },
    #[error("re-encoding set required with exactly k = {k} positions")]
    ReencodingSetRequired { k: usize },
    #[error("nu = {0} is not a zero column with resolvable spoilers")]
    NotResolvable(usize),

    #[error("lemma-3 exchange requires a nonzero leading coefficient")]
    ZeroLeadingCoefficient,
    #[error("plan does not match the interpolation system: {0}")]
    PlanMismatch(String),
    #[error("received word is nonzero at re-encoding position {0}; project it first")]
    NotProjected(usize),
    #[error("linear system has only the trivial solution")]
    TrivialNullspace,
    #[error("assembled interpolation polynomial is zero")]
    ZeroInterpolation,
    #[error("decoding requires locators equal to abscissas")]
    LocatorAbscissaMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
