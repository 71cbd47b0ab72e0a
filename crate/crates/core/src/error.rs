use alloc::string::String;

/// Errors raised by the algebra kernels and the resolution drivers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("ring has no variables")]
    EmptyRing,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero in the coefficient field")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("skew-symmetric matrices need a coefficient field of characteristic other than 2")]
    CharTwoForbidden,
    #[error("matrix entries violate the declared symmetry")]
    SymmetryViolation,
    #[error("matrix is not square or has inconsistent rows")]
    BadShape,
    #[error("minor size {r} out of range for a {m}x{m} matrix")]
    BadRank { r: usize, m: usize },
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("pfaffian of an odd-size matrix")]
    OddSize,
    #[error("invalid row/column index selection")]
    BadIndex,
    #[error("chart variable is not part of the center")]
    NotInCenter,
    #[error("empty blow-up center")]
    EmptyCenter,
    #[error("generators are not homogeneous in the center variables")]
    NonHomogeneousGenerators,
    #[error("matrix of size {0} is too small for this chart reduction")]
    SizeTooSmall(usize),
    #[error("chart position ({0}, {1}) is not valid for this reduction")]
    BadPosition(usize, usize),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = core::result::Result<T, Error>;
