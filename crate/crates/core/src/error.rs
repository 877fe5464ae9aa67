use alloc::string::String;

/// Errors raised by the exact and numeric kernels.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeroPair,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("polynomials live over different variable sets")]
    VarMismatch,
    #[error("components are not homogeneous of a common degree")]
    NotHomogeneous,
    #[error("components are not bihomogeneous")]
    NotBihomogeneous,
    #[error("components share a nonconstant common factor")]
    NotSaturated,
    #[error("all components vanish identically")]
    ZeroMap,
    #[error("singular matrix")]
    Singular,
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("not a Jonquieres map: {0}")]
    NotJonquieres(String),
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
    #[error("disks {0} and {1} are not disjoint")]
    OverlappingDisks(usize, usize),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("malformed scalar: {0}")]
    MalformedScalar(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = core::result::Result<T, Error>;
