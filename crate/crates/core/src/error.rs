use thiserror::Error;

use crate::foliation::Reason;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} outside the supported range 5 <= p < 2^31")]
    ModulusOutOfRange(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator {0} vanishes modulo the field characteristic")]
    DenominatorVanishes(String),
    #[error("rings with {0} variables are not supported")]
    UnsupportedArity(usize),
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("variable index {0} out of range")]
    NoSuchVariable(usize),
    #[error("the zero ideal has no Groebner basis")]
    ZeroIdeal,
    #[error("expected a homogeneous polynomial")]
    NotHomogeneous,
    #[error("forms must share one degree")]
    MixedDegrees,
    #[error("Euler identity fails: xA + yB + zC = {0}")]
    EulerFails(String),
    #[error("forms are linearly dependent")]
    DependentForms,
    #[error("the zero syzygy has no span rank")]
    ZeroSyzygy,
    #[error("quotient has infinite colength")]
    InfiniteColength,
    #[error("Hilbert polynomial is not constant (ideal is not zero-dimensional)")]
    NotZeroDimensional,
    #[error("Hilbert function does not stabilize at {expected} by degree {degree}")]
    NotStabilized { expected: u64, degree: u32 },
    #[error("colength {0} is not of the form d^2+d+1 with d >= 2")]
    BadColength(u64),
    #[error("ideal is not saturated")]
    NotSaturated,
    #[error("singular scheme has colength {found}, expected {expected}: the form components share a factor")]
    DegenerateForm { expected: u64, found: String },
    #[error("radial vector field contracts to the zero form")]
    RadialField,
    #[error("foliation degree must be at least 2, got {0}")]
    DegreeTooSmall(i64),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("screen rejected the candidate: {0}")]
    Rejected(Reason),
}
