use alloc::string::String;

/// Errors raised by the arithmetic, crystal and cohomology layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {p}^{a} exceeds the supported size")]
    FieldTooLarge { p: u64, a: usize },
    #[error("modulus is not irreducible of the requested degree")]
    ReducibleModulus,
    #[error("t = {t} does not divide q - 1 = {q_minus_one}")]
    OrderDoesNotDivide { t: u64, q_minus_one: u64 },
    #[error("p = {p} divides t = {t}")]
    PDividesT { p: u64, t: u64 },
    #[error("element is not a 1-unit")]
    NotOneUnit,
    #[error("element is not a unit")]
    NotUnit,
    #[error("trivial cover: empty divisor unsupported (constant pi)")]
    ConstantPi,
    #[error("pi is not a perfect {m}-th power")]
    NotPower { m: u64 },
    #[error("{m} does not divide t = {t}")]
    BadShift { m: u64, t: u64 },
    #[error("unsupported singular eigenspace j = {j}")]
    SingularEigenspace { j: u64 },
    #[error("index {value} out of range (bound {bound})")]
    OutOfRange { value: u64, bound: u64 },
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("insufficient precision: need N >= {required}")]
    InsufficientPrecision { required: u32 },
    #[error("enumeration budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("characteristic polynomial of eigenspace {j} is not rational")]
    NotRational { j: u64 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
