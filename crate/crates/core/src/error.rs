use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by a series that is zero to its stated precision")]
    DivisionByZeroSeries,
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("invalid Eisenstein weight {0}; expected 2, 4 or 6")]
    InvalidWeight(i64),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("series is not a polynomial in j: nonzero residual at exponent {0}")]
    NotPolynomialInJ(i64),
    #[error("invalid hypergeometric parameters: {0}")]
    InvalidParams(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("no special-value formula for (r, at) = ({0}, {1})")]
    UnsupportedPair(i64, i64),
    #[error("Christoffel transform pole: p_n vanishes at lambda")]
    PoleAtLambda,
    #[error("exact polynomial division left a nonzero remainder")]
    NonzeroRemainder,
    #[error("unsupported weight {0} for extremal quasimodular forms")]
    UnsupportedWeight(i64),
    #[error("coefficient denominator divisible by p = {0}; not p-integral")]
    NotPIntegral(u64),
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("singular Hankel minor at order {0}")]
    SingularHankel(usize),
    #[error("quotient-difference breakdown: zero pivot at stage {0}")]
    QdBreakdown(usize),
    #[error("weight {0} is odd")]
    OddWeight(i64),
    #[error("index l = {0} below the admissible range l >= {1}")]
    IndexBelowRange(i64, i64),
}

pub type Result<T> = std::result::Result<T, Error>;
