use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus in [2, 2^31]")]
    NotPrime(u64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("series is indistinguishable from zero at precision {precision}")]
    IndistinguishableFromZero { precision: i64 },
    #[error("precision {have} is below the required {need}")]
    InsufficientPrecision { have: i64, need: i64 },
    #[error("letter {index} has degree {degree}, partial quotients need degree >= 1")]
    DegreeZeroLetter { index: usize, degree: i64 },
    #[error("word too short: achievable precision is {achievable}, requested {requested}")]
    Shortfall { achievable: i64, requested: i64 },
    #[error("empty period")]
    EmptyPeriod,
    #[error("Hensel condition fails: log2|P(seed)| = {residual} is not below 2*log2|P'(seed)| = {}", 2 * .derivative)]
    HenselViolated { residual: i64, derivative: i64 },
    #[error("derivative is indistinguishable from zero at the seed")]
    DerivativeVanishes,
    #[error("Newton iteration did not converge after {iterations} steps")]
    NoConvergence { iterations: usize },
    #[error("prefix mismatch at letter {index}")]
    PrefixMismatch { index: usize },
    #[error("gauge table exhausted: value needed at degree 2^{log2_degree}")]
    GaugeTableExhausted { log2_degree: u64 },
    #[error("invalid gauge function: {0}")]
    InvalidGauge(String),
    #[error("expansion of theta has {have} letters, {need} are needed")]
    InsufficientTheta { have: usize, need: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown id: {0}")]
    UnknownId(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
