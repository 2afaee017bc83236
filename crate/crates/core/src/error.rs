use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient of q^{exponent} requested at or beyond truncation order {truncation}")]
    BeyondTruncation { exponent: i64, truncation: i64 },

    #[error("not invertible over the integers")]
    NotInvertible,

    #[error("non-integral q-power {0}; expand as pair (prefactor, series) instead")]
    NonIntegralPower(String),

    #[error("divisor {delta} does not divide level {level}")]
    DivisorNotInLevel { delta: u64, level: u64 },

    #[error("matrix determinant must be positive, got {0}")]
    NonPositiveDeterminant(i64),

    #[error("unsupported matrix decomposition (g > 1) for divisor {delta}")]
    UnsupportedDecomposition { delta: u64 },

    #[error("transform defined only for weight-0 quotients (weight indicator {0})")]
    NonZeroWeight(i64),

    #[error("inconsistent multiplier (internal error or unsupported case): {0}")]
    InconsistentMultiplier(String),

    #[error("sign-change image is not a real eta quotient")]
    NonRealSignChange,

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("symbol `{0}` is not an eta quotient")]
    NotEtaQuotient(String),

    #[error("oracle range exceeded: n = {n} > {max}")]
    OracleRangeExceeded { n: u64, max: u64 },

    #[error("basis deficient at this truncation")]
    BasisDeficient,

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("expansion budget exceeded: need {needed} terms, budget {budget}")]
    BudgetExceeded { needed: i64, budget: i64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
