use thiserror::Error;

/// Every failure the laboratory can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("unknown series `{0}`")]
    UnknownSeries(String),

    #[error("series `{0}` is not strictly alternating with decreasing terms")]
    NotAlternating(String),

    #[error("{digits} digits from `{series}` need more than {cap} terms")]
    Infeasible { series: String, digits: u32, cap: u64 },

    #[error("reference certified to {have} digits cannot resolve an error of order 1e-{need}")]
    InsufficientPrecision { have: u32, need: u32 },

    #[error("certified bound violated for `{series}` at {terms} terms")]
    BoundViolation { series: String, terms: u64 },

    #[error("precision cap of {cap} digits reached: {what}")]
    PrecisionCap { cap: u32, what: String },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("singular linear system")]
    Singular,

    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
