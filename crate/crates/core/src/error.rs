use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero series")]
    DivisionByZeroSeries,
    #[error("coefficient of q^{requested} is beyond truncation (known through q^{known_through})")]
    BeyondTruncation { requested: i64, known_through: i64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no such basis element f_{{{k},{m}}} (need m >= {min})")]
    NoSuchBasisElement { k: i64, m: i64, min: i64 },
    #[error("gamma pole at {0}")]
    GammaPole(String),
    #[error("parameter singularity: {0}")]
    ParameterSingularity(String),
    #[error("outside direct-sum region: {0}")]
    OutsideDirectSum(String),
    #[error("requires continuation (out of scope): {0}")]
    RequiresContinuation(String),
    #[error("finite-difference stencil leaves the upper half plane: {0}")]
    StencilOutsideDomain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown check id `{id}`; valid ids: {valid}")]
    UnknownCheck { id: String, valid: String },
    #[error("divergent parameter region: {0}")]
    Divergent(String),
    #[error("parse error: {0}")]
    Parse(String),
}
