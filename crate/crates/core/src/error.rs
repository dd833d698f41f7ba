use thiserror::Error;

/// Errors surfaced by the library.
///
/// Validation failures carry enough context to name the offending datum
/// (basis triple, bidegree, cell) so that broken field documents and wiring
/// bugs in differential assembly are diagnosable from the message alone.
#[derive(Debug, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),

    #[error("presentation axiom violated: {0}")]
    Axiom(String),

    #[error("weight {q} exceeds the presentation truncation {max}")]
    TruncationExceeded { q: i64, max: i64 },

    #[error("integral cell required at H^{{{p},{q}}} but the presentation supplies none")]
    MissingIntegralCell { p: i64, q: i64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("not a complex: {0}")]
    NotAComplex(String),

    #[error("unsupported operation: {0}")]
    UnsupportedOp(String),

    #[error("incompatible coefficients: {0}")]
    CoefficientMismatch(String),

    #[error("no differential is defined for spectrum {0}")]
    NoDifferential(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
