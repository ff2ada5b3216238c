use thiserror::Error;

/// Errors for schema construction, model fitting, querying, sampling, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),

    #[error("duplicate constraint: {0}")]
    DuplicateConstraint(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("tuple space too large: {0}")]
    SpaceTooLarge(String),

    #[error("iterative scaling did not converge: max residual {residual:.3e} after {sweeps} sweeps")]
    NonConvergence { residual: f64, sweeps: usize },

    #[error("constraint has no support under the model: {0}")]
    StructuralInfeasibility(String),

    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),

    #[error("sampling failed: rejection cap {cap} exceeded in block {block}")]
    RejectionCapExceeded { block: String, cap: u64 },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
