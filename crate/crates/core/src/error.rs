use thiserror::Error;

/// Errors raised anywhere in the library. Each variant names the failing stage
/// so the CLI can map it to an exit code.
#[derive(Debug, Error)]
pub enum MsfError {
    #[error("malformed operator: {0}")]
    MalformedOperator(String),

    #[error("invalid basis vector: {0}")]
    InvalidBasisVector(String),

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("invalid phase: {0}")]
    InvalidPhase(String),

    #[error("orbit of {root} truncated after {explored} elements (cap {cap})")]
    Truncated {
        root: String,
        explored: usize,
        cap: usize,
    },

    #[error("{0} is not in the orbit")]
    NotInOrbit(String),

    #[error("{0} is not in the support of the M-space")]
    NotSupported(String),

    #[error("phase lies {distance:e} from 1, inside the ambiguous band; refusing to decide")]
    Precision { distance: f64 },

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl MsfError {
    /// True for outcomes where the analysis ran but had to refuse a verdict
    /// (truncated orbits, caps, precision band), as opposed to bad input.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            MsfError::Truncated { .. } | MsfError::CapExceeded(_) | MsfError::Precision { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, MsfError>;
