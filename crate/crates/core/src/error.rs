use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("spacing {spacing} exceeds the domain diameter {diameter}; no node can be placed")]
    TooCoarse { spacing: f64, diameter: f64 },

    #[error("insufficient discretization: {requested} neighbours requested from {available} nodes")]
    InsufficientNodes { requested: usize, available: usize },

    #[error("degenerate stencil at node {node}: {reason}")]
    DegenerateStencil { node: usize, reason: String },

    #[error("no {operator} shape stored for node {node}")]
    MissingShape { node: usize, operator: String },

    #[error("singular system: {0}")]
    SingularSystem(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("reference field has zero infinity norm")]
    ZeroReference,

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
