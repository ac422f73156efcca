use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("too large: {what} has size {size}, guard is {limit}")]
    TooLarge {
        what: String,
        size: usize,
        limit: usize,
    },
    #[error("face {face} does not lift: holonomy is not the identity")]
    FaceHolonomy { face: usize },
    #[error("Andreev precheck failed: {0}")]
    AndreevViolation(String),
    #[error("realization failed after {restarts} restarts, best residual {best_residual:e}")]
    Realization { restarts: usize, best_residual: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("development failed to close up: {0}")]
    Development(String),
    #[error("invalid crossing: generators {0} and {1} do not commute")]
    InvalidCrossing(usize, usize),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
