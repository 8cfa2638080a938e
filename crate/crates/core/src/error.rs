use thiserror::Error;

/// Errors shared across the toolkit.
///
/// `DepthOverflow` is kept separate from the generic precondition failures
/// because callers (notably the CLI) map it to a distinct exit status.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Seifert matrix: {0}")]
    InvalidSeifertMatrix(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("derived depth of curve {curve} exceeds max_n = {max_n}")]
    DepthOverflow { curve: String, max_n: usize },

    #[error("unknown knot {0:?}")]
    UnknownKnot(String),

    #[error("target {target} not reachable within budget; best distance {best_distance} via {best_combo}")]
    TargetUnreachable {
        target: String,
        best_distance: String,
        best_combo: String,
    },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
