use thiserror::Error;

use crate::point_ring::Bidegree;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("differential is not homogeneous: image of {generator} has a term in bidegree {found}, expected {expected}")]
    Inhomogeneous {
        generator: String,
        found: Bidegree,
        expected: Bidegree,
    },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("not a free-module table at {at}: {reason}")]
    NotFreeTable { at: Bidegree, reason: String },

    #[error("freeness violated: the attachment leaves a non-free table ({0})")]
    FreenessViolated(String),

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("stage {stage} ({label}): {source}")]
    Stage {
        stage: usize,
        label: String,
        #[source]
        source: Box<Error>,
    },

    #[error("search cap of {cap} nodes exceeded")]
    SearchCap { cap: usize },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("precondition failed: {0}")]
    Precondition(String),
}
