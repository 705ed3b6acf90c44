use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input")]
    Empty,

    #[error("unsupported ambient dimension {0} (at most {max} supported)", max = crate::polytope::MAX_HULL_DIM)]
    UnsupportedDimension(usize),

    #[error(
        "polytope is not full-dimensional (affine dimension {dim} in ambient dimension {ambient})"
    )]
    NotFullDimensional { dim: usize, ambient: usize },

    #[error("the origin is not an interior point")]
    OriginNotInterior,

    #[error("vertex set is not a face of the polytope")]
    NotAFace,

    #[error("cone is not pointed")]
    NotPointed,

    #[error("cone is not simplicial")]
    NotSimplicial,

    #[error("quotient group is not cyclic (invariant factors {0:?})")]
    NonCyclicQuotient(Vec<String>),

    #[error("rays do not lie on a common affine hyperplane off the origin")]
    NotQGorenstein,

    #[error("presentation unsupported: {0}")]
    PresentationUnsupported(String),

    #[error("unsupported chart {chart}: {reason}")]
    UnsupportedChart { chart: String, reason: String },

    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),

    #[error("invalid group action: {0}")]
    InvalidAction(String),

    #[error("hull assembly refused: {0}")]
    HullAssembly(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
