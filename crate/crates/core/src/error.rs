use thiserror::Error;

use crate::field::FieldKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: FieldKind, found: FieldKind },
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid field descriptor `{0}`")]
    InvalidField(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("relation row {row} is not supported on a single (source, target) block")]
    BlockViolation { row: usize },
    #[error("relation degree must be at least 2, got {0}")]
    BadRelationDegree(usize),
    #[error("the relation is zero")]
    ZeroRelation,
    #[error("splitting violated: kernel of phi has dimension {dim} in degree {degree}")]
    SplittingViolation { degree: usize, dim: usize },
    #[error("series truncations differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("resource bound exceeded: dimension {dim} above cap {cap}")]
    ResourceBound { dim: usize, cap: usize },
    #[error("one-vertex quiver required")]
    NotOneVertex,
    #[error("{0}")]
    Precondition(String),
}
