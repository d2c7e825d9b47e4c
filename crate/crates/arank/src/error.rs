use crate::rat::Int;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The lattice meets the nonnegative orthant in a nonzero vector.
    #[error("lattice is not positive: it contains the nonnegative vector {witness:?}")]
    NotPositive { witness: Vec<Int> },

    /// The generators admit a nonzero nonnegative dependency, so the cone
    /// contains a line.
    #[error("configuration is not strongly convex: nonnegative dependency with coefficients {dependency:?}")]
    NotStronglyConvex { dependency: Vec<String> },

    #[error("generator {index} is the zero vector")]
    ZeroVector { index: usize },

    #[error("lattice basis rows are linearly dependent")]
    DependentBasis,

    #[error("point {point:?} lies outside the cone")]
    PointOutsideCone { point: Vec<String> },

    /// Exact clique cover was skipped for a component above the vertex cap;
    /// `lower..=upper` still brackets the true cover number.
    #[error("graph component with {size} vertices exceeds the clique-cover cap {cap}; bound bracketed by [{lower}, {upper}]")]
    ComponentTooLarge {
        cap: usize,
        size: usize,
        lower: usize,
        upper: usize,
    },

    #[error("family parameter n = {n} must be at least {min}")]
    InvalidN { n: usize, min: usize },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("invalid input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}
