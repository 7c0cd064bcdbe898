//! Alphabet-driven ray pools: canonical rays, exact orthogonality and completion.

mod alphabet;
mod io;
mod pool;
mod ray;

pub use alphabet::Alphabet;
pub use io::{POOL_FORMAT, POOL_VERSION};
pub use pool::{complete_pool, generate_pool, Completion, Provenance, RayPool, DEFAULT_MAX_HEIGHT, DEFAULT_MAX_ITERATIONS};
pub use ray::Ray;

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Error)]
pub enum RayError {
    #[error("the zero vector is not a ray")]
    ZeroVector,
    #[error("coordinates from different rings")]
    RingMismatch,
    #[error("coordinates are not in canonical form")]
    NotCanonical,
    #[error("completion did not terminate: {0}")]
    NonTermination(String),
    #[error("malformed pool: {0}")]
    Format(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
