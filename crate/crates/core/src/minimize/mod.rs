//! Minimal KS-uncolourable subsets: greedy deletion, core-guided MUS
//! extraction, exact minimum certification and landscape statistics.

mod certify;
mod greedy;
mod landscape;

pub use certify::{brute_force_minimum, certify_minimum, CertifyBudget, MinCertificate, Method};
pub use greedy::{greedy_minimize, mus_extract};
pub use landscape::{mus_landscape, Landscape, Stratum};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::OrthoGraph;
use crate::satcore::{SelectorSolver, SolverOptions};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinimizeError {
    #[error("the pool is KS-colourable")]
    ColorablePool,
    #[error("budget exhausted after {iterations} iterations: minimum lies in [{lower_bound}, {upper_bound}]")]
    BudgetExceeded { lower_bound: usize, upper_bound: usize, iterations: usize },
    #[error("internal check failed: {0}")]
    Internal(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MinimalSet {
    pub ray_indices: Vec<usize>,
    pub size: usize,
    /// Every single-ray deletion was checked to be colourable.
    pub verified_minimal: bool,
}

impl MinimalSet {
    pub(crate) fn new(mut ray_indices: Vec<usize>, verified_minimal: bool) -> Self {
        ray_indices.sort_unstable();
        let size = ray_indices.len();
        MinimalSet { ray_indices, size, verified_minimal }
    }
}

pub(crate) fn mask(n: usize, rays: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &r in rays {
        m[r] = true;
    }
    m
}

pub(crate) fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut s = ChaCha8Rng::seed_from_u64(seed);
    s.set_stream(trial);
    s
}

/// Induced formula unsatisfiable, and every single deletion satisfiable.
pub fn verify_minimal(g: &OrthoGraph, rays: &[usize]) -> bool {
    let mut s = SelectorSolver::new(g, SolverOptions::default());
    let mut inside = mask(g.n(), rays);
    if s.check(&inside).is_ok() {
        return false;
    }
    rays.iter().all(|&r| {
        inside[r] = false;
        let ok = s.check(&inside).is_ok();
        inside[r] = true;
        ok
    })
}

/// Stable identifier of a pool's orthogonality structure.
pub fn pool_id(g: &OrthoGraph) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |x: usize| {
        for b in (x as u64).to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    eat(g.n());
    for e in g.edges() {
        e.iter().for_each(|&v| eat(v));
    }
    for t in g.triads() {
        t.iter().for_each(|&v| eat(v));
    }
    format!("n{}-e{}-t{}-{:016x}", g.n(), g.edges().len(), g.triads().len(), h)
}
