use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::{mask, trial_rng, MinimalSet, MinimizeError};
use crate::hypergraph::OrthoGraph;
use crate::satcore::{SelectorSolver, SolverOptions};

/// One pure-deletion pass per trial: every ray, in a shuffled order, is
/// dropped when the rest stays uncolourable. The pass leaves a minimal set.
pub fn greedy_minimize(g: &OrthoGraph, trials: usize, seed: u64) -> Result<Vec<MinimalSet>, MinimizeError> {
    let mut probe = SelectorSolver::new(g, SolverOptions::default());
    if probe.check(&vec![true; g.n()]).is_ok() {
        return Err(MinimizeError::ColorablePool);
    }
    Ok((0..trials)
        .into_par_iter()
        .map_init(
            || SelectorSolver::new(g, SolverOptions::default()),
            |solver, t| {
                let mut order: Vec<usize> = (0..g.n()).collect();
                order.shuffle(&mut trial_rng(seed, t as u64));
                let mut inside = vec![true; g.n()];
                for r in order {
                    inside[r] = false;
                    if solver.check(&inside).is_ok() {
                        inside[r] = true;
                    }
                }
                let rays: Vec<usize> = (0..g.n()).filter(|&r| inside[r]).collect();
                MinimalSet::new(rays, true)
            },
        )
        .collect())
}

/// Deletion over all rays in a shuffled order; every uncolourable check
/// shrinks the working set to its assumption core. Seeding the working set
/// with the core of the whole pool instead would pin every run to the same
/// region of the pool.
pub fn mus_extract(g: &OrthoGraph, seed: u64) -> Result<MinimalSet, MinimizeError> {
    let mut solver = SelectorSolver::new(g, SolverOptions::default());
    let n = g.n();
    if solver.check(&vec![true; n]).is_ok() {
        return Err(MinimizeError::ColorablePool);
    }
    let mut current: Vec<usize> = (0..n).collect();
    let mut order = current.clone();
    order.shuffle(&mut trial_rng(seed, u64::MAX));
    for r in order {
        if current.binary_search(&r).is_err() {
            continue;
        }
        let trial: Vec<usize> = current.iter().copied().filter(|&x| x != r).collect();
        if let Err(core) = solver.check(&mask(n, &trial)) {
            current = core;
        }
    }
    Ok(MinimalSet::new(current, true))
}
