use serde::Serialize;

use super::{mask, mus_extract, pool_id, MinimalSet, MinimizeError};
use crate::hypergraph::OrthoGraph;
use crate::satcore::{Lit, SelectorSolver, SeqCounter, Solver, SolverOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    HittingSetCegar,
}

#[derive(Clone, Copy, Debug)]
pub struct CertifyBudget {
    /// Maximum number of candidate sets tested.
    pub max_iterations: usize,
    /// Cap on conflicts spent by the hitting-set solver, summed over all calls.
    pub max_conflicts: Option<u64>,
}

impl Default for CertifyBudget {
    fn default() -> Self {
        CertifyBudget { max_iterations: 1_000_000, max_conflicts: None }
    }
}

/// Proof that no uncolourable subset smaller than `min_size` exists.
#[derive(Clone, Debug, Serialize)]
pub struct MinCertificate {
    pub pool_id: String,
    pub min_size: usize,
    pub witness: MinimalSet,
    /// Candidate hitting sets tested.
    pub iterations: usize,
    /// Correction sets recorded (each excludes every subset of its complement).
    pub correction_sets: usize,
    pub hitting_set_conflicts: u64,
    pub method: Method,
    /// Set when the pool was small enough for exhaustive enumeration and it agreed.
    pub brute_force_checked: bool,
}

pub const BRUTE_FORCE_LIMIT: usize = 18;

fn basis_universe(g: &OrthoGraph) -> Vec<usize> {
    let mut u: Vec<usize> = g.triads().iter().flatten().copied().collect();
    u.sort_unstable();
    u.dedup();
    u
}

/// Smallest uncolourable subset by enumerating subsets of the basis rays in
/// order of size. `None` when the pool is colourable.
pub fn brute_force_minimum(g: &OrthoGraph) -> Option<MinimalSet> {
    let u = basis_universe(g);
    let mut solver = SelectorSolver::new(g, SolverOptions::default());
    if solver.check(&mask(g.n(), &u)).is_ok() {
        return None;
    }
    let m = u.len();
    for k in 1..=m {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let rays: Vec<usize> = idx.iter().map(|&i| u[i]).collect();
            if solver.check(&mask(g.n(), &rays)).is_err() {
                return Some(MinimalSet::new(rays, true));
            }
            // next k-combination
            let mut i = k;
            while i > 0 && idx[i - 1] == m - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("the full universe is uncolourable")
}

/// Grows a colourable set to a maximal colourable subset of `universe`.
fn grow(
    g: &OrthoGraph,
    solver: &mut SelectorSolver,
    universe: &[usize],
    start: &[bool],
    mut colour: Vec<bool>,
) -> Vec<bool> {
    let mut inside = start.to_vec();
    for &r in universe {
        if inside[r] {
            continue;
        }
        inside[r] = true;
        let free = consistent_with(g, &inside, &colour, r);
        if !free {
            match solver.check(&inside) {
                Ok(m) => colour = m,
                Err(_) => inside[r] = false,
            }
        }
    }
    inside
}

/// Whether the current colouring still satisfies every constraint touching `r`.
fn consistent_with(g: &OrthoGraph, inside: &[bool], colour: &[bool], r: usize) -> bool {
    let nb = g.neighbors(r);
    for (i, &s) in nb.iter().enumerate() {
        if !inside[s] {
            continue;
        }
        if colour[s] && colour[r] {
            return false;
        }
        for &t in &nb[i + 1..] {
            if inside[t] && g.adjacent(s, t) && !(colour[r] || colour[s] || colour[t]) {
                return false;
            }
        }
    }
    true
}

/// Exact minimum size of an uncolourable subset by implicit hitting sets.
///
/// Every colourable candidate is grown to a maximal colourable subset; its
/// complement (a correction set) must be hit by every uncolourable subset.
/// Minimum-cardinality hitting sets of the recorded correction sets are
/// lower bounds; the first one that is itself uncolourable is optimal.
pub fn certify_minimum(g: &OrthoGraph, budget: CertifyBudget) -> Result<MinCertificate, MinimizeError> {
    let n = g.n();
    let upper = mus_extract(g, 0)?;
    let universe = basis_universe(g);
    let mut solver = SelectorSolver::new(g, SolverOptions::default());

    let mut hs = Solver::new(SolverOptions::default());
    hs.reserve_vars(universe.len() as u32);
    let hvars: Vec<Lit> = (0..universe.len()).map(|i| Lit::pos(i as u32)).collect();
    let counter = SeqCounter::build(&mut hs, &hvars, upper.size + 1);

    let mut lower = 1usize;
    let mut iterations = 0usize;
    let mut correction_sets = 0usize;
    let mut best = upper;
    while lower < best.size {
        let over = budget.max_conflicts.is_some_and(|c| hs.stats().conflicts >= c);
        if iterations >= budget.max_iterations || over {
            return Err(MinimizeError::BudgetExceeded { lower_bound: lower, upper_bound: best.size, iterations });
        }
        let r = hs.solve(&[counter.at_most(lower).expect("counter is wide enough")]);
        let Some(model) = r.model else {
            lower += 1;
            continue;
        };
        iterations += 1;
        let cand: Vec<usize> = (0..universe.len()).filter(|&i| model[i]).map(|i| universe[i]).collect();
        let inside = mask(n, &cand);
        match solver.check(&inside) {
            Err(_) => {
                best = MinimalSet::new(cand, false);
                break;
            }
            Ok(colour) => {
                let mss = grow(g, &mut solver, &universe, &inside, colour);
                let clause: Vec<Lit> = (0..universe.len()).filter(|&i| !mss[universe[i]]).map(|i| hvars[i]).collect();
                if clause.is_empty() {
                    return Err(MinimizeError::ColorablePool);
                }
                hs.add_clause(&clause);
                correction_sets += 1;
            }
        }
    }
    let verified = super::verify_minimal(g, &best.ray_indices);
    if !verified {
        return Err(MinimizeError::Internal("optimal candidate is not minimal".into()));
    }
    best.verified_minimal = true;
    let mut cert = MinCertificate {
        pool_id: pool_id(g),
        min_size: best.size,
        witness: best,
        iterations,
        correction_sets,
        hitting_set_conflicts: hs.stats().conflicts,
        method: Method::HittingSetCegar,
        brute_force_checked: false,
    };
    if universe.len() <= BRUTE_FORCE_LIMIT {
        let bf = brute_force_minimum(g).ok_or(MinimizeError::ColorablePool)?;
        if bf.size != cert.min_size {
            return Err(MinimizeError::Internal(format!(
                "brute force found {} but hitting sets gave {}",
                bf.size, cert.min_size
            )));
        }
        cert.brute_force_checked = true;
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_minimum_is_four() {
        let g = OrthoGraph::from_edges(4, vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]).unwrap();
        let c = certify_minimum(&g, CertifyBudget::default()).unwrap();
        assert_eq!(c.min_size, 4);
        assert!(c.brute_force_checked);
        assert_eq!(brute_force_minimum(&g).unwrap().size, 4);
    }

    #[test]
    fn budget_is_reported() {
        let g = OrthoGraph::from_edges(4, vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]).unwrap();
        let e = certify_minimum(&g, CertifyBudget { max_iterations: 0, max_conflicts: None }).unwrap_err();
        assert!(matches!(e, MinimizeError::BudgetExceeded { .. }));
        let e = certify_minimum(&g, CertifyBudget { max_iterations: 100, max_conflicts: Some(0) }).unwrap_err();
        assert!(matches!(e, MinimizeError::BudgetExceeded { iterations: 0, .. }));
    }
}
