//! KS colouring formulas and a complete CDCL procedure with assumptions.

mod card;
mod cnf;
mod lit;
mod solver;

pub use card::SeqCounter;
pub use cnf::{encode_ks, CnfInstance};
pub use lit::{Lit, Var};
pub use solver::{sat_solve, Branching, SolveResult, Solver, SolverOptions, SolverStats, Status};

use crate::hypergraph::OrthoGraph;

/// Colouring formula of `g` with one selector per ray, loaded into a solver.
/// Selecting a subset (assuming its selectors true, the rest false) decides
/// the induced sub-configuration.
pub struct SelectorSolver {
    pub solver: Solver,
    n: usize,
}

impl SelectorSolver {
    pub fn new(g: &OrthoGraph, opts: SolverOptions) -> Self {
        let cnf = encode_ks(g, true);
        SelectorSolver { solver: Solver::from_cnf(&cnf, opts), n: g.n() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn selector(&self, ray: usize) -> Lit {
        Lit::pos((self.n + ray) as Var)
    }

    pub fn ray_of(&self, selector: Lit) -> Option<usize> {
        let v = selector.var() as usize;
        (v >= self.n && v < 2 * self.n).then(|| v - self.n)
    }

    /// Assumption vector for `inside` (sorted or not): selectors on for the
    /// given rays, off for the rest.
    pub fn assumptions(&self, inside: &[bool]) -> Vec<Lit> {
        (0..self.n).map(|r| if inside[r] { self.selector(r) } else { !self.selector(r) }).collect()
    }

    /// Colourability of the sub-configuration. Returns the model restricted to
    /// the colour variables when colourable, or the rays of a core otherwise.
    pub fn check(&mut self, inside: &[bool]) -> Result<Vec<bool>, Vec<usize>> {
        let a = self.assumptions(inside);
        let r = self.solver.solve(&a);
        match r.status {
            Status::Sat => Ok(r.model.unwrap()[..self.n].to_vec()),
            Status::Unsat => {
                let mut core: Vec<usize> =
                    r.core.iter().filter(|l| !l.is_negated()).filter_map(|&l| self.ray_of(l)).collect();
                core.sort_unstable();
                Err(core)
            }
            Status::Unknown => unreachable!("no conflict budget set"),
        }
    }
}

/// Whether the configuration admits a KS colouring.
pub fn is_colorable(g: &OrthoGraph) -> bool {
    sat_solve(&encode_ks(g, false), &[]).is_sat()
}
