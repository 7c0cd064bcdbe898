use serde::Serialize;

use super::StructureError;
use crate::hypergraph::OrthoGraph;
use crate::satcore::{Lit, Solver, SolverOptions, Status, Var};

/// Largest subset size tried for κ.
pub const KAPPA_CAP: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalBases {
    pub bases: usize,
    /// Bases whose exactly-one rule alone keeps the set uncolourable.
    pub essential: Vec<usize>,
    pub eta: f64,
    /// Fewest bases whose rules must be dropped to allow a colouring;
    /// `None` when no subset of size ≤ [`KAPPA_CAP`] works.
    pub kappa: Option<usize>,
    /// Number of subsets of size κ tried.
    pub subsets_tested: usize,
    pub critical_subsets: Vec<Vec<usize>>,
}

/// Colouring formula where each basis's at-least-one clause sits behind a
/// selector; every orthogonal pair keeps its at-most-one clause.
struct BasisSolver {
    solver: Solver,
    n: usize,
    m: usize,
}

impl BasisSolver {
    fn new(g: &OrthoGraph) -> Self {
        let (n, m) = (g.n(), g.triads().len());
        let mut solver = Solver::new(SolverOptions::default());
        solver.reserve_vars((n + m) as u32);
        for (k, t) in g.triads().iter().enumerate() {
            let mut c: Vec<Lit> = t.iter().map(|&v| Lit::pos(v as Var)).collect();
            c.push(Lit::neg((n + k) as Var));
            solver.add_clause(&c);
        }
        for &[a, b] in g.edges() {
            solver.add_clause(&[Lit::neg(a as Var), Lit::neg(b as Var)]);
        }
        BasisSolver { solver, n, m }
    }

    fn colourable_without(&mut self, dropped: &[usize]) -> bool {
        let a: Vec<Lit> = (0..self.m)
            .map(|k| {
                let l = Lit::pos((self.n + k) as Var);
                if dropped.contains(&k) {
                    !l
                } else {
                    l
                }
            })
            .collect();
        match self.solver.solve(&a).status {
            Status::Sat => true,
            Status::Unsat => false,
            Status::Unknown => unreachable!("no conflict budget set"),
        }
    }
}

fn for_each_subset(m: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > m {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == m - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn critical_bases(g: &OrthoGraph) -> Result<CriticalBases, StructureError> {
    let mut s = BasisSolver::new(g);
    if s.colourable_without(&[]) {
        return Err(StructureError::ColorableInput);
    }
    let m = s.m;
    let essential: Vec<usize> = (0..m).filter(|&k| s.colourable_without(&[k])).collect();
    let mut kappa = None;
    let mut critical_subsets = Vec::new();
    let mut subsets_tested = 0;
    for k in 1..=KAPPA_CAP.min(m) {
        subsets_tested = 0;
        for_each_subset(m, k, |sub| {
            subsets_tested += 1;
            if s.colourable_without(sub) {
                critical_subsets.push(sub.to_vec());
            }
        });
        if !critical_subsets.is_empty() {
            kappa = Some(k);
            break;
        }
    }
    assert_eq!(kappa == Some(1), !essential.is_empty(), "κ = 1 exactly when some basis is essential");
    Ok(CriticalBases {
        bases: m,
        eta: if m == 0 { 0.0 } else { essential.len() as f64 / m as f64 },
        essential,
        kappa,
        subsets_tested,
        critical_subsets,
    })
}
