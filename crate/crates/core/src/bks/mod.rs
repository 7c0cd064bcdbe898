//! Bipartite KS-uncolourability over pairs of basis subsets, and the search
//! for the pair with the smallest input product.
//!
//! A pair (S_A, S_B) is colourable when every basis of S_A ∪ S_B can pick one
//! of its vectors such that no vector picked in an S_A basis is orthogonal to
//! a vector picked in an S_B basis. The same vector may be picked in one
//! basis and not in another; orthogonality inside one party is unconstrained.

mod search;

pub use search::{bks_search_min_product, BksMode, BksResult, EXHAUSTIVE_BASIS_LIMIT};

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::OrthoGraph;
use crate::satcore::{sat_solve, CnfInstance, Lit, Solver, SolverOptions, Status, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BksError {
    #[error("basis set of party {0} is empty")]
    EmptySide(char),
    #[error("basis index {0} out of range")]
    BadBasis(usize),
    #[error("exhaustive search needs at most {limit} bases, got {got}")]
    TooManyBases { got: usize, limit: usize },
    #[error("no uncolourable pair exists: even all bases on both sides are colourable")]
    NoUncolorablePair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BksVerdict {
    Colorable,
    Uncolorable,
}

/// One variable per (vector, basis) incidence over S_A ∪ S_B.
#[derive(Clone, Debug)]
pub struct BksInstance<'g> {
    pub graph: &'g OrthoGraph,
    pub s_a: Vec<usize>,
    pub s_b: Vec<usize>,
    pub vars: BTreeMap<(usize, usize), Var>,
}

fn normalise(g: &OrthoGraph, side: &[usize], name: char) -> Result<Vec<usize>, BksError> {
    if side.is_empty() {
        return Err(BksError::EmptySide(name));
    }
    if let Some(&b) = side.iter().find(|&&b| b >= g.triads().len()) {
        return Err(BksError::BadBasis(b));
    }
    let mut s = side.to_vec();
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

impl<'g> BksInstance<'g> {
    pub fn new(graph: &'g OrthoGraph, s_a: &[usize], s_b: &[usize]) -> Result<Self, BksError> {
        let s_a = normalise(graph, s_a, 'A')?;
        let s_b = normalise(graph, s_b, 'B')?;
        let mut vars = BTreeMap::new();
        for &b in s_a.iter().chain(&s_b) {
            for &u in &graph.triads()[b] {
                let next = vars.len() as Var;
                vars.entry((u, b)).or_insert(next);
            }
        }
        Ok(BksInstance { graph, s_a, s_b, vars })
    }

    pub fn cnf(&self) -> CnfInstance {
        let g = self.graph;
        let mut cnf = CnfInstance::new(self.vars.len() as u32);
        let lit = |u: usize, b: usize| Lit::pos(self.vars[&(u, b)]);
        let mut all: Vec<usize> = self.s_a.iter().chain(&self.s_b).copied().collect();
        all.sort_unstable();
        all.dedup();
        for &b in &all {
            let t = g.triads()[b];
            cnf.add_clause(t.iter().map(|&u| lit(u, b)).collect());
            for i in 0..3 {
                for j in i + 1..3 {
                    cnf.add_clause(vec![!lit(t[i], b), !lit(t[j], b)]);
                }
            }
        }
        for &b in &self.s_a {
            for &b2 in &self.s_b {
                for &u in &g.triads()[b] {
                    for &u2 in &g.triads()[b2] {
                        if g.adjacent(u, u2) {
                            cnf.add_clause(vec![!lit(u, b), !lit(u2, b2)]);
                        }
                    }
                }
            }
        }
        cnf
    }

    pub fn check(&self) -> BksVerdict {
        if sat_solve(&self.cnf(), &[]).is_sat() {
            BksVerdict::Colorable
        } else {
            BksVerdict::Uncolorable
        }
    }
}

pub fn bks_check(g: &OrthoGraph, s_a: &[usize], s_b: &[usize]) -> Result<BksVerdict, BksError> {
    Ok(BksInstance::new(g, s_a, s_b)?.check())
}

/// Every basis on both sides behind a selector, so any pair of subsets can be
/// decided by assumptions. Each side has its own copy of the choice variables;
/// a basis present on both sides is forced to the same choice by the
/// cross-party clauses, so this agrees with [`BksInstance`].
pub struct BksSolver {
    solver: Solver,
    m: usize,
}

impl BksSolver {
    pub fn new(g: &OrthoGraph) -> Self {
        let t = g.triads();
        let m = t.len();
        let mut solver = Solver::new(SolverOptions::default());
        // vars: 0..2m selectors (A then B), then 3 choice vars per basis per side
        solver.reserve_vars((2 * m + 6 * m) as u32);
        let sel = |side: usize, b: usize| Lit::pos((side * m + b) as Var);
        let f = |side: usize, b: usize, k: usize| Lit::pos((2 * m + side * 3 * m + 3 * b + k) as Var);
        for side in 0..2 {
            for b in 0..m {
                solver.add_clause(&[!sel(side, b), f(side, b, 0), f(side, b, 1), f(side, b, 2)]);
                for i in 0..3 {
                    for j in i + 1..3 {
                        solver.add_clause(&[!f(side, b, i), !f(side, b, j)]);
                    }
                }
            }
        }
        for b in 0..m {
            for b2 in 0..m {
                for i in 0..3 {
                    for j in 0..3 {
                        if g.adjacent(t[b][i], t[b2][j]) {
                            solver.add_clause(&[!f(0, b, i), !f(1, b2, j)]);
                        }
                    }
                }
            }
        }
        BksSolver { solver, m }
    }

    pub fn bases(&self) -> usize {
        self.m
    }

    /// Uncolourability of the pair given as membership masks.
    pub fn uncolorable(&mut self, in_a: &[bool], in_b: &[bool]) -> bool {
        let m = self.m;
        let a: Vec<Lit> = (0..2 * m)
            .map(|v| {
                let on = if v < m { in_a[v] } else { in_b[v - m] };
                let l = Lit::pos(v as Var);
                if on {
                    l
                } else {
                    !l
                }
            })
            .collect();
        match self.solver.solve(&a).status {
            Status::Sat => false,
            Status::Unsat => true,
            Status::Unknown => unreachable!("no conflict budget set"),
        }
    }
}
