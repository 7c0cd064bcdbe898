use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Lit, Var};
use crate::hypergraph::OrthoGraph;

/// Clause list over `var_count` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfInstance {
    pub var_count: u32,
    pub clauses: Vec<Vec<Lit>>,
    /// Selector variable of each ray, when built with selectors.
    pub selector_of_ray: Option<Vec<Var>>,
}

impl CnfInstance {
    pub fn new(var_count: u32) -> Self {
        CnfInstance { var_count, clauses: Vec::new(), selector_of_ray: None }
    }

    pub fn add_clause(&mut self, clause: Vec<Lit>) {
        assert!(!clause.is_empty(), "empty clause");
        debug_assert!(clause.iter().all(|l| l.var() < self.var_count));
        self.clauses.push(clause);
    }

    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.eval(model)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.var_count, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(out, "{} ", l.to_dimacs());
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn from_dimacs(text: &str) -> Result<Self, String> {
        let mut var_count = None;
        let mut clauses = Vec::new();
        let mut cur = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("p cnf") {
                let nums: Vec<u32> = rest.split_whitespace().filter_map(|t| t.parse().ok()).collect();
                var_count = nums.first().copied();
                continue;
            }
            for tok in line.split_whitespace() {
                let d: i64 = tok.parse().map_err(|_| format!("bad token {tok:?}"))?;
                if d == 0 {
                    clauses.push(std::mem::take(&mut cur));
                } else {
                    cur.push(Lit::from_dimacs(d).ok_or("bad literal")?);
                }
            }
        }
        let var_count = var_count.ok_or("missing header")?;
        Ok(CnfInstance { var_count, clauses, selector_of_ray: None })
    }
}

/// KS colouring formula: variable `i` means ray `i` is green.
///
/// Each triad gets at-least-one plus three at-most-one clauses; each
/// orthogonal pair outside every triad gets one at-most-one clause (pairs
/// inside a triad are already covered). With selectors, variable `n + r`
/// is ray `r`'s selector and `¬a_r` is appended to every clause mentioning `r`.
pub fn encode_ks(g: &OrthoGraph, with_selectors: bool) -> CnfInstance {
    let n = g.n() as u32;
    let mut cnf = CnfInstance::new(if with_selectors { 2 * n } else { n });
    let guard = |vs: &[usize], mut c: Vec<Lit>| {
        if with_selectors {
            c.extend(vs.iter().map(|&v| Lit::neg(n + v as u32)));
        }
        c
    };
    let mut covered = HashSet::new();
    for t in g.triads() {
        let [a, b, c] = t.map(|v| v as u32);
        cnf.add_clause(guard(t, vec![Lit::pos(a), Lit::pos(b), Lit::pos(c)]));
        for (x, y) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            cnf.add_clause(guard(&[x, y], vec![Lit::neg(x as u32), Lit::neg(y as u32)]));
            covered.insert([x, y]);
        }
    }
    for e in g.edges() {
        if !covered.contains(e) {
            cnf.add_clause(guard(e, vec![Lit::neg(e[0] as u32), Lit::neg(e[1] as u32)]));
        }
    }
    if with_selectors {
        cnf.selector_of_ray = Some((0..n).map(|r| n + r).collect());
    }
    cnf
}
