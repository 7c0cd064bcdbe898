use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::hypergraph::OrthoGraph;
use crate::Rational;

/// Maximal cliques by Bron–Kerbosch with pivoting, each ascending, in
/// lexicographic order.
pub fn maximal_cliques(g: &OrthoGraph) -> Vec<Vec<usize>> {
    fn bk(g: &OrthoGraph, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() && x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        let pivot = p.iter().chain(&x).copied().max_by_key(|&u| p.iter().filter(|&&v| g.adjacent(u, v)).count());
        let pivot = pivot.expect("p or x is nonempty");
        let (mut p, mut x) = (p, x);
        let branch: Vec<usize> = p.iter().copied().filter(|&v| !g.adjacent(pivot, v)).collect();
        for v in branch {
            r.push(v);
            let np = p.iter().copied().filter(|&u| g.adjacent(u, v)).collect();
            let nx = x.iter().copied().filter(|&u| g.adjacent(u, v)).collect();
            bk(g, r, np, nx, out);
            r.pop();
            p.retain(|&u| u != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    bk(g, &mut Vec::new(), (0..g.n()).collect(), Vec::new(), &mut out);
    out.sort();
    out
}

/// Scalars the simplex can run over.
pub trait LpScalar: Clone + PartialOrd + Signed + Zero + std::fmt::Debug {
    fn negligible(&self) -> bool;
    fn from_u8(v: u8) -> Self;
}

impl LpScalar for Rational {
    fn negligible(&self) -> bool {
        self.is_zero()
    }
    fn from_u8(v: u8) -> Self {
        Rational::from_integer(v.into())
    }
}

impl LpScalar for f64 {
    fn negligible(&self) -> bool {
        self.abs() < 1e-9
    }
    fn from_u8(v: u8) -> Self {
        v as f64
    }
}

/// `max Σ x_v` subject to `Σ_{v∈C} x_v ≤ 1` per row set `C`, `x ≥ 0`, by a
/// dense tableau simplex from the slack basis. Dantzig pricing, switching to
/// Bland's rule after a run of degenerate pivots.
pub fn packing_lp<T: LpScalar>(n: usize, rows: &[Vec<usize>]) -> (T, Vec<T>) {
    let m = rows.len();
    let width = n + m + 1;
    let rhs = width - 1;
    let mut tab: Vec<Vec<T>> = rows
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut r = vec![T::zero(); width];
            c.iter().for_each(|&v| r[v] = T::from_u8(1));
            r[n + i] = T::from_u8(1);
            r[rhs] = T::from_u8(1);
            r
        })
        .collect();
    // reduced costs of the maximisation; entering columns have positive cost
    let mut cost: Vec<T> = (0..width).map(|j| if j < n { T::from_u8(1) } else { T::zero() }).collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut degenerate = 0;
    loop {
        let bland = degenerate > 50;
        let candidates = (0..rhs).filter(|&j| cost[j] > T::zero() && !cost[j].negligible());
        let enter = if bland {
            candidates.min()
        } else {
            candidates.fold(None, |best: Option<usize>, j| match best {
                Some(b) if cost[b] >= cost[j] => Some(b),
                _ => Some(j),
            })
        };
        let Some(q) = enter else { break };
        let mut leave: Option<(usize, T)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[q] > T::zero() && !row[q].negligible() {
                let ratio = row[rhs].clone() / row[q].clone();
                let better = match &leave {
                    None => true,
                    Some((l, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (p, ratio) = leave.expect("packing LP is bounded");
        degenerate = if ratio.negligible() { degenerate + 1 } else { 0 };
        let piv = tab[p][q].clone();
        let nz: Vec<usize> = (0..width).filter(|&j| !tab[p][j].is_zero()).collect();
        for &j in &nz {
            tab[p][j] = tab[p][j].clone() / piv.clone();
        }
        let prow = tab[p].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i != p && !row[q].is_zero() {
                let f = row[q].clone();
                for &j in &nz {
                    row[j] = row[j].clone() - f.clone() * prow[j].clone();
                }
            }
        }
        if !cost[q].is_zero() {
            let f = cost[q].clone();
            for &j in &nz {
                cost[j] = cost[j].clone() - f.clone() * prow[j].clone();
            }
        }
        basis[p] = q;
    }
    let mut x = vec![T::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = tab[i][rhs].clone();
        }
    }
    let value = x.iter().cloned().fold(T::zero(), |a, b| a + b);
    (value, x)
}

#[derive(Clone, Debug, Serialize)]
pub struct Packing {
    /// Exact optimum as text (`p/q`) when solved over the rationals.
    pub exact: Option<String>,
    pub value: f64,
    pub cliques: usize,
}

pub const EXACT_LP_LIMIT: usize = 500;

/// Fractional packing number α* over all maximal cliques.
pub fn fractional_packing(g: &OrthoGraph) -> Packing {
    let cliques = maximal_cliques(g);
    if g.n() <= EXACT_LP_LIMIT {
        let (v, _) = packing_lp::<Rational>(g.n(), &cliques);
        let value = v.numer().to_string().parse::<f64>().unwrap() / v.denom().to_string().parse::<f64>().unwrap();
        Packing { exact: Some(v.to_string()), value, cliques: cliques.len() }
    } else {
        let (v, _) = packing_lp::<f64>(g.n(), &cliques);
        Packing { exact: None, value: v, cliques: cliques.len() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn triangle_and_pentagon() {
        let t = OrthoGraph::from_edges(3, vec![[0, 1], [0, 2], [1, 2]]).unwrap();
        assert_eq!(maximal_cliques(&t), vec![vec![0, 1, 2]]);
        assert_eq!(fractional_packing(&t).exact.as_deref(), Some("1"));
        let c5 = OrthoGraph::from_edges(5, vec![[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]).unwrap();
        assert_eq!(fractional_packing(&c5).exact.as_deref(), Some("5/2"));
        let iso = OrthoGraph::from_edges(2, vec![]).unwrap();
        assert_eq!(fractional_packing(&iso).exact.as_deref(), Some("2"));
    }

    /// Best vertex of the polytope: every choice of n tight constraints.
    fn vertex_brute_force(n: usize, rows: &[Vec<usize>]) -> Rational {
        let one = Rational::from_integer(1.into());
        let mut all: Vec<(Vec<Rational>, Rational)> = rows
            .iter()
            .map(|c| ((0..n).map(|v| if c.contains(&v) { one.clone() } else { Rational::zero() }).collect(), one.clone()))
            .collect();
        all.extend((0..n).map(|v| ((0..n).map(|u| if u == v { -one.clone() } else { Rational::zero() }).collect(), Rational::zero())));
        let mut best = Rational::zero();
        let k = all.len();
        let mut pick: Vec<usize> = (0..n).collect();
        loop {
            let mut a: Vec<Vec<Rational>> = pick.iter().map(|&i| { let mut r = all[i].0.clone(); r.push(all[i].1.clone()); r }).collect();
            let mut ok = true;
            for col in 0..n {
                let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else { ok = false; break };
                a.swap(col, p);
                let pv = a[col][col].clone();
                a[col].iter_mut().for_each(|x| *x = x.clone() / pv.clone());
                for r in 0..n {
                    if r != col && !a[r][col].is_zero() {
                        let f = a[r][col].clone();
                        let prow = a[col].clone();
                        a[r].iter_mut().zip(prow).for_each(|(x, y)| *x = x.clone() - f.clone() * y);
                    }
                }
            }
            if ok {
                let x: Vec<Rational> = a.iter().map(|r| r[n].clone()).collect();
                let feasible = all.iter().all(|(c, b)| c.iter().zip(&x).fold(Rational::zero(), |s, (u, v)| s + u.clone() * v.clone()) <= *b);
                if feasible {
                    best = best.max(x.into_iter().fold(Rational::zero(), |s, v| s + v));
                }
            }
            let mut i = n;
            while i > 0 && pick[i - 1] == k - n + i - 1 {
                i -= 1;
            }
            if i == 0 {
                return best;
            }
            pick[i - 1] += 1;
            for j in i..n {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn matches_vertex_enumeration(n in 1usize..=6, mask in proptest::collection::vec(any::<bool>(), 15)) {
            let mut e = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if mask[k] { e.push([i, j]); }
                    k += 1;
                }
            }
            let g = OrthoGraph::from_edges(n, e).unwrap();
            let cl = maximal_cliques(&g);
            prop_assert_eq!(packing_lp::<Rational>(n, &cl).0, vertex_brute_force(n, &cl));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn exact_and_float_agree(n in 1usize..=10, mask in proptest::collection::vec(any::<bool>(), 45)) {
            let mut e = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if mask[k] { e.push([i, j]); }
                    k += 1;
                }
            }
            let g = OrthoGraph::from_edges(n, e).unwrap();
            let cl = maximal_cliques(&g);
            let (q, x) = packing_lp::<Rational>(n, &cl);
            let (f, _) = packing_lp::<f64>(n, &cl);
            let qf = q.numer().to_string().parse::<f64>().unwrap() / q.denom().to_string().parse::<f64>().unwrap();
            prop_assert!((qf - f).abs() < 1e-9);
            for c in &cl {
                let s = c.iter().fold(Rational::zero(), |a, &v| a + x[v].clone());
                prop_assert!(s <= Rational::from_integer(1.into()));
            }
            let (alpha, _) = super::super::independence_number(&g);
            prop_assert!(Rational::from_integer((alpha as i64).into()) <= q);
        }
    }
}
