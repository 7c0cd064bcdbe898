use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::CswError;
use crate::hypergraph::OrthoGraph;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ThetaOptions {
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for ThetaOptions {
    fn default() -> Self {
        ThetaOptions { tol: 1e-4, max_iterations: 20_000 }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Theta {
    /// Primal objective ⟨J, X⟩.
    pub value: f64,
    /// λ_max(J + Z) for the dual edge weights Z; an upper bound on ϑ.
    pub upper: f64,
    pub gap: f64,
    pub primal_infeasibility: f64,
    pub iterations: usize,
}

fn lambda_max(m: &DMatrix<f64>) -> f64 {
    SymmetricEigen::new(m.clone()).eigenvalues.max()
}

/// Lovász ϑ by ADMM on the dual of
/// `min ⟨−J, X⟩ : tr X = 1, X_ij = 0 (ij ∈ E), X ⪰ 0`.
///
/// Constraint operator: row 0 is the trace, row e is `2·X_ij`, so `AA*` is
/// `diag(n, 2, …, 2)`.
pub fn lovasz_theta(g: &OrthoGraph, opts: ThetaOptions) -> Result<Theta, CswError> {
    let n = g.n();
    if n == 0 {
        return Ok(Theta { value: 0.0, upper: 0.0, gap: 0.0, primal_infeasibility: 0.0, iterations: 0 });
    }
    let edges = g.edges();
    let c = DMatrix::from_element(n, n, -1.0);
    let mut x = DMatrix::identity(n, n) / n as f64;
    let mut s = DMatrix::zeros(n, n);
    let mut ye = vec![0.0; edges.len()];
    let mut mu = 1.0 / n as f64;
    let a_star = |y0: f64, ye: &[f64]| {
        let mut m = DMatrix::identity(n, n) * y0;
        for (k, &[i, j]) in edges.iter().enumerate() {
            m[(i, j)] += ye[k];
            m[(j, i)] += ye[k];
        }
        m
    };
    let mut last = None;
    for it in 1..=opts.max_iterations {
        // y = −(AA*)⁻¹ (μ (A(X) − b) + A(S − C))
        let d = &s - &c;
        let y0 = -(mu * (x.trace() - 1.0) + d.trace()) / n as f64;
        for (k, &[i, j]) in edges.iter().enumerate() {
            ye[k] = -(mu * 2.0 * x[(i, j)] + 2.0 * d[(i, j)]) / 2.0;
        }
        let v = &c - a_star(y0, &ye) - &x * mu;
        let eig = SymmetricEigen::new(v.clone());
        let mut pos = eig.eigenvalues.clone();
        pos.iter_mut().for_each(|l| *l = l.max(0.0));
        s = &eig.eigenvectors * DMatrix::from_diagonal(&pos) * eig.eigenvectors.transpose();
        x = (&s - &v) / mu;

        let pinf = {
            let mut r = (x.trace() - 1.0).powi(2);
            for &[i, j] in edges {
                r += (2.0 * x[(i, j)]).powi(2);
            }
            r.sqrt()
        };
        let dinf = (a_star(y0, &ye) + &s - &c).norm() / (1.0 + n as f64);
        // residual balancing
        if it % 20 == 0 {
            // the penalty is 1/(2μ): a large primal residual asks for a larger μ
            if pinf > 10.0 * dinf {
                mu = (mu / 0.7).min(1e4);
            } else if dinf > 10.0 * pinf {
                mu = (mu * 0.7).max(1e-6);
            }
        }
        if it % 50 == 0 || it == opts.max_iterations {
            let value = x.sum();
            let z = a_star(0.0, &ye);
            let upper = lambda_max(&(z - &c));
            let gap = upper - value;
            last = Some(Theta { value, upper, gap, primal_infeasibility: pinf, iterations: it });
            if gap.abs() < opts.tol && pinf < opts.tol / n as f64 {
                return Ok(last.unwrap());
            }
        }
    }
    let t = last.expect("at least one check");
    Err(CswError::ConvergenceFailure { gap: t.gap, iterations: t.iterations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_and_empty_graphs() {
        let k4 = OrthoGraph::from_edges(4, vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]).unwrap();
        assert!((lovasz_theta(&k4, ThetaOptions::default()).unwrap().value - 1.0).abs() < 1e-3);
        let e = OrthoGraph::from_edges(6, vec![]).unwrap();
        assert!((lovasz_theta(&e, ThetaOptions::default()).unwrap().value - 6.0).abs() < 1e-3);
    }

    #[test]
    fn pentagon_is_root_five() {
        let c5 = OrthoGraph::from_edges(5, vec![[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]).unwrap();
        let t = lovasz_theta(&c5, ThetaOptions::default()).unwrap();
        assert!((t.value - 5f64.sqrt()).abs() < 1e-3, "{t:?}");
    }
}
