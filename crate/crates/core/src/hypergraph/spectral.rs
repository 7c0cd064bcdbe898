use num_traits::Float;
use serde::Serialize;

use super::OrthoGraph;

/// Eigenvalues of a symmetric matrix (row-major, `n × n`) by cyclic Jacobi
/// rotations, ascending.
pub fn symmetric_eigenvalues<T: Float>(mut a: Vec<T>, n: usize) -> Vec<T> {
    assert_eq!(a.len(), n * n, "matrix must be n × n");
    let two = T::one() + T::one();
    let scale = a.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    let tol = T::epsilon() * T::epsilon() * scale * scale * T::from(n * n).unwrap();
    for _sweep in 0..100 {
        let mut off = T::zero();
        for i in 0..n {
            for j in i + 1..n {
                off = off + a[i * n + j] * a[i * n + j];
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<T> = (0..n).map(|i| a[i * n + i]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub lambda_max: f64,
    pub lambda_min: f64,
    /// `n·(−λ_min)/(λ_max − λ_min)`; `n` when the graph has no edges.
    pub hoffman: f64,
}

pub fn adjacency_matrix<T: Float>(g: &OrthoGraph) -> Vec<T> {
    let n = g.n();
    let mut a = vec![T::zero(); n * n];
    for &[i, j] in g.edges() {
        a[i * n + j] = T::one();
        a[j * n + i] = T::one();
    }
    a
}

pub fn spectrum_and_hoffman(g: &OrthoGraph) -> Spectrum {
    let n = g.n();
    if g.edges().is_empty() {
        return Spectrum { lambda_max: 0.0, lambda_min: 0.0, hoffman: n as f64 };
    }
    let ev = symmetric_eigenvalues::<f64>(adjacency_matrix(g), n);
    let (lo, hi) = (ev[0], ev[n - 1]);
    Spectrum { lambda_max: hi, lambda_min: lo, hoffman: n as f64 * (-lo) / (hi - lo) }
}
