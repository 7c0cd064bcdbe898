use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::StructureError;
use crate::algebra::Coefficient;
use crate::hypergraph::OrthoGraph;
use crate::rays::Ray;

pub const RANK_THRESHOLD: f64 = 1e-8;
const EMBEDDING_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "extra")]
pub enum RigidityStatus {
    InfRigid,
    Flex(usize),
    /// Nullity below the symmetry count; should not occur for exact input.
    Deficient(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidityReport {
    pub n: usize,
    pub edges: usize,
    pub constraint_count: usize,
    pub nullity: usize,
    /// Dimension of U(3) × U(1)ⁿ modulo the shared phase.
    pub expected: usize,
    pub status: RigidityStatus,
    /// Smallest singular values, ascending, so the rank gap can be inspected.
    pub singular_tail: Vec<f64>,
    /// Largest relative deviation of the analytic Jacobian from central differences.
    pub finite_difference_error: f64,
}

/// Real coordinates `(Re v, Im v)` of unit vectors.
pub fn unit_embedding<Q: Coefficient>(rays: &[Ray<Q>]) -> Vec<f64> {
    rays.iter()
        .flat_map(|r| {
            let c = r.to_complex();
            let norm = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let c = c.map(|z| z / norm);
            [c[0].re, c[1].re, c[2].re, c[0].im, c[1].im, c[2].im]
        })
        .collect()
}

fn vector(x: &[f64], i: usize) -> [Complex64; 3] {
    let b = &x[6 * i..6 * i + 6];
    std::array::from_fn(|k| Complex64::new(b[k], b[k + 3]))
}

/// Constraint map: `‖v_i‖² − 1` per vertex, then real and imaginary parts
/// of `⟨v_i|v_j⟩` per edge.
pub fn constraints(g: &OrthoGraph, x: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(g.n() + 2 * g.edges().len());
    for i in 0..g.n() {
        out.push(vector(x, i).iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0);
    }
    for &[i, j] in g.edges() {
        let (u, v) = (vector(x, i), vector(x, j));
        let d: Complex64 = (0..3).map(|k| u[k].conj() * v[k]).sum();
        out.push(d.re);
        out.push(d.im);
    }
    out
}

pub fn jacobian(g: &OrthoGraph, x: &[f64]) -> DMatrix<f64> {
    let n = g.n();
    let mut j = DMatrix::zeros(n + 2 * g.edges().len(), 6 * n);
    for i in 0..n {
        for c in 0..6 {
            j[(i, 6 * i + c)] = 2.0 * x[6 * i + c];
        }
    }
    for (e, &[a, b]) in g.edges().iter().enumerate() {
        let (re, im) = (n + 2 * e, n + 2 * e + 1);
        for k in 0..3 {
            let (ar, ai) = (x[6 * a + k], x[6 * a + 3 + k]);
            let (br, bi) = (x[6 * b + k], x[6 * b + 3 + k]);
            // Re = Σ ar·br + ai·bi,  Im = Σ ar·bi − ai·br
            j[(re, 6 * a + k)] = br;
            j[(re, 6 * a + 3 + k)] = bi;
            j[(re, 6 * b + k)] = ar;
            j[(re, 6 * b + 3 + k)] = ai;
            j[(im, 6 * a + k)] = bi;
            j[(im, 6 * a + 3 + k)] = -br;
            j[(im, 6 * b + k)] = -ai;
            j[(im, 6 * b + 3 + k)] = ar;
        }
    }
    j
}

fn finite_difference_error(g: &OrthoGraph, x: &[f64], jac: &DMatrix<f64>) -> f64 {
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    let mut y = x.to_vec();
    for c in 0..x.len() {
        y[c] = x[c] + h;
        let plus = constraints(g, &y);
        y[c] = x[c] - h;
        let minus = constraints(g, &y);
        y[c] = x[c];
        let col = jac.column(c);
        let scale = col.amax().max(1.0);
        for (r, (p, m)) in plus.iter().zip(&minus).enumerate() {
            worst = worst.max(((p - m) / (2.0 * h) - col[r]).abs() / scale);
        }
    }
    worst
}

/// Null space of the constraint Jacobian at the exact configuration, in
/// the realified ℂ³ picture (real rings included).
pub fn rigidity_nullspace<Q: Coefficient>(g: &OrthoGraph, rays: &[Ray<Q>]) -> Result<RigidityReport, StructureError> {
    assert_eq!(g.n(), rays.len(), "graph and ray list disagree");
    let x = unit_embedding(rays);
    let violation = constraints(g, &x).iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if violation > EMBEDDING_TOLERANCE {
        return Err(StructureError::RankDeficientInput(violation));
    }
    let jac = jacobian(g, &x);
    let fd = finite_difference_error(g, &x, &jac);
    let (rows, cols) = jac.shape();
    let mut sv: Vec<f64> = jac.svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let top = sv.last().copied().unwrap_or(0.0);
    let rank = sv.iter().filter(|&&s| s > RANK_THRESHOLD * top).count();
    let nullity = cols - rank;
    let expected = g.n() + 8;
    let status = match nullity.cmp(&expected) {
        std::cmp::Ordering::Equal => RigidityStatus::InfRigid,
        std::cmp::Ordering::Greater => RigidityStatus::Flex(nullity - expected),
        std::cmp::Ordering::Less => RigidityStatus::Deficient(expected - nullity),
    };
    // rows < cols leaves cols − rows implicit zero singular values
    let tail_len = (sv.len() - rank + 3).min(sv.len());
    Ok(RigidityReport {
        n: g.n(),
        edges: g.edges().len(),
        constraint_count: rows,
        nullity,
        expected,
        status,
        singular_tail: sv[..tail_len].to_vec(),
        finite_difference_error: fd,
    })
}
