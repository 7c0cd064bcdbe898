//! Independence number α, Lovász ϑ and fractional packing α* of an
//! orthogonality graph, which satisfy α ≤ ϑ ≤ α*.

mod alpha;
mod packing;
mod theta;

pub use alpha::independence_number;
pub use packing::{fractional_packing, maximal_cliques, packing_lp, LpScalar, Packing, EXACT_LP_LIMIT};
pub use theta::{lovasz_theta, Theta, ThetaOptions};

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::OrthoGraph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CswError {
    #[error("theta did not converge: gap {gap:.3e} after {iterations} iterations")]
    ConvergenceFailure { gap: f64, iterations: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct CswReport {
    pub n: usize,
    pub alpha: usize,
    pub alpha_witness: Vec<usize>,
    pub theta: Theta,
    pub alpha_star: Packing,
    pub theta_over_alpha: f64,
    pub alpha_star_over_alpha: f64,
    /// α ≤ ϑ ≤ α* within the ϑ tolerance.
    pub sandwich: bool,
}

pub fn csw_report(g: &OrthoGraph, opts: ThetaOptions) -> Result<CswReport, CswError> {
    let (alpha, alpha_witness) = independence_number(g);
    let theta = lovasz_theta(g, opts)?;
    let alpha_star = fractional_packing(g);
    let tol = opts.tol.max(theta.gap.abs());
    let a = alpha.max(1) as f64;
    Ok(CswReport {
        n: g.n(),
        alpha,
        alpha_witness,
        sandwich: alpha as f64 <= theta.value + tol && theta.value <= alpha_star.value + tol,
        theta_over_alpha: theta.value / a,
        alpha_star_over_alpha: alpha_star.value / a,
        theta,
        alpha_star,
    })
}
