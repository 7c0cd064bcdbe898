use argmin::core::{CostFunction, Error, Executor, Gradient, State};
use argmin::solver::linesearch::MoreThuenteLineSearch;
use argmin::solver::quasinewton::LBFGS;
use rand::Rng;
use serde::Serialize;

use crate::hypergraph::OrthoGraph;
use crate::minimize::trial_rng;

pub const REALIZABLE_LOSS: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Realizability {
    Realizable,
    NotFound,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizeReport {
    pub verdict: Realizability,
    pub best_loss: f64,
    pub restarts: usize,
    /// Unit vectors in ℝ³ of the best start.
    pub embedding: Vec<[f64; 3]>,
}

struct Loss<'a> {
    g: &'a OrthoGraph,
}

fn point(p: &[f64], i: usize) -> ([f64; 3], [[f64; 3]; 2]) {
    let (t, f) = (p[2 * i], p[2 * i + 1]);
    let (st, ct, sf, cf) = (t.sin(), t.cos(), f.sin(), f.cos());
    ([st * cf, st * sf, ct], [[ct * cf, ct * sf, -st], [-st * sf, st * cf, 0.0]])
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

impl CostFunction for Loss<'_> {
    type Param = Vec<f64>;
    type Output = f64;
    fn cost(&self, p: &Vec<f64>) -> Result<f64, Error> {
        Ok(self.g.edges().iter().map(|&[i, j]| dot(&point(p, i).0, &point(p, j).0).powi(2)).sum())
    }
}

impl Gradient for Loss<'_> {
    type Param = Vec<f64>;
    type Gradient = Vec<f64>;
    fn gradient(&self, p: &Vec<f64>) -> Result<Vec<f64>, Error> {
        let mut g = vec![0.0; p.len()];
        for &[i, j] in self.g.edges() {
            let (vi, di) = point(p, i);
            let (vj, dj) = point(p, j);
            let d = 2.0 * dot(&vi, &vj);
            for k in 0..2 {
                g[2 * i + k] += d * dot(&di[k], &vj);
                g[2 * j + k] += d * dot(&vi, &dj[k]);
            }
        }
        Ok(g)
    }
}

/// Local search for unit vectors in ℝ³ meeting every orthogonality of `g`,
/// from `restarts` random starts. One-sided: `NotFound` proves nothing.
pub fn realizability(g: &OrthoGraph, restarts: usize, seed: u64) -> RealizeReport {
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut used = 0;
    for t in 0..restarts {
        used += 1;
        let mut rng = trial_rng(seed, t as u64);
        let init: Vec<f64> = (0..2 * g.n()).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect();
        let solver = LBFGS::new(MoreThuenteLineSearch::new(), 7)
            .with_tolerance_grad(1e-12)
            .expect("valid tolerance");
        let run = Executor::new(Loss { g }, solver).configure(|s| s.param(init.clone()).max_iters(2000).target_cost(REALIZABLE_LOSS * 1e-2)).run();
        let (loss, param) = match run {
            Ok(r) => {
                let st = r.state();
                (st.get_best_cost(), st.get_best_param().cloned().unwrap_or(init))
            }
            Err(_) => continue,
        };
        if best.as_ref().is_none_or(|(b, _)| loss < *b) {
            best = Some((loss, param));
        }
        if loss < REALIZABLE_LOSS {
            break;
        }
    }
    let (best_loss, p) = best.unwrap_or((f64::INFINITY, vec![0.0; 2 * g.n()]));
    RealizeReport {
        verdict: if best_loss < REALIZABLE_LOSS { Realizability::Realizable } else { Realizability::NotFound },
        best_loss,
        restarts: used,
        embedding: (0..g.n()).map(|i| point(&p, i).0).collect(),
    }
}
