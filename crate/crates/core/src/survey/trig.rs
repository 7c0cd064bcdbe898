//! Sweep of the alphabets `{0, ±1, ±cos θ, ±sin θ}`.
//!
//! Five angles have algebraic cosine and sine and are evaluated exactly,
//! after rescaling the alphabet (rays are projective, so scaling every symbol
//! by the same factor leaves the pool unchanged). Every other angle is
//! evaluated in floating point with an orthogonality tolerance; those rows
//! are flagged `exact: false`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::registry::recipe;
use super::SurveyError;
use crate::hypergraph::OrthoGraph;
use crate::satcore::is_colorable;

pub const TRIG_TOLERANCE: f64 = 1e-12;

/// (label, angle in degrees, rescaled alphabet spec)
const SPECIAL: [(&str, fn() -> f64, &str); 5] = [
    ("arctan(1/2)", || 0.5f64.atan().to_degrees(), "sqrt(5):2,g"),
    ("pi/6", || 30.0, "sqrt(3):2,g"),
    ("arctan(1/phi)", || (2.0 / (1.0 + 5f64.sqrt())).atan().to_degrees(), "zeta(20):z^2+z^18,z+z^19"),
    ("arctan(1/sqrt2)", || (0.5f64.sqrt()).atan().to_degrees(), "zeta(24):z^3+z^21,z^2+z^22"),
    ("pi/4", || 45.0, "sqrt(2):g"),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AngleVerdict {
    Colorable,
    Uncolorable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    pub degrees: f64,
    pub label: String,
    pub exact: bool,
    pub rays: usize,
    pub triads: usize,
    /// Set when the raw pool was colourable and the verdict is for its completion.
    pub completed: bool,
    pub verdict: AngleVerdict,
}

fn verdict(g: &OrthoGraph) -> AngleVerdict {
    if is_colorable(g) {
        AngleVerdict::Colorable
    } else {
        AngleVerdict::Uncolorable
    }
}

fn exact_point(label: &str, degrees: f64, spec: &str) -> Result<SweepPoint, SurveyError> {
    let built = recipe(spec, false)?.build()?;
    let mut pool = built.pool;
    let mut v = verdict(pool.graph());
    let mut completed = false;
    if v == AngleVerdict::Colorable {
        pool = recipe(spec, true)?.build()?.pool;
        v = verdict(pool.graph());
        completed = true;
    }
    Ok(SweepPoint {
        degrees,
        label: label.to_string(),
        exact: true,
        rays: pool.len(),
        triads: pool.triads().len(),
        completed,
        verdict: v,
    })
}

/// Projective rays of a real alphabet in floating point; unit vectors with
/// the first nonzero coordinate positive.
pub fn float_rays(symbols: &[f64]) -> Vec<[f64; 3]> {
    let mut alphabet: Vec<f64> = symbols.iter().flat_map(|&s| [s, -s]).chain([0.0]).collect();
    alphabet.sort_by(f64::total_cmp);
    alphabet.dedup_by(|a, b| (*a - *b).abs() < TRIG_TOLERANCE);
    let mut seen: BTreeMap<[i64; 3], [f64; 3]> = BTreeMap::new();
    for &a in &alphabet {
        for &b in &alphabet {
            for &c in &alphabet {
                let v = [a, b, c];
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm < TRIG_TOLERANCE {
                    continue;
                }
                let first = v.iter().copied().find(|x| x.abs() > TRIG_TOLERANCE).unwrap();
                let s = first.signum() / norm;
                let u = v.map(|x| x * s);
                let key = u.map(|x| (x * 1e9).round() as i64);
                seen.entry(key).or_insert(u);
            }
        }
    }
    seen.into_values().collect()
}

pub fn float_graph(rays: &[[f64; 3]]) -> OrthoGraph {
    let mut edges = Vec::new();
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            let d: f64 = (0..3).map(|k| rays[i][k] * rays[j][k]).sum();
            if d.abs() < TRIG_TOLERANCE {
                edges.push([i, j]);
            }
        }
    }
    OrthoGraph::from_edges(rays.len(), edges).expect("edges are well formed")
}

fn float_point(degrees: f64) -> SweepPoint {
    let t = degrees.to_radians();
    let rays = float_rays(&[1.0, t.cos(), t.sin()]);
    let g = float_graph(&rays);
    SweepPoint {
        degrees,
        label: format!("{degrees}°"),
        exact: false,
        rays: rays.len(),
        triads: g.triads().len(),
        completed: false,
        verdict: verdict(&g),
    }
}

/// Integer degrees 1..=45, the five algebraic angles and a point 1° either
/// side of each, sorted and deduplicated. θ and 90° - θ give the same
/// alphabet, so nothing above 46° is needed.
pub fn default_grid() -> Vec<f64> {
    let mut g: Vec<f64> = (1..=45).map(f64::from).collect();
    for (_, a, _) in SPECIAL {
        let a = a();
        g.extend([a - 1.0, a, a + 1.0]);
    }
    g.sort_by(f64::total_cmp);
    g.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    g
}

/// Verdict for every angle (degrees) of the grid; algebraic angles exactly.
pub fn trig_sweep(grid: &[f64]) -> Result<Vec<SweepPoint>, SurveyError> {
    use rayon::prelude::*;
    grid.par_iter()
        .map(|&deg| match SPECIAL.iter().find(|(_, a, _)| (a() - deg).abs() < 1e-9) {
            Some((label, _, spec)) => exact_point(label, deg, spec),
            None => Ok(float_point(deg)),
        })
        .collect()
}
