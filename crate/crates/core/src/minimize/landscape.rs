use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{mus_extract, MinimizeError};
use crate::algebra::Coefficient;
use crate::rays::RayPool;

/// Rays sharing one value of `‖v‖²`, and how many minimum sets contain each.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stratum {
    pub norm_sq: String,
    pub rays: usize,
    /// number of minimum sets containing a ray -> number of such rays
    pub membership: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Landscape {
    pub trials: usize,
    pub sizes: BTreeMap<usize, usize>,
    pub min_size: usize,
    /// Distinct minimum-size sets (sorted index tuples), ascending.
    pub min_sets: Vec<Vec<usize>>,
    pub union: Vec<usize>,
    /// Rays in every minimum set.
    pub core: Vec<usize>,
    pub strata: Vec<Stratum>,
    pub jaccard_mean: f64,
    pub intersection_range: Option<(usize, usize)>,
}

pub fn mus_landscape<Q: Coefficient>(pool: &RayPool<Q>, trials: usize, seed: u64) -> Result<Landscape, MinimizeError> {
    let g = pool.graph();
    let sets: Vec<Vec<usize>> = (0..trials)
        .into_par_iter()
        .map(|t| mus_extract(g, seed.wrapping_add(t as u64)).map(|m| m.ray_indices))
        .collect::<Result<_, _>>()?;
    let mut sizes = BTreeMap::new();
    for s in &sets {
        *sizes.entry(s.len()).or_insert(0) += 1;
    }
    let min_size = sets.iter().map(Vec::len).min().unwrap_or(0);
    let min_sets: Vec<Vec<usize>> =
        sets.into_iter().filter(|s| s.len() == min_size).collect::<BTreeSet<_>>().into_iter().collect();

    let mut count = vec![0usize; pool.len()];
    for s in &min_sets {
        for &r in s {
            count[r] += 1;
        }
    }
    let union: Vec<usize> = (0..pool.len()).filter(|&r| count[r] > 0).collect();
    let core: Vec<usize> = (0..pool.len()).filter(|&r| !min_sets.is_empty() && count[r] == min_sets.len()).collect();

    let mut rational: BTreeMap<Q, Vec<usize>> = BTreeMap::new();
    let mut irrational: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (r, ray) in pool.rays().iter().enumerate() {
        let n = ray.norm_sq();
        match n.as_rational() {
            Some(q) => rational.entry(q.clone()).or_default().push(r),
            None => irrational.entry(n.to_string()).or_default().push(r),
        }
    }
    let stratum = |name: String, rays: &[usize]| {
        let mut membership = BTreeMap::new();
        for &r in rays {
            *membership.entry(count[r]).or_insert(0) += 1;
        }
        Stratum { norm_sq: name, rays: rays.len(), membership }
    };
    let mut strata: Vec<Stratum> = rational.iter().map(|(q, rs)| stratum(q.to_string(), rs)).collect();
    strata.extend(irrational.iter().map(|(s, rs)| stratum(s.clone(), rs)));

    let mut jsum = 0.0;
    let mut pairs = 0usize;
    let mut range: Option<(usize, usize)> = None;
    for i in 0..min_sets.len() {
        for j in i + 1..min_sets.len() {
            let a: BTreeSet<_> = min_sets[i].iter().collect();
            let inter = min_sets[j].iter().filter(|r| a.contains(r)).count();
            let uni = min_sets[i].len() + min_sets[j].len() - inter;
            jsum += inter as f64 / uni as f64;
            pairs += 1;
            range = Some(match range {
                None => (inter, inter),
                Some((lo, hi)) => (lo.min(inter), hi.max(inter)),
            });
        }
    }
    Ok(Landscape {
        trials,
        sizes,
        min_size,
        min_sets,
        union,
        core,
        strata,
        jaccard_mean: if pairs > 0 { jsum / pairs as f64 } else { 1.0 },
        intersection_range: range,
    })
}
