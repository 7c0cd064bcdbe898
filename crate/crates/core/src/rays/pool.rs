use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Alphabet, Ray, RayError};
use crate::algebra::modular::{add_mod, mul_mod};
use crate::algebra::{AlgNum, Coefficient, Ring};
use crate::hypergraph::OrthoGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Raw,
    Completed,
}

/// Sorted, deduplicated rays with their orthogonality graph.
#[derive(Clone, Debug)]
pub struct RayPool<Q: Coefficient> {
    ring: Ring,
    alphabet: Option<Alphabet<Q>>,
    rays: Vec<Ray<Q>>,
    provenance: Vec<Provenance>,
    graph: OrthoGraph,
}

impl<Q: Coefficient> PartialEq for RayPool<Q> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.rays == other.rays && self.provenance == other.provenance
    }
}

/// Residues of a ray and of its conjugate under the ring's prime embedding.
#[derive(Clone, Copy)]
struct Print {
    plain: [u64; 3],
    conj: [u64; 3],
}

fn fingerprint<Q: Coefficient>(r: &Ray<Q>) -> Option<Print> {
    let e = r.ring().embedding();
    let mut plain = [0; 3];
    let mut conj = [0; 3];
    for k in 0..3 {
        plain[k] = e.image(&r.coords()[k])?;
        conj[k] = e.image(&r.coords()[k].conjugate())?;
    }
    Some(Print { plain, conj })
}

fn orthogonal<Q: Coefficient>(a: &Ray<Q>, pa: Option<Print>, b: &Ray<Q>, pb: Option<Print>, p: u64) -> bool {
    if let (Some(x), Some(y)) = (pa, pb) {
        let mut s = 0;
        for k in 0..3 {
            s = add_mod(s, mul_mod(x.conj[k], y.plain[k], p), p);
        }
        if s != 0 {
            return false;
        }
    }
    a.is_orthogonal(b)
}

/// Exact orthogonality edges; a nonzero residue rules a pair out, a zero
/// residue is confirmed with exact arithmetic.
pub(crate) fn orthogonality_edges<Q: Coefficient>(rays: &[Ray<Q>]) -> Vec<[usize; 2]> {
    let Some(first) = rays.first() else {
        return Vec::new();
    };
    let p = first.ring().embedding().p;
    let prints: Vec<Option<Print>> = rays.par_iter().map(fingerprint).collect();
    (0..rays.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let prints = &prints;
            (i + 1..rays.len())
                .filter(move |&j| orthogonal(&rays[i], prints[i], &rays[j], prints[j], p))
                .map(move |j| [i, j])
        })
        .collect()
}

impl<Q: Coefficient> RayPool<Q> {
    /// Sorts and deduplicates; when a ray appears twice, `Raw` wins.
    pub fn from_rays(ring: &Ring, entries: Vec<(Ray<Q>, Provenance)>) -> Result<Self, RayError> {
        if entries.iter().any(|(r, _)| r.ring() != ring) {
            return Err(RayError::RingMismatch);
        }
        let mut entries = entries;
        entries.sort_by(|a, b| a.0.cmp(&b.0).then((a.1 == Provenance::Completed).cmp(&(b.1 == Provenance::Completed))));
        entries.dedup_by(|a, b| a.0 == b.0);
        let (rays, provenance): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        let edges = orthogonality_edges(&rays);
        let graph = OrthoGraph::from_edges(rays.len(), edges).expect("edges are well formed");
        Ok(RayPool { ring: ring.clone(), alphabet: None, rays, provenance, graph })
    }

    pub(crate) fn from_parts(
        ring: Ring,
        alphabet: Option<Alphabet<Q>>,
        rays: Vec<Ray<Q>>,
        provenance: Vec<Provenance>,
        graph: OrthoGraph,
    ) -> Self {
        RayPool { ring, alphabet, rays, provenance, graph }
    }

    pub fn with_alphabet(mut self, alphabet: Alphabet<Q>) -> Self {
        self.alphabet = Some(alphabet);
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn alphabet(&self) -> Option<&Alphabet<Q>> {
        self.alphabet.as_ref()
    }

    pub fn rays(&self) -> &[Ray<Q>] {
        &self.rays
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn graph(&self) -> &OrthoGraph {
        &self.graph
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        self.graph.edges()
    }

    pub fn triads(&self) -> &[[usize; 3]] {
        self.graph.triads()
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn index_of(&self, r: &Ray<Q>) -> Option<usize> {
        self.rays.binary_search(r).ok()
    }

    /// Sub-pool on the given indices (any order, duplicates ignored). The
    /// alphabet is dropped.
    pub fn subset(&self, indices: &[usize]) -> Result<Self, RayError> {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.len()) {
            return Err(RayError::Format(format!("ray index {bad} out of range")));
        }
        let rays = idx.iter().map(|&i| self.rays[i].clone()).collect();
        let provenance = idx.iter().map(|&i| self.provenance[i]).collect();
        Ok(RayPool { ring: self.ring.clone(), alphabet: None, rays, provenance, graph: self.graph.induced(&idx) })
    }

    /// Union of two pools over the same ring.
    pub fn union(&self, other: &Self) -> Result<Self, RayError> {
        let entries = self
            .rays
            .iter()
            .cloned()
            .zip(self.provenance.iter().copied())
            .chain(other.rays.iter().cloned().zip(other.provenance.iter().copied()))
            .collect();
        let mut pool = Self::from_rays(&self.ring, entries)?;
        pool.alphabet = match (&self.alphabet, &other.alphabet) {
            (Some(a), Some(b)) => Some(a.union(b)?),
            _ => None,
        };
        Ok(pool)
    }

    /// Indices of rays lying in at least one triad, ascending.
    pub fn basis_rays(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.triads().iter().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// All projectively distinct rays with coordinates in the alphabet.
pub fn generate_pool<Q: Coefficient>(alphabet: &Alphabet<Q>) -> RayPool<Q> {
    let syms = alphabet.symbols();
    let s = syms.len();
    let inverses: Vec<Option<AlgNum<Q>>> = syms.iter().map(|x| x.invert().ok()).collect();
    let mut rays: Vec<Ray<Q>> = (0..s * s * s)
        .into_par_iter()
        .filter_map(|idx| {
            let t = [idx / (s * s), (idx / s) % s, idx % s];
            let first = t.iter().position(|&k| inverses[k].is_some())?;
            let v = t.map(|k| syms[k].clone());
            Some(Ray::scaled(&v, first, inverses[t[first]].as_ref().unwrap()))
        })
        .collect();
    rays.par_sort_unstable();
    rays.dedup();
    let provenance = vec![Provenance::Raw; rays.len()];
    let edges = orthogonality_edges(&rays);
    let graph = OrthoGraph::from_edges(rays.len(), edges).expect("edges are well formed");
    RayPool { ring: alphabet.ring().clone(), alphabet: Some(alphabet.clone()), rays, provenance, graph }
}

pub const DEFAULT_MAX_ITERATIONS: usize = 10;
pub const DEFAULT_MAX_HEIGHT: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct Completion<Q: Coefficient> {
    pub pool: RayPool<Q>,
    /// Rounds that added at least one ray.
    pub iterations: usize,
}

/// Closes the pool under orthogonal complements of orthogonal pairs.
pub fn complete_pool<Q: Coefficient>(
    pool: &RayPool<Q>,
    max_iterations: usize,
    max_height: u64,
) -> Result<Completion<Q>, RayError> {
    let mut current = pool.clone();
    let mut fresh: Vec<bool> = vec![true; current.len()];
    let mut iterations = 0;
    loop {
        let known: HashSet<&Ray<Q>> = current.rays.iter().collect();
        let produced: Result<Vec<Option<Ray<Q>>>, RayError> = current
            .edges()
            .par_iter()
            .filter(|e| fresh[e[0]] || fresh[e[1]])
            .map(|&[i, j]| {
                let (a, b) = (&current.rays[i], &current.rays[j]);
                let c = Ray::canonicalize(a.complement(b))?;
                if known.contains(&c) {
                    return Ok(None);
                }
                if c.height_exceeds(max_height) {
                    return Err(RayError::NonTermination(format!("coefficient height above {max_height}")));
                }
                if !c.is_orthogonal(a) || !c.is_orthogonal(b) {
                    return Err(RayError::Internal("complement not orthogonal to its pair".into()));
                }
                Ok(Some(c))
            })
            .collect();
        let mut new: Vec<Ray<Q>> = produced?.into_iter().flatten().collect();
        new.sort_unstable();
        new.dedup();
        if new.is_empty() {
            break;
        }
        iterations += 1;
        if iterations > max_iterations {
            return Err(RayError::NonTermination(format!("no fixpoint after {max_iterations} rounds")));
        }
        let new_set: HashSet<Ray<Q>> = new.iter().cloned().collect();
        let entries = current
            .rays
            .iter()
            .cloned()
            .zip(current.provenance.iter().copied())
            .chain(new.into_iter().map(|r| (r, Provenance::Completed)))
            .collect();
        let alphabet = current.alphabet.take();
        current = RayPool::from_rays(&pool.ring, entries)?;
        current.alphabet = alphabet;
        fresh = current.rays.iter().map(|r| new_set.contains(r)).collect();
    }
    Ok(Completion { pool: current, iterations })
}
