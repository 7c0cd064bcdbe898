//! Orthogonality graph structure: degrees, bases, auxiliary rays, spectrum.

mod graph;
mod spectral;

pub use graph::OrthoGraph;
pub use spectral::{adjacency_matrix, spectrum_and_hoffman, symmetric_eigenvalues, Spectrum};

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {0} out of range for {1} vertices")]
    OutOfRange(usize, usize),
    #[error("duplicate edge")]
    Duplicate,
    #[error("triad {0:?} is not a triangle of the graph")]
    TriadNotInEdges([usize; 3]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphProfile {
    pub n: usize,
    pub edge_count: usize,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub basis_count: usize,
    /// Vertices with at least one neighbour but in no triad.
    pub auxiliary_count: usize,
    /// Vertices with no neighbours; neither basis rays nor auxiliary.
    pub isolated_count: usize,
    pub component_sizes: Vec<usize>,
}

pub fn profile(g: &OrthoGraph) -> GraphProfile {
    let mut degree_histogram = BTreeMap::new();
    for d in g.degrees() {
        *degree_histogram.entry(d).or_insert(0) += 1;
    }
    let mut in_triad = vec![false; g.n()];
    for t in g.triads() {
        for &v in t {
            in_triad[v] = true;
        }
    }
    let isolated_count = (0..g.n()).filter(|&v| g.degree(v) == 0).count();
    let auxiliary_count = (0..g.n()).filter(|&v| g.degree(v) > 0 && !in_triad[v]).count();
    GraphProfile {
        n: g.n(),
        edge_count: g.edges().len(),
        degree_histogram,
        basis_count: g.triads().len(),
        auxiliary_count,
        isolated_count,
        component_sizes: g.components().iter().map(Vec::len).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_profile() {
        let g = OrthoGraph::from_edges(3, vec![[0, 1], [0, 2], [1, 2]]).unwrap();
        let p = profile(&g);
        assert_eq!(p.degree_histogram, BTreeMap::from([(2, 3)]));
        assert_eq!((p.basis_count, p.auxiliary_count, p.isolated_count), (1, 0, 0));
    }

    #[test]
    fn pendant_vertex_is_auxiliary() {
        let g = OrthoGraph::from_edges(5, vec![[0, 1], [0, 2], [1, 2], [2, 3]]).unwrap();
        let p = profile(&g);
        assert_eq!((p.auxiliary_count, p.isolated_count), (1, 1));
        assert_eq!(p.component_sizes, vec![4, 1]);
    }
}
