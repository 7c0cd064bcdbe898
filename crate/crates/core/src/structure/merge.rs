use serde::Serialize;

use super::StructureError;
use crate::hypergraph::OrthoGraph;
use crate::satcore::is_colorable;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MergeReport {
    pub total_merges: usize,
    pub ks_preserving: usize,
    /// Pairs `(v1, v2)` whose merge is colourable.
    pub failures: Vec<[usize; 2]>,
}

/// `v2` folded into `v1`: `v2` disappears and `v1` inherits its
/// orthogonalities; triads are all triangles of the new edge set.
pub fn merged(g: &OrthoGraph, v1: usize, v2: usize) -> OrthoGraph {
    let (v1, v2) = (v1.min(v2), v1.max(v2));
    let relabel = |v: usize| {
        let v = if v == v2 { v1 } else { v };
        if v > v2 {
            v - 1
        } else {
            v
        }
    };
    let mut edges: Vec<[usize; 2]> = g
        .edges()
        .iter()
        .map(|&[a, b]| {
            let (a, b) = (relabel(a), relabel(b));
            [a.min(b), a.max(b)]
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    OrthoGraph::from_edges(g.n() - 1, edges).expect("merging a non-adjacent pair keeps the graph simple")
}

/// Every non-orthogonal pair merged in turn and tested for colourability.
pub fn merge_saturation(g: &OrthoGraph) -> Result<MergeReport, StructureError> {
    if is_colorable(g) {
        return Err(StructureError::ColorableInput);
    }
    let n = g.n();
    let mut total = 0;
    let mut failures = Vec::new();
    for v1 in 0..n {
        for v2 in v1 + 1..n {
            if g.adjacent(v1, v2) {
                continue;
            }
            total += 1;
            if is_colorable(&merged(g, v1, v2)) {
                failures.push([v1, v2]);
            }
        }
    }
    Ok(MergeReport { total_merges: total, ks_preserving: total - failures.len(), failures })
}
