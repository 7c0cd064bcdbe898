use std::collections::BTreeSet;

use petgraph::algo::isomorphism::subgraph_isomorphisms_iter;
use petgraph::graph::UnGraph;
use serde::Serialize;

use crate::hypergraph::OrthoGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    /// `bijection[v]` is the image in the second graph of vertex `v`.
    pub bijection: Vec<usize>,
    pub triad_preserving: bool,
}

fn to_petgraph(g: &OrthoGraph) -> UnGraph<usize, ()> {
    let mut p = UnGraph::with_capacity(g.n(), g.edges().len());
    let ids: Vec<_> = (0..g.n()).map(|v| p.add_node(g.degree(v))).collect();
    for &[a, b] in g.edges() {
        p.add_edge(ids[a], ids[b], ());
    }
    p
}

fn sorted_degrees(g: &OrthoGraph) -> Vec<usize> {
    let mut d = g.degrees();
    d.sort_unstable();
    d
}

fn maps_edges(g1: &OrthoGraph, g2: &OrthoGraph, f: &[usize]) -> bool {
    let mut seen = vec![false; g2.n()];
    f.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        && g1.edges().iter().all(|&[a, b]| g2.adjacent(f[a], f[b]))
}

fn maps_triads(g1: &OrthoGraph, g2: &OrthoGraph, f: &[usize]) -> bool {
    let target: BTreeSet<[usize; 3]> = g2.triads().iter().copied().collect();
    g1.triads().len() == g2.triads().len()
        && g1.triads().iter().all(|t| {
            let mut m = t.map(|v| f[v]);
            m.sort_unstable();
            target.contains(&m)
        })
}

/// Isomorphism by VF2 with vertex degrees as labels. With `check_triads` the
/// witness must also carry triads onto triads; the search continues past
/// edge isomorphisms that do not.
pub fn graph_isomorphic(g1: &OrthoGraph, g2: &OrthoGraph, check_triads: bool) -> Option<IsoWitness> {
    if g1.n() != g2.n() || g1.edges().len() != g2.edges().len() || sorted_degrees(g1) != sorted_degrees(g2) {
        return None;
    }
    let (p1, p2) = (to_petgraph(g1), to_petgraph(g2));
    let (r1, r2) = (&p1, &p2);
    let mut nm = |a: &usize, b: &usize| a == b;
    let mut em = |_: &(), _: &()| true;
    let iter = subgraph_isomorphisms_iter(&r1, &r2, &mut nm, &mut em)?;
    for f in iter {
        assert!(maps_edges(g1, g2, &f), "matcher returned a non-isomorphism");
        let triad_preserving = maps_triads(g1, g2, &f);
        if triad_preserving || !check_triads {
            return Some(IsoWitness { bijection: f, triad_preserving });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_graph_is_found() {
        let g = OrthoGraph::from_edges(5, vec![[0, 1], [0, 2], [1, 2], [2, 3], [3, 4]]).unwrap();
        let perm = [3, 0, 4, 1, 2];
        let h = OrthoGraph::from_edges(5, g.edges().iter().map(|&[a, b]| [perm[a], perm[b]]).collect()).unwrap();
        let w = graph_isomorphic(&g, &h, true).unwrap();
        assert!(w.triad_preserving);
        assert!(maps_edges(&g, &h, &w.bijection));
        assert_eq!(graph_isomorphic(&g, &g, true).unwrap().bijection.len(), 5);
    }

    #[test]
    fn different_degrees_rejected() {
        let path = OrthoGraph::from_edges(4, vec![[0, 1], [1, 2], [2, 3]]).unwrap();
        let star = OrthoGraph::from_edges(4, vec![[0, 1], [0, 2], [0, 3]]).unwrap();
        assert!(graph_isomorphic(&path, &star, false).is_none());
    }
}
