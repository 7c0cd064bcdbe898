use serde::{Deserialize, Serialize};

use super::GraphError;

/// Orthogonality graph with its triads (triangles).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct OrthoGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
    triads: Vec<[usize; 3]>,
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
    triads: Vec<[usize; 3]>,
}

impl TryFrom<RawGraph> for OrthoGraph {
    type Error = GraphError;
    fn try_from(r: RawGraph) -> Result<Self, GraphError> {
        OrthoGraph::with_triads(r.n, r.edges, r.triads)
    }
}

impl From<OrthoGraph> for RawGraph {
    fn from(g: OrthoGraph) -> RawGraph {
        RawGraph { n: g.n, edges: g.edges, triads: g.triads }
    }
}

fn adjacency(n: usize, edges: &[[usize; 2]]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &[a, b] in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    adj
}

fn normalize_edges(n: usize, edges: Vec<[usize; 2]>) -> Result<Vec<[usize; 2]>, GraphError> {
    let mut out: Vec<[usize; 2]> = Vec::with_capacity(edges.len());
    for [a, b] in edges {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if a >= n || b >= n {
            return Err(GraphError::OutOfRange(a.max(b), n));
        }
        out.push([a.min(b), a.max(b)]);
    }
    out.sort_unstable();
    let before = out.len();
    out.dedup();
    if out.len() != before {
        return Err(GraphError::Duplicate);
    }
    Ok(out)
}

impl OrthoGraph {
    /// Builds the graph and enumerates every triangle as a triad.
    pub fn from_edges(n: usize, edges: Vec<[usize; 2]>) -> Result<Self, GraphError> {
        let edges = normalize_edges(n, edges)?;
        let adj = adjacency(n, &edges);
        let triads = triangles(&adj, &edges);
        Ok(OrthoGraph { n, edges, triads, adj })
    }

    /// Builds the graph with an explicit triad list, checked against the edges.
    pub fn with_triads(n: usize, edges: Vec<[usize; 2]>, triads: Vec<[usize; 3]>) -> Result<Self, GraphError> {
        let edges = normalize_edges(n, edges)?;
        let adj = adjacency(n, &edges);
        let mut ts: Vec<[usize; 3]> = triads
            .into_iter()
            .map(|mut t| {
                t.sort_unstable();
                t
            })
            .collect();
        ts.sort_unstable();
        ts.dedup();
        for t in &ts {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                if a == b || b >= n || adj[a].binary_search(&b).is_err() {
                    return Err(GraphError::TriadNotInEdges(*t));
                }
            }
        }
        Ok(OrthoGraph { n, edges, triads: ts, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triads(&self) -> &[[usize; 3]] {
        &self.triads
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Subgraph induced on `vertices` (relabelled in the given order), keeping
    /// only triads that lie entirely inside.
    pub fn induced(&self, vertices: &[usize]) -> OrthoGraph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let edges: Vec<[usize; 2]> = self
            .edges
            .iter()
            .filter(|e| pos[e[0]] != usize::MAX && pos[e[1]] != usize::MAX)
            .map(|e| [pos[e[0]], pos[e[1]]])
            .collect();
        let triads: Vec<[usize; 3]> = self
            .triads
            .iter()
            .filter(|t| t.iter().all(|&v| pos[v] != usize::MAX))
            .map(|t| [pos[t[0]], pos[t[1]], pos[t[2]]])
            .collect();
        OrthoGraph::with_triads(vertices.len(), edges, triads).expect("induced subgraph is valid")
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

fn triangles(adj: &[Vec<usize>], edges: &[[usize; 2]]) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for &[a, b] in edges {
        let (la, lb) = (&adj[a], &adj[b]);
        let (mut i, mut j) = (0, 0);
        while i < la.len() && j < lb.len() {
            match la[i].cmp(&lb[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if la[i] > b {
                        out.push([a, b, la[i]]);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_has_four_triangles() {
        let e = vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
        let g = OrthoGraph::from_edges(4, e).unwrap();
        assert_eq!(g.triads().len(), 4);
    }

    #[test]
    fn rejects_bad_triads() {
        assert!(OrthoGraph::with_triads(3, vec![[0, 1], [1, 2]], vec![[0, 1, 2]]).is_err());
        assert!(OrthoGraph::from_edges(2, vec![[0, 0]]).is_err());
    }

    #[test]
    fn induced_keeps_inner_triads() {
        let g = OrthoGraph::from_edges(4, vec![[0, 1], [0, 2], [1, 2], [2, 3]]).unwrap();
        let h = g.induced(&[2, 1, 0]);
        assert_eq!(h.triads(), &[[0, 1, 2]]);
        assert_eq!(h.edges().len(), 3);
        assert_eq!(g.components().len(), 1);
    }
}
