use crate::hypergraph::OrthoGraph;

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn full(n: usize) -> Self {
        let mut b = Bits::empty(n);
        (0..n).for_each(|i| b.set(i));
        b
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn and_count(&self, o: &Bits) -> usize {
        self.0.iter().zip(&o.0).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }
    fn minus(&mut self, o: &Bits) {
        self.0.iter_mut().zip(&o.0).for_each(|(a, b)| *a &= !b);
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    64 * k + t
                })
            })
        })
    }
}

struct Search<'a> {
    g: &'a OrthoGraph,
    nbr: Vec<Bits>,
    best: Vec<usize>,
}

impl Search<'_> {
    /// Greedy partition of `cand` into cliques; their number bounds α.
    fn clique_cover(&self, cand: &Bits) -> usize {
        let mut left = cand.clone();
        let mut count = 0;
        for v in cand.iter() {
            if !left.has(v) {
                continue;
            }
            left.clear(v);
            count += 1;
            let mut clique = vec![v];
            for &u in self.g.neighbors(v) {
                if left.has(u) && clique.iter().all(|&w| self.g.adjacent(u, w)) {
                    clique.push(u);
                    left.clear(u);
                }
            }
        }
        count
    }

    fn go(&mut self, mut cand: Bits, mut chosen: Vec<usize>) {
        // vertices with at most one candidate neighbour are always safe to take
        loop {
            let low = cand.iter().find(|&v| self.nbr[v].and_count(&cand) <= 1);
            let Some(v) = low else { break };
            chosen.push(v);
            cand.clear(v);
            cand.minus(&self.nbr[v]);
        }
        if cand.is_empty() {
            if chosen.len() > self.best.len() {
                self.best = chosen;
            }
            return;
        }
        if chosen.len() + self.clique_cover(&cand) <= self.best.len() {
            return;
        }
        let v = cand.iter().max_by_key(|&v| (self.nbr[v].and_count(&cand), std::cmp::Reverse(v))).unwrap();
        let mut with = cand.clone();
        with.clear(v);
        with.minus(&self.nbr[v]);
        let mut c = chosen.clone();
        c.push(v);
        self.go(with, c);
        cand.clear(v);
        self.go(cand, chosen);
    }
}

/// Maximum independent set (size and a witness, ascending).
pub fn independence_number(g: &OrthoGraph) -> (usize, Vec<usize>) {
    let n = g.n();
    let nbr = (0..n)
        .map(|v| {
            let mut b = Bits::empty(n);
            g.neighbors(v).iter().for_each(|&u| b.set(u));
            b
        })
        .collect();
    let mut s = Search { g, nbr, best: Vec::new() };
    s.go(Bits::full(n), Vec::new());
    let mut w = s.best;
    w.sort_unstable();
    assert!(
        w.iter().enumerate().all(|(i, &a)| w[i + 1..].iter().all(|&b| !g.adjacent(a, b))),
        "witness is not independent"
    );
    (w.len(), w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(g: &OrthoGraph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&m| g.edges().iter().all(|&[a, b]| m >> a & 1 == 0 || m >> b & 1 == 0))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(independence_number(&OrthoGraph::from_edges(5, vec![]).unwrap()).0, 5);
        let k4 = OrthoGraph::from_edges(4, vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]).unwrap();
        assert_eq!(independence_number(&k4).0, 1);
        let c5 = OrthoGraph::from_edges(5, vec![[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]).unwrap();
        assert_eq!(independence_number(&c5).0, 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn matches_brute_force(n in 1usize..=12, mask in proptest::collection::vec(any::<bool>(), 66)) {
            let mut e = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if mask[k] { e.push([i, j]); }
                    k += 1;
                }
            }
            let g = OrthoGraph::from_edges(n, e).unwrap();
            prop_assert_eq!(independence_number(&g).0, brute(&g));
        }
    }
}
