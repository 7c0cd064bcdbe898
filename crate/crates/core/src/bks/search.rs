use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{bks_check, BksError, BksSolver, BksVerdict};
use crate::hypergraph::OrthoGraph;
use crate::minimize::trial_rng;

pub const EXHAUSTIVE_BASIS_LIMIT: usize = 16;
const MIN_BOUND_TRIALS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BksMode {
    Exhaustive,
    Greedy,
}

/// Best pair found, reported with `|S_A| <= |S_B|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BksResult {
    pub s_a: Vec<usize>,
    pub s_b: Vec<usize>,
    pub product: usize,
    /// No pair with a smaller product is uncolourable.
    pub exact: bool,
    pub bases: usize,
    pub trials: usize,
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

fn ordered(a: Vec<usize>, b: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
    if (a.len(), &a) <= (b.len(), &b) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Search for the basis pair with the smallest product `|S_A|·|S_B|`.
pub fn bks_search_min_product(g: &OrthoGraph, mode: BksMode, trials: usize, seed: u64) -> Result<BksResult, BksError> {
    let m = g.triads().len();
    if m == 0 {
        return Err(BksError::NoUncolorablePair);
    }
    if mode == BksMode::Exhaustive && (m > EXHAUSTIVE_BASIS_LIMIT || g.n() > 128) {
        return Err(BksError::TooManyBases { got: m, limit: EXHAUSTIVE_BASIS_LIMIT });
    }
    let full = vec![true; m];
    if !BksSolver::new(g).uncolorable(&full, &full) {
        return Err(BksError::NoUncolorablePair);
    }
    let best = match mode {
        BksMode::Greedy => greedy_search(g, trials, seed),
        // any achievable product bounds the scan; a few greedy trials give a tight one
        BksMode::Exhaustive => exhaustive_search(g, greedy_search(g, trials.max(MIN_BOUND_TRIALS), seed).product),
    };
    let verdict = bks_check(g, &best.s_a, &best.s_b)?;
    assert_eq!(verdict, BksVerdict::Uncolorable, "search returned a colourable pair");
    Ok(BksResult { trials, ..best })
}

fn greedy_search(g: &OrthoGraph, trials: usize, seed: u64) -> BksResult {
    let m = g.triads().len();
    let all: Vec<usize> = (0..m).collect();
    let start = BksResult { s_a: all.clone(), s_b: all, product: m * m, exact: false, bases: m, trials };
    (0..trials)
        .into_par_iter()
        .map_init(
            || BksSolver::new(g),
            |solver, t| {
                let mut rng = trial_rng(seed, t as u64);
                let (a, b) = greedy_trial(solver, &mut rng);
                let (s_a, s_b) = ordered(a, b);
                BksResult { product: s_a.len() * s_b.len(), s_a, s_b, exact: false, bases: m, trials }
            },
        )
        .chain(rayon::iter::once(start))
        .min_by(|x, y| (x.product, x.s_a.len(), &x.s_a, &x.s_b).cmp(&(y.product, y.s_a.len(), &y.s_a, &y.s_b)))
        .expect("at least the starting pair")
}

/// Deletions in random order until none applies; then random single-basis
/// swaps, each kept only if it unlocks another deletion.
fn greedy_trial(solver: &mut BksSolver, rng: &mut impl Rng) -> (Vec<usize>, Vec<usize>) {
    let m = solver.bases();
    let mut sides = [vec![true; m], vec![true; m]];
    let drop_one = |solver: &mut BksSolver, sides: &mut [Vec<bool>; 2], rng: &mut dyn rand::RngCore| -> bool {
        let mut moves: Vec<(usize, usize)> =
            (0..2).flat_map(|s| (0..m).map(move |b| (s, b))).filter(|&(s, b)| sides[s][b]).collect();
        moves.shuffle(rng);
        for (s, b) in moves {
            if sides[s].iter().filter(|&&x| x).count() == 1 {
                continue;
            }
            sides[s][b] = false;
            if solver.uncolorable(&sides[0], &sides[1]) {
                return true;
            }
            sides[s][b] = true;
        }
        false
    };
    loop {
        while drop_one(solver, &mut sides, rng) {}
        let mut swaps: Vec<(usize, usize, usize)> = (0..2)
            .flat_map(|s| (0..m).flat_map(move |i| (0..m).map(move |o| (s, i, o))))
            .filter(|&(s, i, o)| sides[s][i] && !sides[s][o])
            .collect();
        swaps.shuffle(rng);
        swaps.truncate(4 * m);
        let mut moved = false;
        for (s, i, o) in swaps {
            sides[s][i] = false;
            sides[s][o] = true;
            if solver.uncolorable(&sides[0], &sides[1]) && drop_one(solver, &mut sides, rng) {
                moved = true;
                break;
            }
            sides[s][i] = true;
            sides[s][o] = false;
        }
        if !moved {
            break;
        }
    }
    let pick = |v: &[bool]| (0..m).filter(|&b| v[b]).collect::<Vec<_>>();
    (pick(&sides[0]), pick(&sides[1]))
}

/// Orthogonality neighbourhoods as ray bitmasks.
struct Kill {
    triads: Vec<[usize; 3]>,
    nbr: Vec<u128>,
}

impl Kill {
    fn new(g: &OrthoGraph) -> Self {
        let nbr = (0..g.n()).map(|r| g.neighbors(r).iter().fold(0u128, |acc, &s| acc | 1 << s)).collect();
        Kill { triads: g.triads().to_vec(), nbr }
    }

    /// For each way of picking one vector in every basis of `a`, the set of
    /// bases whose three vectors are all orthogonal to some picked vector.
    /// S_B makes the pair uncolourable iff it meets every such set. `None`
    /// when some pick leaves that set empty.
    fn family(&self, a: &[usize]) -> Option<Vec<u32>> {
        let mut out = BTreeSet::new();
        if !self.descend(a, 0, &mut out) {
            return None;
        }
        let sets: Vec<u32> = out.into_iter().collect();
        // keep inclusion-minimal sets only
        let minimal = sets
            .iter()
            .copied()
            .filter(|&s| !sets.iter().any(|&t| t != s && t & s == t))
            .collect();
        Some(minimal)
    }

    fn descend(&self, rest: &[usize], covered: u128, out: &mut BTreeSet<u32>) -> bool {
        let Some((&b, tail)) = rest.split_first() else {
            let killed = self
                .triads
                .iter()
                .enumerate()
                .filter(|(_, t)| t.iter().all(|&u| covered >> u & 1 == 1))
                .fold(0u32, |acc, (i, _)| acc | 1 << i);
            if killed == 0 {
                return false;
            }
            out.insert(killed);
            return true;
        };
        self.triads[b].iter().all(|&u| self.descend(tail, covered | self.nbr[u], out))
    }
}

/// Smallest set meeting every member of `family`, of size at most `kmax`.
fn min_hitting_set(family: &[u32], kmax: usize) -> Option<u32> {
    fn go(family: &[u32], chosen: u32, k: usize) -> Option<u32> {
        let open = family.iter().filter(|&&s| s & chosen == 0).min_by_key(|s| s.count_ones());
        let Some(&s) = open else {
            return Some(chosen);
        };
        if k == 0 {
            return None;
        }
        bits(s).into_iter().find_map(|e| go(family, chosen | 1 << e, k - 1))
    }
    (0..=kmax).find_map(|k| go(family, 0, k))
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == m - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every S_A in increasing size, each paired with a smallest S_B. Pairs are
/// unordered, so only `|S_A| <= |S_B|` needs looking at, which stops the
/// scan once `|S_A|²` passes the bound. `bound` is any achievable product.
fn exhaustive_search(g: &OrthoGraph, bound: usize) -> BksResult {
    let m = g.triads().len();
    let kill = Kill::new(g);
    let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    let mut limit = bound;
    for a in 1..=m {
        if a * a > limit {
            break;
        }
        let kmax = limit / a;
        let found = combinations(m, a)
            .into_par_iter()
            .filter_map(|sa| {
                let fam = kill.family(&sa)?;
                let hs = min_hitting_set(&fam, kmax)?;
                let sb = bits(hs);
                Some((sa.len() * sb.len(), sa, sb))
            })
            .filter(|(p, sa, sb)| sa.len() <= sb.len() && *p <= limit)
            .min();
        if let Some(f) = found {
            if best.as_ref().is_none_or(|b| f < *b) {
                limit = f.0;
                best = Some(f);
            }
        }
    }
    let (product, s_a, s_b) = best.expect("the bound is achievable");
    BksResult { s_a, s_b, product, exact: true, bases: m, trials: 0 }
}
