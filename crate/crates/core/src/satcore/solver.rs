//! Conflict-driven clause learning with two watched literals, first-UIP
//! learning, activity-based branching, phase saving, Luby restarts and
//! assumption cores.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{CnfInstance, Lit, Var};

const FALSE: u8 = 0;
const TRUE: u8 = 1;
const UNDEF: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Sat,
    Unsat,
    /// Conflict budget exhausted.
    Unknown,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub status: Status,
    pub model: Option<Vec<bool>>,
    /// Subset of the assumptions that is already unsatisfiable with the formula.
    pub core: Vec<Lit>,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        self.status == Status::Sat
    }

    pub fn is_unsat(&self) -> bool {
        self.status == Status::Unsat
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Branching {
    /// Highest activity first; ties broken by lowest index.
    #[default]
    Activity,
    LowestIndex,
}

#[derive(Clone, Debug, Default)]
pub struct SolverOptions {
    pub branching: Branching,
    /// Randomizes the initial phase of every variable. Default: all false.
    pub polarity_seed: Option<u64>,
    pub conflict_budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct SolverStats {
    pub solves: u64,
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
}

struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    activity: f64,
    deleted: bool,
}

#[derive(Clone, Copy)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

#[inline]
fn val(assigns: &[u8], l: Lit) -> u8 {
    let a = assigns[l.var() as usize];
    if a == UNDEF {
        UNDEF
    } else {
        a ^ l.is_negated() as u8
    }
}

/// Max-heap on activity, ties to the lower index.
#[derive(Default)]
struct VarHeap {
    heap: Vec<Var>,
    pos: Vec<usize>,
}

impl VarHeap {
    fn better(act: &[f64], a: Var, b: Var) -> bool {
        let (x, y) = (act[a as usize], act[b as usize]);
        x > y || (x == y && a < b)
    }

    fn contains(&self, v: Var) -> bool {
        self.pos[v as usize] != usize::MAX
    }

    fn up(&mut self, act: &[f64], mut i: usize) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            if !Self::better(act, v, self.heap[parent]) {
                break;
            }
            self.heap[i] = self.heap[parent];
            self.pos[self.heap[i] as usize] = i;
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i;
    }

    fn down(&mut self, act: &[f64], mut i: usize) {
        let v = self.heap[i];
        loop {
            let l = 2 * i + 1;
            if l >= self.heap.len() {
                break;
            }
            let r = l + 1;
            let c = if r < self.heap.len() && Self::better(act, self.heap[r], self.heap[l]) { r } else { l };
            if !Self::better(act, self.heap[c], v) {
                break;
            }
            self.heap[i] = self.heap[c];
            self.pos[self.heap[i] as usize] = i;
            i = c;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i;
    }

    fn insert(&mut self, act: &[f64], v: Var) {
        if self.pos.len() <= v as usize {
            self.pos.resize(v as usize + 1, usize::MAX);
        }
        if self.contains(v) {
            return;
        }
        self.heap.push(v);
        let i = self.heap.len() - 1;
        self.pos[v as usize] = i;
        self.up(act, i);
    }

    fn pop(&mut self, act: &[f64]) -> Option<Var> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.pos[top as usize] = usize::MAX;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.down(act, 0);
        }
        Some(top)
    }

    fn increased(&mut self, act: &[f64], v: Var) {
        if self.contains(v) {
            let i = self.pos[v as usize];
            self.up(act, i);
        }
    }
}

fn luby(y: f64, mut x: u64) -> f64 {
    let (mut size, mut seq) = (1u64, 0i32);
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    y.powi(seq)
}

pub struct Solver {
    opts: SolverOptions,
    clauses: Vec<Clause>,
    originals: Vec<Vec<Lit>>,
    learnts: Vec<u32>,
    watches: Vec<Vec<Watcher>>,
    assigns: Vec<u8>,
    level: Vec<u32>,
    reason: Vec<Option<u32>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    heap: VarHeap,
    cursor: usize,
    polarity: Vec<bool>,
    seen: Vec<bool>,
    ok: bool,
    max_learnts: f64,
    rng: Option<ChaCha8Rng>,
    stats: SolverStats,
}

impl Solver {
    pub fn new(opts: SolverOptions) -> Self {
        let rng = opts.polarity_seed.map(ChaCha8Rng::seed_from_u64);
        Solver {
            opts,
            clauses: Vec::new(),
            originals: Vec::new(),
            learnts: Vec::new(),
            watches: Vec::new(),
            assigns: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: Vec::new(),
            var_inc: 1.0,
            cla_inc: 1.0,
            heap: VarHeap::default(),
            cursor: 0,
            polarity: Vec::new(),
            seen: Vec::new(),
            ok: true,
            max_learnts: 2000.0,
            rng,
            stats: SolverStats::default(),
        }
    }

    pub fn from_cnf(cnf: &CnfInstance, opts: SolverOptions) -> Self {
        let mut s = Solver::new(opts);
        s.reserve_vars(cnf.var_count);
        for c in &cnf.clauses {
            s.add_clause(c);
        }
        s
    }

    pub fn num_vars(&self) -> u32 {
        self.assigns.len() as u32
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    pub fn new_var(&mut self) -> Var {
        let v = self.assigns.len() as Var;
        self.assigns.push(UNDEF);
        self.level.push(0);
        self.reason.push(None);
        self.activity.push(0.0);
        self.seen.push(false);
        let phase = self.rng.as_mut().map(|r| r.random::<bool>()).unwrap_or(false);
        self.polarity.push(phase);
        self.watches.push(Vec::new());
        self.watches.push(Vec::new());
        self.heap.insert(&self.activity, v);
        v
    }

    pub fn reserve_vars(&mut self, n: u32) {
        while self.num_vars() < n {
            self.new_var();
        }
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    /// Adds a clause between solves. Returns false once the formula is
    /// known unsatisfiable without assumptions.
    pub fn add_clause(&mut self, clause: &[Lit]) -> bool {
        debug_assert_eq!(self.decision_level(), 0);
        if let Some(m) = clause.iter().map(|l| l.var()).max() {
            self.reserve_vars(m + 1);
        }
        self.originals.push(clause.to_vec());
        if !self.ok {
            return false;
        }
        let mut c = clause.to_vec();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] == !w[1]) {
            return true;
        }
        if c.iter().any(|&l| val(&self.assigns, l) == TRUE) {
            return true;
        }
        c.retain(|&l| val(&self.assigns, l) != FALSE);
        match c.len() {
            0 => self.ok = false,
            1 => {
                self.enqueue(c[0], None);
                if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            _ => {
                self.attach(c, false);
            }
        }
        self.ok
    }

    fn attach(&mut self, lits: Vec<Lit>, learnt: bool) -> u32 {
        let cref = self.clauses.len() as u32;
        self.watches[(!lits[0]).code()].push(Watcher { cref, blocker: lits[1] });
        self.watches[(!lits[1]).code()].push(Watcher { cref, blocker: lits[0] });
        self.clauses.push(Clause { lits, learnt, activity: 0.0, deleted: false });
        if learnt {
            self.learnts.push(cref);
        }
        cref
    }

    fn enqueue(&mut self, l: Lit, reason: Option<u32>) {
        let v = l.var() as usize;
        self.assigns[v] = !l.is_negated() as u8;
        self.level[v] = self.decision_level() as u32;
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn propagate(&mut self) -> Option<u32> {
        let mut conflict = None;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[p.code()]);
            let (mut i, mut j) = (0, 0);
            'next: while i < ws.len() {
                let w = ws[i];
                i += 1;
                if val(&self.assigns, w.blocker) == TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let c = &mut self.clauses[w.cref as usize].lits;
                if c[0] == false_lit {
                    c.swap(0, 1);
                }
                let first = c[0];
                let nw = Watcher { cref: w.cref, blocker: first };
                if first != w.blocker && val(&self.assigns, first) == TRUE {
                    ws[j] = nw;
                    j += 1;
                    continue;
                }
                for k in 2..c.len() {
                    if val(&self.assigns, c[k]) != FALSE {
                        c.swap(1, k);
                        self.watches[(!c[1]).code()].push(nw);
                        continue 'next;
                    }
                }
                ws[j] = nw;
                j += 1;
                if val(&self.assigns, first) == FALSE {
                    conflict = Some(w.cref);
                    self.qhead = self.trail.len();
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                } else {
                    self.enqueue(first, Some(w.cref));
                }
            }
            ws.truncate(j);
            self.watches[p.code()] = ws;
            if conflict.is_some() {
                break;
            }
        }
        conflict
    }

    fn cancel_until(&mut self, lvl: usize) {
        if self.decision_level() <= lvl {
            return;
        }
        let start = self.trail_lim[lvl];
        for i in (start..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = l.var();
            self.assigns[v as usize] = UNDEF;
            self.reason[v as usize] = None;
            self.polarity[v as usize] = !l.is_negated();
            self.heap.insert(&self.activity, v);
            self.cursor = self.cursor.min(v as usize);
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(lvl);
        self.qhead = start;
    }

    fn bump_var(&mut self, v: Var) {
        let a = &mut self.activity[v as usize];
        *a += self.var_inc;
        if *a > 1e100 {
            for x in &mut self.activity {
                *x *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.increased(&self.activity, v);
    }

    fn bump_clause(&mut self, cref: u32) {
        let c = &mut self.clauses[cref as usize];
        if !c.learnt {
            return;
        }
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for &r in &self.learnts {
                self.clauses[r as usize].activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, usize) {
        let mut learnt = vec![Lit::pos(0)];
        let mut path = 0;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let dl = self.decision_level() as u32;
        loop {
            self.bump_clause(confl);
            let start = if p.is_none() { 0 } else { 1 };
            let len = self.clauses[confl as usize].lits.len();
            for k in start..len {
                let q = self.clauses[confl as usize].lits[k];
                let v = q.var() as usize;
                if !self.seen[v] && self.level[v] > 0 {
                    self.bump_var(q.var());
                    self.seen[v] = true;
                    if self.level[v] >= dl {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var() as usize] {
                    break;
                }
            }
            let pl = self.trail[index];
            p = Some(pl);
            self.seen[pl.var() as usize] = false;
            path -= 1;
            if path == 0 {
                break;
            }
            confl = self.reason[pl.var() as usize].expect("implied literal has a reason");
        }
        learnt[0] = !p.unwrap();

        // drop literals implied by others already in the clause
        let all = learnt.clone();
        let mut kept = vec![learnt[0]];
        for &q in &learnt[1..] {
            let redundant = match self.reason[q.var() as usize] {
                None => false,
                Some(r) => self.clauses[r as usize].lits[1..].iter().all(|x| {
                    let v = x.var() as usize;
                    self.seen[v] || self.level[v] == 0
                }),
            };
            if !redundant {
                kept.push(q);
            }
        }
        for q in &all {
            self.seen[q.var() as usize] = false;
        }
        let mut learnt = kept;
        let bt = if learnt.len() == 1 {
            0
        } else {
            let mut mi = 1;
            for k in 2..learnt.len() {
                if self.level[learnt[k].var() as usize] > self.level[learnt[mi].var() as usize] {
                    mi = k;
                }
            }
            learnt.swap(1, mi);
            self.level[learnt[1].var() as usize] as usize
        };
        (learnt, bt)
    }

    /// Assumptions responsible for falsifying assumption `a`.
    fn analyze_final(&mut self, a: Lit) -> Vec<Lit> {
        let mut core = vec![a];
        if self.decision_level() == 0 {
            return core;
        }
        self.seen[a.var() as usize] = true;
        for i in (self.trail_lim[0]..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = l.var() as usize;
            if !self.seen[v] {
                continue;
            }
            match self.reason[v] {
                None => {
                    if l != a {
                        core.push(l);
                    }
                }
                Some(r) => {
                    for k in 1..self.clauses[r as usize].lits.len() {
                        let q = self.clauses[r as usize].lits[k];
                        if self.level[q.var() as usize] > 0 {
                            self.seen[q.var() as usize] = true;
                        }
                    }
                }
            }
            self.seen[v] = false;
        }
        self.seen[a.var() as usize] = false;
        core
    }

    fn locked(&self, cref: u32) -> bool {
        let c = &self.clauses[cref as usize];
        let l = c.lits[0];
        val(&self.assigns, l) == TRUE && self.reason[l.var() as usize] == Some(cref)
    }

    fn reduce_db(&mut self) {
        let mut ls = std::mem::take(&mut self.learnts);
        ls.sort_by(|&a, &b| {
            self.clauses[a as usize].activity.partial_cmp(&self.clauses[b as usize].activity).unwrap()
        });
        let half = ls.len() / 2;
        let mut keep = Vec::with_capacity(ls.len());
        for (i, &c) in ls.iter().enumerate() {
            if i < half && self.clauses[c as usize].lits.len() > 2 && !self.locked(c) {
                let cl = &mut self.clauses[c as usize];
                cl.deleted = true;
                cl.lits = Vec::new();
            } else {
                keep.push(c);
            }
        }
        self.learnts = keep;
        let clauses = &self.clauses;
        for ws in &mut self.watches {
            ws.retain(|w| !clauses[w.cref as usize].deleted);
        }
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        let v = match self.opts.branching {
            Branching::Activity => loop {
                let v = self.heap.pop(&self.activity)?;
                if self.assigns[v as usize] == UNDEF {
                    break v;
                }
            },
            Branching::LowestIndex => {
                while self.cursor < self.assigns.len() && self.assigns[self.cursor] != UNDEF {
                    self.cursor += 1;
                }
                if self.cursor == self.assigns.len() {
                    return None;
                }
                self.cursor as Var
            }
        };
        Some(Lit::new(v, !self.polarity[v as usize]))
    }

    fn search(&mut self, nof_conflicts: u64, assumptions: &[Lit], budget_left: &mut Option<u64>) -> (Status, Vec<Lit>) {
        let mut local = 0u64;
        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                local += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    return (Status::Unsat, Vec::new());
                }
                let (learnt, bt) = self.analyze(confl);
                self.cancel_until(bt);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], None);
                } else {
                    let first = learnt[0];
                    let cref = self.attach(learnt, true);
                    self.bump_clause(cref);
                    self.enqueue(first, Some(cref));
                }
                self.var_inc /= 0.95;
                self.cla_inc /= 0.999;
                if let Some(b) = budget_left {
                    if *b == 0 {
                        return (Status::Unknown, Vec::new());
                    }
                    *b -= 1;
                }
            } else {
                if local >= nof_conflicts {
                    self.cancel_until(0);
                    return (Status::Unknown, Vec::new());
                }
                if self.learnts.len() as f64 - self.trail.len() as f64 >= self.max_learnts {
                    self.reduce_db();
                }
                let mut next = None;
                while self.decision_level() < assumptions.len() {
                    let p = assumptions[self.decision_level()];
                    match val(&self.assigns, p) {
                        TRUE => self.trail_lim.push(self.trail.len()),
                        FALSE => {
                            let core = self.analyze_final(p);
                            return (Status::Unsat, core);
                        }
                        _ => {
                            next = Some(p);
                            break;
                        }
                    }
                }
                let next = match next {
                    Some(p) => p,
                    None => {
                        self.stats.decisions += 1;
                        match self.pick_branch() {
                            Some(l) => l,
                            None => return (Status::Sat, Vec::new()),
                        }
                    }
                };
                self.trail_lim.push(self.trail.len());
                self.enqueue(next, None);
            }
        }
    }

    /// Decides the formula under the assumptions.
    pub fn solve(&mut self, assumptions: &[Lit]) -> SolveResult {
        self.stats.solves += 1;
        if let Some(m) = assumptions.iter().map(|l| l.var()).max() {
            self.reserve_vars(m + 1);
        }
        if !self.ok {
            return SolveResult { status: Status::Unsat, model: None, core: Vec::new() };
        }
        self.max_learnts = self.max_learnts.max(self.originals.len() as f64 / 3.0);
        let mut budget = self.opts.conflict_budget;
        let mut restarts = 0;
        let (status, core) = loop {
            let nof = (luby(2.0, restarts) * 100.0) as u64;
            let (st, core) = self.search(nof, assumptions, &mut budget);
            if st != Status::Unknown || budget == Some(0) {
                break (st, core);
            }
            restarts += 1;
            self.max_learnts *= 1.05;
        };
        let model = (status == Status::Sat).then(|| self.assigns.iter().map(|&a| a == TRUE).collect::<Vec<bool>>());
        self.cancel_until(0);
        if let Some(m) = &model {
            assert!(
                self.originals.iter().all(|c| c.iter().any(|l| l.eval(m))),
                "solver produced a model that violates a clause"
            );
            assert!(assumptions.iter().all(|l| l.eval(m)), "model violates an assumption");
        }
        SolveResult { status, model, core }
    }
}

/// One-shot solve with default options.
pub fn sat_solve(f: &CnfInstance, assumptions: &[Lit]) -> SolveResult {
    Solver::from_cnf(f, SolverOptions::default()).solve(assumptions)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cnf(n: u32, cls: &[&[i64]]) -> CnfInstance {
        let mut f = CnfInstance::new(n);
        for c in cls {
            f.add_clause(c.iter().map(|&d| Lit::from_dimacs(d).unwrap()).collect());
        }
        f
    }

    #[test]
    fn luby_sequence() {
        let s: Vec<f64> = (0..7).map(|i| luby(2.0, i)).collect();
        assert_eq!(s, vec![1.0, 1.0, 2.0, 1.0, 1.0, 2.0, 4.0]);
    }

    #[test]
    fn trivial_cases() {
        assert!(sat_solve(&cnf(2, &[]), &[]).is_sat());
        assert!(sat_solve(&cnf(1, &[&[1], &[-1]]), &[]).is_unsat());
        let r = sat_solve(&cnf(2, &[&[1, 2], &[-1, 2], &[1, -2]]), &[]);
        assert_eq!(r.model.unwrap(), vec![true, true]);
    }

    #[test]
    fn pigeonhole_is_unsat() {
        // 4 pigeons, 3 holes
        let var = |p: u32, h: u32| (p * 3 + h) as i64 + 1;
        let mut cls: Vec<Vec<i64>> = (0..4).map(|p| (0..3).map(|h| var(p, h)).collect()).collect();
        for h in 0..3 {
            for a in 0..4 {
                for b in a + 1..4 {
                    cls.push(vec![-var(a, h), -var(b, h)]);
                }
            }
        }
        let refs: Vec<&[i64]> = cls.iter().map(|c| c.as_slice()).collect();
        assert!(sat_solve(&cnf(12, &refs), &[]).is_unsat());
        let opts = SolverOptions { branching: Branching::LowestIndex, ..Default::default() };
        assert!(Solver::from_cnf(&cnf(12, &refs), opts).solve(&[]).is_unsat());
    }

    #[test]
    fn assumption_core_is_genuine() {
        // a1 -> x, a2 -> ¬x, a3 free
        let f = cnf(4, &[&[-2, 1], &[-3, -1]]);
        let mut s = Solver::from_cnf(&f, SolverOptions::default());
        let a: Vec<Lit> = [2, 3, 4].iter().map(|&d| Lit::from_dimacs(d).unwrap()).collect();
        let r = s.solve(&a);
        assert!(r.is_unsat());
        let mut core = r.core.clone();
        core.sort();
        assert_eq!(core, vec![a[0], a[1]]);
        assert!(s.solve(&core).is_unsat());
        assert!(s.solve(&a[1..]).is_sat());
    }

    #[test]
    fn incremental_clauses() {
        let mut s = Solver::new(SolverOptions::default());
        s.add_clause(&[Lit::pos(0), Lit::pos(1)]);
        assert!(s.solve(&[Lit::neg(0)]).is_sat());
        s.add_clause(&[Lit::neg(1)]);
        assert!(s.solve(&[Lit::neg(0)]).is_unsat());
        assert!(s.solve(&[]).is_sat());
    }

    #[test]
    fn budget_gives_unknown() {
        let var = |p: u32, h: u32| (p * 6 + h) as i64 + 1;
        let mut cls: Vec<Vec<i64>> = (0..7).map(|p| (0..6).map(|h| var(p, h)).collect()).collect();
        for h in 0..6 {
            for a in 0..7 {
                for b in a + 1..7 {
                    cls.push(vec![-var(a, h), -var(b, h)]);
                }
            }
        }
        let refs: Vec<&[i64]> = cls.iter().map(|c| c.as_slice()).collect();
        let opts = SolverOptions { conflict_budget: Some(5), ..Default::default() };
        assert_eq!(Solver::from_cnf(&cnf(42, &refs), opts).solve(&[]).status, Status::Unknown);
    }
}
