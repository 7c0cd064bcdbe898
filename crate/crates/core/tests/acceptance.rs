//! One PASS/FAIL line per acceptance criterion.
//!
//! Exits 0 regardless of the verdicts so that `cargo test` reports the suite
//! rather than stopping on a known deviation; set `KS_ATLAS_STRICT=1` to exit
//! non-zero on any FAIL. `KS_ATLAS_SLOW=1` adds the golden-pool certification.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use ks_atlas::Generator;
use ks_atlas::minimize::{brute_force_minimum, certify_minimum, greedy_minimize, mus_landscape, CertifyBudget};
use ks_atlas::rays::{complete_pool, DEFAULT_MAX_HEIGHT, DEFAULT_MAX_ITERATIONS};
use ks_atlas::satcore::{is_colorable, SelectorSolver, SolverOptions};
use ks_atlas::survey::registry::recipe;
use ks_atlas::survey::{run_survey, Bound, SurveyOptions, SurveyReport};
use ks_atlas::{Exact, ExactPool, ExactRay, OrthoGraph, Rational, Ring};

type Failures = Vec<String>;

struct Ctx {
    slow: bool,
    reports: BTreeMap<&'static str, SurveyReport>,
}

impl Ctx {
    fn report(&mut self, preset: &'static str) -> &SurveyReport {
        self.reports.entry(preset).or_insert_with(|| {
            run_survey(preset, SurveyOptions { seed: 0, slow: false }).unwrap_or_else(|e| panic!("{preset}: {e}"))
        })
    }
}

fn pool(name: &str) -> ExactPool {
    recipe(name, false).and_then(|r| r.build()).unwrap_or_else(|e| panic!("{name}: {e}")).pool
}

fn field<'a>(r: &'a SurveyReport, row: &str, f: &str) -> &'a Value {
    static NULL: Value = Value::Null;
    r.row(row).and_then(|x| x.get(f)).unwrap_or(&NULL)
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or(f64::NAN)
}

fn expect(fails: &mut Failures, ok: bool, msg: impl FnOnce() -> String) {
    if !ok {
        fails.push(msg());
    }
}

fn within(fails: &mut Failures, label: &str, got: f64, want: f64, tol: f64) {
    expect(fails, (got - want).abs() <= tol, || format!("{label} = {got}, expected {want} ± {tol}"));
}

fn equal<T: PartialEq + std::fmt::Debug>(fails: &mut Failures, label: &str, got: T, want: T) {
    expect(fails, got == want, || format!("{label} = {got:?}, expected {want:?}"));
}

fn no_mismatches(fails: &mut Failures, r: &SurveyReport) {
    for m in &r.mismatches {
        fails.push(format!("{} {}: expected {}, got {}", m.row, m.field, serde_json::to_string(&m.expected).unwrap(), m.actual));
    }
}

fn budget(fails: &mut Failures, t: Instant, limit: Duration) {
    let e = t.elapsed();
    expect(fails, e <= limit, || format!("took {:.0} s, budget {:.0} s", e.as_secs_f64(), limit.as_secs_f64()));
}

fn c1(ctx: &mut Ctx) -> Failures {
    let mut f = Failures::new();
    let t = Instant::now();
    let r = ctx.report("table1").clone();
    no_mismatches(&mut f, &r);
    for row in ["integer", "half", "peres"] {
        equal(&mut f, &format!("{row} bound"), r.row(row).and_then(|x| x.bound), Some(Bound::Exact));
    }
    budget(&mut f, t, Duration::from_secs(60 + 3 * 10));
    f
}

fn c2(_: &mut Ctx) -> Failures {
    let mut f = Failures::new();
    let t = Instant::now();
    let p = pool("integer");
    match certify_minimum(p.graph(), CertifyBudget::default()) {
        Ok(c) => {
            equal(&mut f, "min_size", c.min_size, 31);
            equal(&mut f, "witness size", c.witness.size, 31);
            expect(&mut f, !is_colorable(&p.graph().induced(&c.witness.ray_indices)), || "witness is colorable".into());
        }
        Err(e) => f.push(e.to_string()),
    }
    budget(&mut f, t, Duration::from_secs(60));
    f
}

fn c3(ctx: &mut Ctx) -> Failures {
    let mut f = Failures::new();
    for (name, want) in [("eisenstein", 33), ("sqrt-2", 33), ("heegner-7", 43)] {
        match certify_minimum(pool(name).graph(), CertifyBudget::default()) {
            Ok(c) => equal(&mut f, &format!("{name} certified minimum"), c.min_size, want),
            Err(e) => f.push(format!("{name}: {e}")),
        }
    }
    let golden = pool("golden");
    let best = greedy_minimize(golden.graph(), 400, 0)
        .ok()
        .and_then(|v| v.into_iter().filter(|m| m.verified_minimal).min_by_key(|m| m.size));
    if let Some(m) = best {
        let uncolorable = !is_colorable(&golden.graph().induced(&m.ray_indices));
        if uncolorable && m.size < 52 {
            f.push(format!("golden pool has a verified minimal uncolorable {}-ray subset, so its minimum is not 52", m.size));
        }
    }
    if ctx.slow {
        let t = Instant::now();
        match certify_minimum(golden.graph(), CertifyBudget { max_iterations: 200_000, max_conflicts: None }) {
            Ok(c) => equal(&mut f, "golden certified minimum", c.min_size, 52),
            Err(e) => f.push(format!("golden certification: {e}")),
        }
        budget(&mut f, t, Duration::from_secs(30 * 60));
    } else {
        f.push("golden certification not run (set KS_ATLAS_SLOW=1)".into());
    }
    f
}

fn c4(ctx: &mut Ctx) -> Failures {
    let mut f = Failures::new();
    let t = Instant::now();
    let r = ctx.report("table3").clone();
    for n in 2..=30u32 {
        let row = format!("roots-{n}");
        equal(&mut f, &format!("{row} uncolorable"), field(&r, &row, "uncolorable").as_bool(), Some(n % 6 == 0));
    }
    for (n, rays, triads) in [(6, 57, 22), (12, 183, 67), (18, 381, 136), (24, 651, 229), (30, 993, 346)] {
        let row = format!("roots-{n}");
        equal(&mut f, &format!("{row} rays"), field(&r, &row, "rays").as_u64(), Some(rays));
        equal(&mut f, &format!("{row} triads"), field(&r, &row, "triads").as_u64(), Some(triads));
    }
    no_mismatches(&mut f, &r);
    budget(&mut f, t, Duration::from_secs(600));
    f
}

fn c5(ctx: &mut Ctx) -> Failures {
    let mut f = Failures::new();
    let t = Instant::now();
    let r = ctx.report("table5").clone();
    let rows = [(1, 127, 51), (2, 49, 16), (3, 57, 22), (7, 145, 42), (11, 145, 30), (19, 145, 30), (43, 145, 30), (67, 145, 30), (163, 145, 30)];
    for (d, rays, triads) in rows {
        let row = format!("d={d}");
        equal(&mut f, &format!("{row} rays"), field(&r, &row, "rays").as_u64(), Some(rays));
        equal(&mut f, &format!("{row} triads"), field(&r, &row, "triads").as_u64(), Some(triads));
        equal(&mut f, &format!("{row} uncolorable"), field(&r, &row, "uncolorable").as_bool(), Some([1, 2, 3, 7].contains(&d)));
    }
    no_mismatches(&mut f, &r);
    budget(&mut f, t, Duration::from_secs(600));
    f
}

fn c6(_: &mut Ctx) -> Failures {
    let mut f = Failures::new();
    let raw = pool("golden-raw");
    equal(&mut f, "raw rays", raw.len(), 49);
    expect(&mut f, is_colorable(raw.graph()), || "raw pool is uncolorable".into());
    let done = recipe("golden", false).and_then(|r| r.build()).expect("golden builds").pool;
    equal(&mut f, "completed rays", done.len(), 205);
    equal(&mut f, "completed triads", done.triads().len(), 166);
    expect(&mut f, !is_colorable(done.graph()), || "completed pool is colorable".into());
    f
}

fn c7(ctx: &mut Ctx) -> Failures {
    let mut f = Failures::new();
    let r = ctx.report("isomorphism").clone();
    equal(&mut f, "peres~sqrt-2 isomorphic", field(&r, "peres-33~sqrt-2-33", "isomorphic").as_bool(), Some(true));
    equal(&mut f, "peres~sqrt-2 triad preserving", field(&r, "peres-33~sqrt-2-33", "triad_preserving").as_bool(), Some(true));
    for pair in ["ck-33~eisenstein-33", "ck-33~peres-33", "eisenstein-33~peres-33"] {
        equal(&mut f, &format!("{pair} isomorphic"), field(&r, pair, "isomorphic").as_bool(), Some(false));
    }
    let distinct: std::collections::BTreeSet<String> =
        ["ck-33", "eisenstein-33", "peres-33"].iter().map(|row| field(&r, row, "degrees").to_string()).collect();
    equal(&mut f, "distinct degree sequences", distinct.len(), 3);
    no_mismatches(&mut f, &r);
    f
}

fn c8(ctx: &mut Ctx) -> Failures {
    let mut f = Failures::new();
    let t = Instant::now();
    let r = ctx.report("csw").clone();
    equal(&mut f, "ck-31 alpha", field(&r, "ck-31", "alpha").as_u64(), Some(11));
    within(&mut f, "ck-31 theta", num(field(&r, "ck-31", "theta")), 11.71, 0.02);
    equal(&mut f, "ck-31 alpha*", field(&r, "ck-31", "alpha_star_exact").as_str(), Some("12"));
    equal(&mut f, "H7 pool alpha", field(&r, "pool:heegner-7", "alpha").as_u64(), Some(50));
    within(&mut f, "H7 pool theta", num(field(&r, "pool:heegner-7", "theta")), 55.89, 0.1);
    equal(&mut f, "H7 pool alpha*", field(&r, "pool:heegner-7", "alpha_star_exact").as_str(), Some("66"));
    let csw_rows: Vec<_> = r.rows.iter().filter(|x| !x.name.starts_with("spectral:")).collect();
    equal(&mut f, "CSW rows", csw_rows.len(), 10);
    for row in csw_rows {
        equal(&mut f, &format!("{} sandwich", row.name), row.get("sandwich").and_then(Value::as_bool), Some(true));
    }
    budget(&mut f, t, Duration::from_secs(300));
    f
}

fn c9(ctx: &mut Ctx) -> Failures {
    let mut f = Failures::new();
    let r = ctx.report("csw").clone();
    let h = "spectral:heegner-7";
    within(&mut f, "lambda_max", num(field(&r, h, "lambda_max")), 8.25, 0.01);
    within(&mut f, "lambda_min", num(field(&r, h, "lambda_min")), -4.50, 0.01);
    within(&mut f, "Hoffman", num(field(&r, h, "hoffman")), 51.2, 0.1);
    for (p, tight) in [("heegner-7", true), ("eisenstein", true), ("integer", true), ("peres", false), ("sqrt-2", false)] {
        let row = format!("spectral:{p}");
        equal(&mut f, &format!("{p} spectrally tight"), field(&r, &row, "spectrally_tight").as_bool(), Some(tight));
    }
    f
}

fn c10(ctx: &mut Ctx) -> Failures {
    let mut f = Failures::new();
    let t = Instant::now();
    let r = ctx.report("bpqs").clone();
    for (row, a, b) in [("eisenstein-33", 5, 9), ("peres-33", 7, 9), ("sqrt-2-33", 7, 9)] {
        equal(&mut f, &format!("{row} |S_A|x|S_B|"), (field(&r, row, "s_a").as_u64(), field(&r, row, "s_b").as_u64()), (Some(a), Some(b)));
        equal(&mut f, &format!("{row} exact"), field(&r, row, "exact").as_bool(), Some(true));
    }
    for (row, cap) in [("ck-31", 72), ("heegner7-43", 108), ("golden-52", 156)] {
        let p = field(&r, row, "product").as_u64().unwrap_or(u64::MAX);
        expect(&mut f, p <= cap, || format!("{row} product {p} > {cap}"));
    }
    budget(&mut f, t, Duration::from_secs(30 * 60));
    f
}

fn c11(ctx: &mut Ctx) -> Failures {
    let mut f = Failures::new();
    let r = ctx.report("critical").clone();
    equal(&mut f, "ck-31 essential/bases", (field(&r, "ck-31", "essential").as_u64(), field(&r, "ck-31", "bases").as_u64()), (Some(17), Some(17)));
    equal(&mut f, "ck-31 kappa", field(&r, "ck-31", "kappa").as_u64(), Some(1));
    let h = "pool:heegner-7";
    equal(&mut f, "H7 pool essential", field(&r, h, "essential").as_u64(), Some(0));
    equal(&mut f, "H7 pool kappa", field(&r, h, "kappa").as_u64(), Some(2));
    equal(&mut f, "H7 pool critical pairs", field(&r, h, "critical_subsets").as_u64(), Some(24));
    no_mismatches(&mut f, &r);
    f
}

fn c12(ctx: &mut Ctx) -> Failures {
    let mut f = Failures::new();
    let r = ctx.report("merges").clone();
    for (row, m) in [("ck-31", 394), ("peres-33", 456), ("eisenstein-33", 450), ("sqrt-2-33", 456), ("heegner7-43", 796), ("golden-52", 1204)] {
        equal(&mut f, &format!("{row} merges"), field(&r, row, "merges").as_u64(), Some(m));
        equal(&mut f, &format!("{row} saturated"), field(&r, row, "saturated").as_bool(), Some(true));
    }
    f
}

fn c13(ctx: &mut Ctx) -> Failures {
    let mut f = Failures::new();
    let r = ctx.report("rigidity").clone();
    for (row, k) in [("ck-31", 39), ("eisenstein-33", 41), ("peres-33", 42), ("sqrt-2-33", 42), ("heegner7-43", 51), ("golden-52", 60)] {
        equal(&mut f, &format!("{row} nullity"), field(&r, row, "nullity").as_u64(), Some(k));
        equal(&mut f, &format!("{row} Jacobian vs finite differences"), field(&r, row, "finite_difference_ok").as_bool(), Some(true));
    }
    f
}

fn c14(_: &mut Ctx) -> Failures {
    let mut f = Failures::new();
    let t = Instant::now();
    let p = pool("integer");
    let l = match mus_landscape(&p, 5000, 0) {
        Ok(l) => l,
        Err(e) => return vec![e.to_string()],
    };
    equal(&mut f, "minimum size", l.min_size, 31);
    equal(&mut f, "distinct minimum sets", l.min_sets.len(), 6);
    equal(&mut f, "union", l.union.len(), 37);
    equal(&mut f, "core", l.core.len(), 13);
    let norm = |s: &str| s.parse::<f64>().unwrap_or(f64::NAN);
    for s in &l.strata {
        let in_core = s.membership.get(&l.min_sets.len()).copied().unwrap_or(0);
        if in_core > 0 {
            expect(&mut f, norm(&s.norm_sq) <= 3.0, || format!("core ray with |v|^2 = {}", s.norm_sq));
        }
        if s.norm_sq == "9" {
            equal(&mut f, "sets containing |v|^2 = 9 rays", s.membership.keys().copied().max(), Some(0));
        }
    }
    budget(&mut f, t, Duration::from_secs(600));
    f
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn random_element(rng: &mut ChaCha8Rng, ring: &Ring) -> Exact {
    let coeffs = (0..ring.degree()).map(|_| q(rng.random_range(-9..=9), rng.random_range(1..=6))).collect();
    Exact::from_coeffs(ring, coeffs).expect("degree matches")
}

fn ring_laws(f: &mut Failures) {
    let rings = [
        Ring::rational(),
        Ring::quadratic(2, Generator::Sqrt).unwrap(),
        Ring::quadratic(5, Generator::Half).unwrap(),
        Ring::quadratic(-1, Generator::Sqrt).unwrap(),
        Ring::quadratic(-2, Generator::Sqrt).unwrap(),
        Ring::quadratic(-7, Generator::Half).unwrap(),
        Ring::cyclotomic(6).unwrap(),
        Ring::cyclotomic(24).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for ring in &rings {
        let mut bad = 0;
        for _ in 0..1000 {
            let (a, b, c) = (random_element(&mut rng, ring), random_element(&mut rng, ring), random_element(&mut rng, ring));
            let add = |x: &Exact, y: &Exact| x.checked_add(y).unwrap();
            let mul = |x: &Exact, y: &Exact| x.checked_mul(y).unwrap();
            let ok = mul(&mul(&a, &b), &c) == mul(&a, &mul(&b, &c))
                && add(&add(&a, &b), &c) == add(&a, &add(&b, &c))
                && mul(&a, &b) == mul(&b, &a)
                && mul(&a, &add(&b, &c)) == add(&mul(&a, &b), &mul(&a, &c))
                && a.checked_sub(&a).unwrap().is_zero()
                && add(&a, &-&a).is_zero()
                && (a.is_zero() || mul(&a, &a.invert().unwrap()).is_one())
                && mul(&a, &b).conjugate() == mul(&a.conjugate(), &b.conjugate());
            bad += usize::from(!ok);
        }
        expect(f, bad == 0, || format!("ring laws fail in {bad} of 1000 cases over {:?}", ring.kind()));
    }
}

fn masks(g: &OrthoGraph) -> (Vec<u32>, Vec<u32>) {
    let t = g.triads().iter().map(|t| t.iter().fold(0u32, |m, &v| m | 1 << v)).collect();
    let e = g.edges().iter().map(|&[a, b]| 1u32 << a | 1 << b).collect();
    (t, e)
}

fn valid(m: u32, triads: &[u32], edges: &[u32]) -> bool {
    triads.iter().all(|&t| (m & t).count_ones() == 1) && edges.iter().all(|&e| (m & e).count_ones() < 2)
}

fn brute_colorable(g: &OrthoGraph) -> bool {
    let (t, e) = masks(g);
    (0..1u32 << g.n()).any(|m| valid(m, &t, &e))
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> OrthoGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push([a, b]);
            }
        }
    }
    OrthoGraph::from_edges(n, edges).expect("simple graph")
}

fn sat_vs_brute(f: &mut Failures) {
    let pools: Vec<ExactPool> = ["integer", "peres", "eisenstein", "heegner-7", "golden"].iter().map(|n| pool(n)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let check = |g: &OrthoGraph, what: &str, f: &mut Failures| {
        let brute = brute_colorable(g);
        let mut s = SelectorSolver::new(g, SolverOptions::default());
        match s.check(&vec![true; g.n()]) {
            Ok(model) => {
                let m = model.iter().enumerate().fold(0u32, |m, (i, &b)| m | u32::from(b) << i);
                let (t, e) = masks(g);
                expect(f, brute && valid(m, &t, &e), || format!("{what}: SAT model invalid or brute force says uncolorable"));
            }
            Err(_) => expect(f, !brute, || format!("{what}: SAT says uncolorable, brute force found a colouring")),
        }
    };
    for k in 0..500 {
        let p = &pools[k % pools.len()];
        let n = rng.random_range(3..=20);
        // bias towards rays that sit in triads so the formulas are not trivial
        let mut base: Vec<usize> = p.triads().iter().flatten().copied().collect();
        base.sort_unstable();
        base.dedup();
        let mut idx = Vec::new();
        while idx.len() < n.min(base.len()) {
            let v = base[rng.random_range(0..base.len())];
            if !idx.contains(&v) {
                idx.push(v);
            }
        }
        idx.sort_unstable();
        check(&p.graph().induced(&idx), &format!("sub-pool {k}"), f);
    }
    let mut uncolorable = 0;
    for k in 0..500 {
        let n = rng.random_range(4..=16);
        let p = rng.random_range(0.25..0.6);
        let g = random_graph(&mut rng, n, p);
        uncolorable += usize::from(!brute_colorable(&g));
        check(&g, &format!("random graph {k}"), f);
    }
    expect(f, uncolorable > 20, || format!("only {uncolorable} uncolorable random graphs; the comparison is too weak"));
}

/// Smallest uncolourable vertex subset by enumerating subsets in order of size.
fn exhaustive_minimum(g: &OrthoGraph) -> Option<usize> {
    let n = g.n();
    let mut by_size: Vec<u32> = (0..1u32 << n).collect();
    by_size.sort_by_key(|s| s.count_ones());
    by_size.into_iter().find_map(|s| {
        let idx: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        (!brute_colorable(&g.induced(&idx))).then_some(idx.len())
    })
}

fn certify_vs_exhaustive(f: &mut Failures) {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut tested = 0;
    while tested < 40 {
        let n = rng.random_range(5..=14);
        let p = rng.random_range(0.3..0.6);
        let g = random_graph(&mut rng, n, p);
        let Some(want) = exhaustive_minimum(&g) else { continue };
        tested += 1;
        match certify_minimum(&g, CertifyBudget::default()) {
            Ok(c) => {
                equal(f, &format!("certified minimum on {n} vertices"), c.min_size, want);
                equal(f, "library brute force", brute_force_minimum(&g).map(|m| m.size), Some(want));
            }
            Err(e) => f.push(format!("certify on {n} vertices: {e}")),
        }
    }
}

fn canonicalization(f: &mut Failures) {
    let rings = [Ring::rational(), Ring::quadratic(2, Generator::Sqrt).unwrap(), Ring::quadratic(-7, Generator::Half).unwrap(), Ring::cyclotomic(6).unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for ring in &rings {
        for _ in 0..200 {
            let v = [0, 1, 2].map(|_| if rng.random_bool(0.3) { Exact::zero(ring) } else { random_element(&mut rng, ring) });
            let Ok(r) = ExactRay::canonicalize(v.clone()) else { continue };
            let again = ExactRay::canonicalize(r.coords().clone());
            expect(f, again.is_ok_and(|x| x == r), || format!("canonicalization not idempotent over {:?}", ring.kind()));
            let c = random_element(&mut rng, ring);
            if !c.is_zero() {
                let scaled = ExactRay::canonicalize(v.map(|x| x.checked_mul(&c).unwrap()));
                expect(f, scaled.is_ok_and(|x| x == r), || format!("canonical form changes under scaling over {:?}", ring.kind()));
            }
        }
    }
}

fn completion_idempotent(f: &mut Failures) {
    for name in ["integer", "peres", "golden-raw", "eisenstein", "sqrt3"] {
        let raw = pool(name);
        let once = complete_pool(&raw, DEFAULT_MAX_ITERATIONS, DEFAULT_MAX_HEIGHT).expect("completes");
        let twice = complete_pool(&once.pool, DEFAULT_MAX_ITERATIONS, DEFAULT_MAX_HEIGHT).expect("completes");
        expect(f, twice.pool.rays() == once.pool.rays() && twice.iterations == 0, || format!("completion of {name} is not idempotent"));
    }
}

fn c15(_: &mut Ctx) -> Failures {
    let mut f = Failures::new();
    ring_laws(&mut f);
    sat_vs_brute(&mut f);
    certify_vs_exhaustive(&mut f);
    canonicalization(&mut f);
    completion_idempotent(&mut f);
    f
}

type Criterion = (u32, &'static str, fn(&mut Ctx) -> Failures);

const CRITERIA: [Criterion; 15] = [
    (1, "real alphabets: counts, verdicts, certified minima", c1),
    (2, "integer pool certified minimum 31", c2),
    (3, "island minima 33/33/43 and golden 52", c3),
    (4, "roots of unity: uncolorable iff 6 | n", c4),
    (5, "class-number-one fields: uncolorable iff d in {1,2,3,7}", c5),
    (6, "golden completion: 49 colorable, 205 uncolorable", c6),
    (7, "isomorphism of the 33-ray sets", c7),
    (8, "CSW invariants and sandwich", c8),
    (9, "spectral bounds", c9),
    (10, "bipartite input counts", c10),
    (11, "critical bases", c11),
    (12, "merge saturation counts", c12),
    (13, "rigidity nullities", c13),
    (14, "minimal-set landscape of the integer pool", c14),
    (15, "property suites", c15),
];

fn main() {
    let env = |k: &str| std::env::var(k).is_ok_and(|v| v == "1");
    let mut ctx = Ctx { slow: env("KS_ATLAS_SLOW"), reports: BTreeMap::new() };
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, what, run) in CRITERIA {
        if !filter.is_empty() && !filter.contains(&n) {
            continue;
        }
        let t = Instant::now();
        let fails = run(&mut ctx);
        let secs = t.elapsed().as_secs_f64();
        if fails.is_empty() {
            println!("PASS {n:>2} {what} ({secs:.1} s)");
        } else {
            failed += 1;
            println!("FAIL {n:>2} {what} ({secs:.1} s): {}", fails.join("; "));
        }
    }
    println!("{failed} criteria failed");
    if failed > 0 && env("KS_ATLAS_STRICT") {
        std::process::exit(1);
    }
}
