use rayon::prelude::*;
use serde_json::Value;

use super::islands::{island_pool, island_set, Island};
use super::registry::{recipe, Built};
use super::{
    arithmetic_invariants, classify_cancellations, compare, expected_values, trig_sweep, AngleVerdict, Bound, Row,
    SurveyError, SurveyReport, REPORT_FORMAT, REPORT_VERSION,
};
use crate::bks::{bks_search_min_product, BksMode};
use crate::csw::{csw_report, ThetaOptions};
use crate::hypergraph::{profile, spectrum_and_hoffman};
use crate::minimize::{certify_minimum, greedy_minimize, CertifyBudget, MinimizeError};
use crate::satcore::is_colorable;
use crate::structure::{critical_bases, graph_isomorphic, merge_saturation, rigidity_nullspace};
use crate::{ExactPool, OrthoGraph};

/// Greedy deletion trials behind every `bound: upper` minimum.
pub const GREEDY_TRIALS: usize = 200;
/// Greedy trials for B-KS on islands with too many bases for exhaustive search.
pub const BKS_TRIALS: usize = 500;
/// Hitting-set iterations before a minimum falls back to a greedy upper bound.
/// Hitting-set conflicts allowed per certified minimum; past this the row
/// falls back to the greedy bound.
pub const CERTIFY_CONFLICTS: u64 = 250_000;
pub const CERTIFY_CONFLICTS_SLOW: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, Default)]
pub struct SurveyOptions {
    pub seed: u64,
    /// Also run the golden-pool minimum certification.
    pub slow: bool,
}

pub const PRESETS: &[&str] = &[
    "table1",
    "table2",
    "table3",
    "table4",
    "table5",
    "table6",
    "mixed",
    "heegner",
    "csw",
    "bpqs",
    "critical",
    "rigidity",
    "merges",
    "isomorphism",
    "cancellations",
    "arithmetic",
    "trig",
];

fn counts(row: &mut Row, pool: &ExactPool, pairs: bool) {
    row.set("rays", pool.len());
    if pairs {
        row.set("pairs", pool.edges().len());
    }
    row.set("triads", pool.triads().len());
}

/// Sets `uncolorable` and returns it.
fn ks(row: &mut Row, g: &OrthoGraph) -> bool {
    let u = !is_colorable(g);
    row.set("uncolorable", u);
    u
}

fn certified_min(row: &mut Row, g: &OrthoGraph, uncolorable: bool, o: SurveyOptions) -> Result<(), SurveyError> {
    if !uncolorable {
        row.set("min", Value::Null);
        return Ok(());
    }
    let cap = if o.slow { CERTIFY_CONFLICTS_SLOW } else { CERTIFY_CONFLICTS };
    match certify_minimum(g, CertifyBudget { max_conflicts: Some(cap), ..CertifyBudget::default() }) {
        Ok(c) => {
            row.set("min", c.min_size);
            row.bound = Some(Bound::Exact);
            Ok(())
        }
        Err(MinimizeError::BudgetExceeded { lower_bound, .. }) => {
            row.set("min_lower", lower_bound);
            greedy_min(row, g, uncolorable, o.seed)
        }
        Err(e) => Err(e.into()),
    }
}

fn greedy_min(row: &mut Row, g: &OrthoGraph, uncolorable: bool, seed: u64) -> Result<(), SurveyError> {
    if uncolorable {
        let best = greedy_minimize(g, GREEDY_TRIALS, seed)?.into_iter().map(|m| m.size).min().unwrap_or(0);
        row.set("min", best);
        row.bound = Some(Bound::Upper);
    } else {
        row.set("min", Value::Null);
    }
    Ok(())
}

/// Some nonzero symbol is twice another one.
fn has_two_to_one(b: &Built) -> bool {
    let Some(a) = b.raw.alphabet() else { return false };
    let two = crate::Rational::from_integer(2.into());
    let s = a.symbols();
    s.iter().filter(|x| !x.is_zero()).any(|x| s.contains(&x.scale(&two)))
}

fn degree_string(g: &OrthoGraph) -> String {
    profile(g).degree_histogram.iter().map(|(d, c)| format!("{d}:{c}")).collect::<Vec<_>>().join(",")
}

/// Runs `f` on every item in parallel, turning errors into failed rows.
fn rows<T: Sync>(items: &[T], name: impl Fn(&T) -> String + Sync, f: impl Fn(&T, &mut Row) -> Result<(), SurveyError> + Sync) -> Vec<Row> {
    items
        .par_iter()
        .map(|it| {
            let mut r = Row::new(name(it));
            match f(it, &mut r) {
                Ok(()) => r,
                Err(e) => Row::failed(name(it), e),
            }
        })
        .collect()
}

fn build(name: &str) -> Result<Built, SurveyError> {
    recipe(name, false)?.build()
}

fn table1(o: SurveyOptions) -> Vec<Row> {
    let names = ["units", "peres", "integer", "sqrt3", "sqrt5", "golden-raw", "half"];
    rows(&names, |n| n.to_string(), |n, r| {
        let b = build(n)?;
        counts(r, &b.pool, true);
        let u = ks(r, b.pool.graph());
        certified_min(r, b.pool.graph(), u, o)
    })
}

fn table2(o: SurveyOptions) -> Vec<Row> {
    let names = ["integer-sqrt2", "integer-golden", "integer-3", "sqrt2-golden", "golden-golden2"];
    rows(&names, |n| n.to_string(), |n, r| {
        let b = build(n)?;
        counts(r, &b.pool, false);
        r.set("has_2to1", has_two_to_one(&b));
        let u = ks(r, b.pool.graph());
        greedy_min(r, b.pool.graph(), u, o.seed)
    })
}

fn table3(o: SurveyOptions) -> Vec<Row> {
    let ns: Vec<u32> = (2..=30).collect();
    rows(&ns, |n| format!("roots-{n}"), |&n, r| {
        let b = build(&format!("roots-{n}"))?;
        counts(r, &b.pool, true);
        r.set("six_divides", n % 6 == 0);
        let u = ks(r, b.pool.graph());
        if u && n <= 18 {
            greedy_min(r, b.pool.graph(), u, o.seed)?;
        }
        Ok(())
    })
}

fn table4(o: SurveyOptions) -> Vec<Row> {
    let names = ["gaussian", "sqrt-2", "sqrt-3", "sqrt-5", "sqrt-7"];
    rows(&names, |n| n.to_string(), |n, r| {
        let b = build(n)?;
        counts(r, &b.pool, true);
        let u = ks(r, b.pool.graph());
        certified_min(r, b.pool.graph(), u, o)
    })
}

const HEEGNER: [(u32, &str); 9] = [
    (1, "gaussian-enriched"),
    (2, "sqrt-2"),
    (3, "heegner-3"),
    (7, "heegner-7"),
    (11, "heegner-11"),
    (19, "heegner-19"),
    (43, "heegner-43"),
    (67, "heegner-67"),
    (163, "heegner-163"),
];

fn table5(o: SurveyOptions) -> Vec<Row> {
    rows(&HEEGNER, |(d, _)| format!("d={d}"), |(_, n), r| {
        let b = build(n)?;
        let a = b.raw.alphabet().expect("generated pools keep their alphabet");
        let norm = a
            .symbols()
            .iter()
            .filter_map(|s| (s * &s.conjugate()).as_rational().cloned())
            .max()
            .expect("alphabet has units");
        r.set("gen_norm", norm.to_string());
        counts(r, &b.pool, false);
        let u = ks(r, b.pool.graph());
        certified_min(r, b.pool.graph(), u, o)
    })
}

fn table6(o: SurveyOptions) -> Vec<Row> {
    let names = ["integer-completed", "peres-completed", "sqrt3-completed", "sqrt5-completed", "golden"];
    rows(&names, |n| n.to_string(), |n, r| {
        let b = build(n)?;
        r.set("raw", b.raw.len());
        r.set("raw_uncolorable", !is_colorable(b.raw.graph()));
        counts(r, &b.pool, false);
        r.set("completion_rounds", b.completion_rounds);
        r.set("has_2to1", has_two_to_one(&b));
        let u = ks(r, b.pool.graph());
        greedy_min(r, b.pool.graph(), u, o.seed)
    })
}

fn mixed(o: SurveyOptions) -> Vec<Row> {
    let names = [
        "mixed-integer-sqrt2",
        "mixed-integer-sqrt3",
        "mixed-integer-sqrt5",
        "mixed-integer-golden",
        "mixed-sqrt2-sqrt3",
        "mixed-sqrt2-golden",
    ];
    rows(&names, |n| n.to_string(), |n, r| {
        let b = build(n)?;
        counts(r, &b.pool, false);
        let u = ks(r, b.pool.graph());
        greedy_min(r, b.pool.graph(), u, o.seed)
    })
}

fn heegner(o: SurveyOptions) -> Vec<Row> {
    let mut names = vec!["eisenstein", "sqrt-2", "heegner-7"];
    if o.slow {
        names.push("golden");
    }
    let mut out = rows(&names, |n| n.to_string(), |n, r| {
        let b = build(n)?;
        counts(r, &b.pool, false);
        let u = ks(r, b.pool.graph());
        certified_min(r, b.pool.graph(), u, o)
    });
    let mut r = Row::new("heegner7-43");
    match island_set(Island::Heegner7_43) {
        Ok(s) => {
            let g = s.set.graph();
            r.set("rays", g.n()).set("pairs", g.edges().len()).set("triads", g.triads().len());
            r.set("degrees", degree_string(g));
        }
        Err(e) => r = Row::failed("heegner7-43", e),
    }
    out.push(r);
    out
}

fn csw_fill(r: &mut Row, g: &OrthoGraph) -> Result<(), SurveyError> {
    let c = csw_report(g, ThetaOptions::default())?;
    let p = profile(g);
    r.set("n", c.n).set("bases", p.basis_count).set("auxiliary", p.auxiliary_count);
    r.set("alpha", c.alpha);
    r.set_f64("theta", c.theta.value);
    r.set_f64("alpha_star", c.alpha_star.value);
    r.set("alpha_star_exact", c.alpha_star.exact.clone().map_or(Value::Null, Value::String));
    r.set_f64("theta_over_alpha", c.theta_over_alpha);
    r.set("sandwich", c.sandwich);
    Ok(())
}

const MIN_ISLANDS: [Island; 5] =
    [Island::Ck31, Island::Eisenstein33, Island::Peres33, Island::SqrtMinus2_33, Island::Heegner7_43];
const SIX_ISLANDS: [Island; 6] =
    [Island::Ck31, Island::Eisenstein33, Island::Peres33, Island::SqrtMinus2_33, Island::Heegner7_43, Island::Golden52];

fn csw(_: SurveyOptions) -> Vec<Row> {
    let mut out = rows(&MIN_ISLANDS, |i| i.name().to_string(), |i, r| csw_fill(r, island_set(*i)?.set.graph()));
    let pools = ["integer", "eisenstein", "heegner-7", "peres", "sqrt-2"];
    out.extend(rows(&pools, |p| format!("pool:{p}"), |p, r| csw_fill(r, build(p)?.pool.graph())));
    out.extend(rows(&pools, |p| format!("spectral:{p}"), |p, r| {
        let b = build(p)?;
        let s = spectrum_and_hoffman(b.pool.graph());
        let (alpha, _) = crate::csw::independence_number(b.pool.graph());
        r.set("n", b.pool.len()).set("alpha", alpha);
        r.set_f64("lambda_max", s.lambda_max).set_f64("lambda_min", s.lambda_min).set_f64("hoffman", s.hoffman);
        r.set_f64("alpha_over_hoffman", alpha as f64 / s.hoffman);
        r.set("spectrally_tight", (alpha as f64) < s.hoffman);
        Ok(())
    }));
    out
}

fn bpqs(o: SurveyOptions) -> Vec<Row> {
    rows(&SIX_ISLANDS, |i| i.name().to_string(), |i, r| {
        let s = island_set(*i)?;
        let g = s.set.graph();
        let mode = if g.triads().len() <= crate::bks::EXHAUSTIVE_BASIS_LIMIT { BksMode::Exhaustive } else { BksMode::Greedy };
        let b = bks_search_min_product(g, mode, BKS_TRIALS, o.seed)?;
        r.set("rays", g.n()).set("bases", b.bases).set("s_a", b.s_a.len()).set("s_b", b.s_b.len());
        r.set("product", b.product).set("exact", b.exact);
        r.bound = Some(if b.exact { Bound::Exact } else { Bound::Upper });
        Ok(())
    })
}

fn critical_fill(r: &mut Row, g: &OrthoGraph) -> Result<(), SurveyError> {
    let c = critical_bases(g)?;
    r.set("rays", g.n()).set("bases", c.bases).set("essential", c.essential.len());
    r.set_f64("eta", c.eta);
    r.set("kappa", c.kappa.map_or(Value::Null, Value::from));
    match c.kappa {
        Some(k) if c.bases > 0 => r.set_f64("cf", k as f64 / c.bases as f64),
        _ => r.set("cf", Value::Null),
    };
    r.set("critical_subsets", c.critical_subsets.len()).set("subsets_tested", c.subsets_tested);
    Ok(())
}

fn critical(_: SurveyOptions) -> Vec<Row> {
    let mut out = rows(&MIN_ISLANDS, |i| i.name().to_string(), |i, r| critical_fill(r, island_set(*i)?.set.graph()));
    let pools = ["peres", "heegner-7"];
    out.extend(rows(&pools, |p| format!("pool:{p}"), |p, r| critical_fill(r, build(p)?.pool.graph())));
    out
}

fn rigidity(_: SurveyOptions) -> Vec<Row> {
    rows(&SIX_ISLANDS, |i| i.name().to_string(), |i, r| {
        let s = island_set(*i)?;
        let rep = rigidity_nullspace(s.set.graph(), s.set.rays())?;
        r.set("n", rep.n).set("pairs", rep.edges).set("nullity", rep.nullity).set("expected", rep.expected);
        r.set("status", serde_json::to_value(rep.status).expect("plain enum"));
        r.set("finite_difference_ok", rep.finite_difference_error < 1e-6);
        Ok(())
    })
}

fn merges(_: SurveyOptions) -> Vec<Row> {
    rows(&SIX_ISLANDS, |i| i.name().to_string(), |i, r| {
        let s = island_set(*i)?;
        let m = merge_saturation(s.set.graph())?;
        r.set("n", s.set.len()).set("pairs", s.set.edges().len());
        r.set("merges", m.total_merges).set("ks_preserving", m.ks_preserving);
        r.set("saturated", m.ks_preserving == m.total_merges);
        Ok(())
    })
}

fn isomorphism(_: SurveyOptions) -> Vec<Row> {
    let mut out = rows(&[Island::Ck33, Island::Eisenstein33, Island::Peres33, Island::SqrtMinus2_33], |i| i.name().to_string(), |i, r| {
        let g = island_set(*i)?.set;
        r.set("rays", g.len()).set("pairs", g.edges().len()).set("triads", g.triads().len());
        r.set("degrees", degree_string(g.graph()));
        let h = profile(g.graph()).degree_histogram;
        r.set("degree_min", h.keys().next().copied()).set("degree_max", h.keys().next_back().copied());
        Ok(())
    });
    let pairs = [
        (Island::Peres33, Island::SqrtMinus2_33),
        (Island::Ck33, Island::Eisenstein33),
        (Island::Ck33, Island::Peres33),
        (Island::Eisenstein33, Island::Peres33),
    ];
    out.extend(rows(&pairs, |(a, b)| format!("{}~{}", a.name(), b.name()), |(a, b), r| {
        let (ga, gb) = (island_set(*a)?.set, island_set(*b)?.set);
        let w = graph_isomorphic(ga.graph(), gb.graph(), true);
        r.set("isomorphic", w.is_some());
        r.set("triad_preserving", w.is_some_and(|w| w.triad_preserving));
        Ok(())
    }));
    out
}

fn cancellations(_: SurveyOptions) -> Vec<Row> {
    let all = classify_cancellations();
    let mut summary = Row::new("summary");
    summary.set("classes", all.len()).set("ks_classes", all.iter().filter(|p| p.ks).count());
    all.into_iter()
        .map(|p| {
            let mut r = Row::new(p.pattern.clone());
            r.set("constraint", p.constraint).set("tag", p.tag).set("ks", p.ks);
            r.set("members", p.members.join("; ")).set("solutions", p.solutions.join("; "));
            r
        })
        .chain([summary])
        .collect()
}

fn arithmetic(_: SurveyOptions) -> Vec<Row> {
    let mut out = rows(&SIX_ISLANDS, |i| i.name().to_string(), |i, r| {
        let s = island_set(*i)?;
        let pool = island_pool(*i)?;
        let inv = arithmetic_invariants(&pool, &s.indices)?;
        r.set("n_s", inv.n_s).set("norms", inv.norms.join(","));
        r.set("galois_norm", inv.galois_norm.map_or(Value::Null, Value::String));
        r.set("galois_trace", inv.galois_trace.map_or(Value::Null, Value::String));
        Ok(())
    });
    let mut r = Row::new("axes");
    let axes = build("units").and_then(|b| {
        let idx: Vec<usize> =
            (0..b.pool.len()).filter(|&i| b.pool.rays()[i].coords().iter().filter(|c| c.is_zero()).count() == 2).collect();
        arithmetic_invariants(&b.pool, &idx)
    });
    match axes {
        Ok(inv) => {
            r.set("n_s", inv.n_s);
        }
        Err(e) => r = Row::failed("axes", e),
    }
    out.push(r);
    out
}

fn trig(_: SurveyOptions) -> Vec<Row> {
    let grid = super::trig::default_grid();
    let points = match trig_sweep(&grid) {
        Ok(p) => p,
        Err(e) => return vec![Row::failed("sweep", e)],
    };
    let mut out: Vec<Row> = points
        .iter()
        .filter(|p| p.exact || p.verdict == AngleVerdict::Uncolorable)
        .map(|p| {
            let mut r = Row::new(p.label.clone());
            r.set_f64("degrees", p.degrees);
            r.set("exact", p.exact).set("rays", p.rays).set("triads", p.triads).set("completed", p.completed);
            r.set("uncolorable", p.verdict == AngleVerdict::Uncolorable);
            r
        })
        .collect();
    let mut s = Row::new("summary");
    s.set("angles", points.len());
    s.set("uncolorable", points.iter().filter(|p| p.verdict == AngleVerdict::Uncolorable).count());
    s.set("float_uncolorable", points.iter().filter(|p| !p.exact && p.verdict == AngleVerdict::Uncolorable).count());
    out.push(s);
    out
}

/// Runs one preset and compares it with the embedded expected values (plus
/// the `<preset>+slow` table when `slow` is set).
pub fn run_survey(preset: &str, opts: SurveyOptions) -> Result<SurveyReport, SurveyError> {
    let rows = match preset {
        "table1" => table1(opts),
        "table2" => table2(opts),
        "table3" => table3(opts),
        "table4" => table4(opts),
        "table5" => table5(opts),
        "table6" => table6(opts),
        "mixed" => mixed(opts),
        "heegner" => heegner(opts),
        "csw" => csw(opts),
        "bpqs" => bpqs(opts),
        "critical" => critical(opts),
        "rigidity" => rigidity(opts),
        "merges" => merges(opts),
        "isomorphism" => isomorphism(opts),
        "cancellations" => cancellations(opts),
        "arithmetic" => arithmetic(opts),
        "trig" => trig(opts),
        other => return Err(SurveyError::UnknownPreset(other.to_string())),
    };
    let exp = expected_values()?;
    let mut mismatches = Vec::new();
    if let Some(t) = exp.tables.get(preset) {
        mismatches.extend(compare(&rows, t));
    }
    if opts.slow {
        if let Some(t) = exp.tables.get(&format!("{preset}+slow")) {
            mismatches.extend(compare(&rows, t));
        }
    }
    Ok(SurveyReport {
        format: REPORT_FORMAT.to_string(),
        version: REPORT_VERSION,
        expected_version: exp.version.clone(),
        preset: preset.to_string(),
        seed: opts.seed,
        slow: opts.slow,
        rows,
        mismatches,
    })
}

