use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ks_atlas::bks::{bks_search_min_product, BksMode};
use ks_atlas::csw::{csw_report, ThetaOptions};
use ks_atlas::hypergraph::{profile, spectrum_and_hoffman};
use ks_atlas::minimize::{certify_minimum, greedy_minimize, mus_extract, CertifyBudget};
use ks_atlas::satcore::{encode_ks, is_colorable};
use ks_atlas::structure::{critical_bases, graph_isomorphic, merge_saturation, rigidity_nullspace};
use ks_atlas::survey::{expected_values, registry, run_survey, SurveyOptions, EXPECTED_JSON, PRESETS};
use ks_atlas::ExactPool;

#[derive(Parser)]
#[command(name = "ks-atlas", version, about = "Exact ray pools in dimension 3 and Kochen-Specker colorability")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Greedy,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a ray pool from a named alphabet or a spec such as `sqrt(2):g`.
    Generate {
        #[arg(long)]
        alphabet: String,
        /// Close the pool under cross products.
        #[arg(long)]
        complete: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Counts, degree histogram, spectrum and colorability of a pool.
    Profile { pool: PathBuf },
    /// Export the KS formula with per-ray selectors as DIMACS, plus a selector map.
    Encode {
        pool: PathBuf,
        #[arg(long)]
        dimacs: PathBuf,
        /// Selector map path; defaults to the DIMACS path with `.selectors.json`.
        #[arg(long)]
        selectors: Option<PathBuf>,
    },
    /// Greedy deletion minimization.
    Minimize {
        pool: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Certify the smallest uncolorable subset of a pool.
    Certify {
        pool: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        budget_iters: usize,
        /// Cap on hitting-set solver conflicts.
        #[arg(long)]
        budget_conflicts: Option<u64>,
    },
    /// Minimum bipartite input product over the pool's bases.
    Bks {
        pool: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Independence number, Lovász theta and fractional packing.
    Csw {
        pool: PathBuf,
        /// Run on one minimal uncolorable subset instead of the whole pool.
        #[arg(long)]
        minimized: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Graph isomorphism between two pools.
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// Require the bijection to map triads to triads.
        #[arg(long)]
        triads: bool,
    },
    /// Jacobian nullity of the orthogonality constraints.
    Rigidity {
        pool: PathBuf,
        /// JSON array of ray indices; the whole pool when absent.
        #[arg(long)]
        set: Option<PathBuf>,
    },
    /// Test every non-orthogonal pair merge for uncolorability.
    MergeSaturation {
        pool: PathBuf,
        #[arg(long)]
        set: Option<PathBuf>,
    },
    /// Essential bases and the critical number.
    CriticalBases {
        pool: PathBuf,
        #[arg(long)]
        set: Option<PathBuf>,
    },
    /// Reproduce a table and compare it with the embedded expected values.
    Survey {
        preset: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON report path; a CSV with the same stem is written next to it.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        slow: bool,
    },
    /// Print the embedded reference values as JSON, or as CSV with `--csv`.
    Expected {
        #[arg(long)]
        csv: bool,
    },
}

fn load(path: &Path) -> Result<ExactPool> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(ExactPool::from_json(&text).with_context(|| format!("parsing {}", path.display()))?)
}

fn load_set(pool: ExactPool, set: Option<&PathBuf>) -> Result<ExactPool> {
    let Some(p) = set else { return Ok(pool) };
    let idx: Vec<usize> = serde_json::from_str(&fs::read_to_string(p)?).context("set file must be a JSON array of indices")?;
    Ok(pool.subset(&idx)?)
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn emit(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn print(v: &impl serde::Serialize) -> Result<()> {
    emit(&(serde_json::to_string_pretty(v)? + "\n"))
}

fn run(cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Generate { alphabet, complete, out } => {
            let built = registry::recipe(&alphabet, complete)?.build()?;
            fs::write(&out, built.pool.to_json())?;
            eprintln!(
                "{} rays, {} pairs, {} triads{}",
                built.pool.len(),
                built.pool.edges().len(),
                built.pool.triads().len(),
                if complete { format!(" after {} completion rounds", built.completion_rounds) } else { String::new() }
            );
        }
        Cmd::Profile { pool } => {
            let p = load(&pool)?;
            let g = p.graph();
            print(&json!({
                "ring": p.ring().kind(),
                "profile": profile(g),
                "spectrum": spectrum_and_hoffman(g),
                "colorable": is_colorable(g),
            }))?;
        }
        Cmd::Encode { pool, dimacs, selectors } => {
            let p = load(&pool)?;
            let cnf = encode_ks(p.graph(), true);
            fs::write(&dimacs, cnf.to_dimacs())?;
            let map: Vec<Value> = cnf
                .selector_of_ray
                .iter()
                .flatten()
                .enumerate()
                .map(|(r, v)| json!({"ray": r, "coords": p.rays()[r].to_string(), "selector": v + 1}))
                .collect();
            let side = selectors.unwrap_or_else(|| dimacs.with_extension("selectors.json"));
            let doc = json!({"ray_vars": format!("1..={}", p.len()), "selectors": map});
            fs::write(&side, serde_json::to_string_pretty(&doc)? + "\n")?;
        }
        Cmd::Minimize { pool, trials, seed } => {
            let p = load(&pool)?;
            let mut sets = greedy_minimize(p.graph(), trials, seed)?;
            sets.sort_by(|a, b| a.size.cmp(&b.size).then_with(|| a.ray_indices.cmp(&b.ray_indices)));
            sets.dedup();
            print(&json!({"trials": trials, "seed": seed, "best": sets.first().map(|s| s.size), "sets": sets}))?;
        }
        Cmd::Certify { pool, budget_iters, budget_conflicts } => {
            let p = load(&pool)?;
            let budget = CertifyBudget { max_iterations: budget_iters, max_conflicts: budget_conflicts };
            print(&certify_minimum(p.graph(), budget)?)?;
        }
        Cmd::Bks { pool, mode, trials, seed } => {
            let p = load(&pool)?;
            let mode = match mode {
                Mode::Exhaustive => BksMode::Exhaustive,
                Mode::Greedy => BksMode::Greedy,
            };
            print(&bks_search_min_product(p.graph(), mode, trials, seed)?)?;
        }
        Cmd::Csw { pool, minimized, seed } => {
            let mut p = load(&pool)?;
            if minimized {
                let m = mus_extract(p.graph(), seed)?;
                p = p.subset(&m.ray_indices)?;
            }
            print(&csw_report(p.graph(), ThetaOptions::default())?)?;
        }
        Cmd::Iso { a, b, triads } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let w = graph_isomorphic(a.graph(), b.graph(), triads);
            print(&json!({"isomorphic": w.is_some(), "witness": w}))?;
        }
        Cmd::Rigidity { pool, set } => {
            let p = load_set(load(&pool)?, set.as_ref())?;
            print(&rigidity_nullspace(p.graph(), p.rays())?)?;
        }
        Cmd::MergeSaturation { pool, set } => {
            let p = load_set(load(&pool)?, set.as_ref())?;
            print(&merge_saturation(p.graph())?)?;
        }
        Cmd::CriticalBases { pool, set } => {
            let p = load_set(load(&pool)?, set.as_ref())?;
            print(&critical_bases(p.graph())?)?;
        }
        Cmd::Survey { preset, seed, out, slow } => {
            if !PRESETS.contains(&preset.as_str()) {
                bail!("unknown preset `{preset}`; known: {}", PRESETS.join(", "));
            }
            let report = run_survey(&preset, SurveyOptions { seed, slow })?;
            match out {
                Some(path) => {
                    fs::write(&path, report.to_json())?;
                    fs::write(path.with_extension("csv"), report.to_csv())?;
                }
                None => emit(&report.to_json())?,
            }
            for m in &report.mismatches {
                eprintln!("mismatch: {} {}: expected {}, got {}", m.row, m.field, serde_json::to_string(&m.expected)?, m.actual);
            }
            eprintln!("{}: {} rows, {} mismatches", preset, report.rows.len(), report.mismatches.len());
            return Ok(report.passed());
        }
        Cmd::Expected { csv } => {
            if csv {
                emit(&expected_values()?.to_csv())?;
            } else {
                emit(EXPECTED_JSON)?;
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse().cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
