//! Table reproduction: named alphabets, presets compared against embedded
//! expected values, cancellation patterns, arithmetic invariants and the
//! trigonometric sweep.

mod cancel;
mod expected;
mod invariants;
pub mod islands;
mod presets;
pub mod registry;
mod trig;

pub use cancel::{classify_cancellations, CancellationPattern, Term};
pub use expected::{compare, expected_values, Expect, ExpectedRow, ExpectedTable, Expected, EXPECTED_JSON};
pub use invariants::{arithmetic_invariants, ArithmeticInvariants};
pub use islands::{island_pool, island_set, Island, IslandSet};
pub use presets::{run_survey, SurveyOptions, PRESETS};
pub use trig::{trig_sweep, AngleVerdict, SweepPoint, TRIG_TOLERANCE};

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::bks::BksError;
use crate::csw::CswError;
use crate::minimize::MinimizeError;
use crate::rays::RayError;
use crate::structure::StructureError;

pub const REPORT_FORMAT: &str = "ks-atlas-survey";
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("unknown alphabet or malformed spec {0:?}")]
    UnknownAlphabet(String),
    #[error("no minimal set of size {size} found for {island}")]
    IslandNotFound { island: String, size: usize },
    #[error("expected values: {0}")]
    Expected(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ray(#[from] RayError),
    #[error(transparent)]
    Minimize(#[from] MinimizeError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Csw(#[from] CswError),
    #[error(transparent)]
    Bks(#[from] BksError),
}

/// How a reported minimum was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    /// Certified: no smaller uncolourable subset exists in the pool.
    Exact,
    /// Smallest set found by randomized search.
    Upper,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub name: String,
    pub values: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<Bound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Row {
    pub fn new(name: impl Into<String>) -> Self {
        Row { name: name.into(), values: BTreeMap::new(), bound: None, error: None }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.values.insert(key.to_string(), v.into());
        self
    }

    /// Floats are rounded to 9 significant decimals so reports stay stable.
    pub fn set_f64(&mut self, key: &str, v: f64) -> &mut Self {
        let r = format!("{v:.9}").parse::<f64>().unwrap_or(v);
        self.set(key, r)
    }

    pub fn failed(name: impl Into<String>, e: impl std::fmt::Display) -> Self {
        let mut r = Row::new(name);
        r.error = Some(e.to_string());
        r
    }

    pub fn get(&self, field: &str) -> Option<&Value> {
        self.values.get(field)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub row: String,
    pub field: String,
    pub expected: Expect,
    pub actual: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurveyReport {
    pub format: String,
    pub version: u32,
    pub expected_version: String,
    pub preset: String,
    pub seed: u64,
    pub slow: bool,
    pub rows: Vec<Row>,
    pub mismatches: Vec<Mismatch>,
}

impl SurveyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn row(&self, name: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per row; columns are the union of value keys in first-seen
    /// order, then the bound and error columns.
    pub fn to_csv(&self) -> String {
        let mut cols: Vec<&str> = Vec::new();
        for r in &self.rows {
            for k in r.values.keys() {
                if !cols.contains(&k.as_str()) {
                    cols.push(k);
                }
            }
        }
        let mut out = String::from("name");
        for c in &cols {
            out.push(',');
            out.push_str(c);
        }
        out.push_str(",bound,error\n");
        for r in &self.rows {
            out.push_str(&csv_field(&r.name));
            for c in &cols {
                out.push(',');
                if let Some(v) = r.values.get(*c) {
                    let s = match v {
                        Value::String(s) => s.clone(),
                        Value::Null => String::new(),
                        other => other.to_string(),
                    };
                    out.push_str(&csv_field(&s));
                }
            }
            out.push(',');
            if let Some(b) = r.bound {
                out.push_str(if b == Bound::Exact { "exact" } else { "upper" });
            }
            out.push(',');
            if let Some(e) = &r.error {
                out.push_str(&csv_field(e));
            }
            out.push('\n');
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
