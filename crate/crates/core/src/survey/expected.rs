//! Reference values shipped as versioned JSON and the comparison rules.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{csv_field, Mismatch, Row, SurveyError};

pub const EXPECTED_JSON: &str = include_str!("expected.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    Eq(Value),
    /// Upper bound: the actual value may be smaller.
    Le(f64),
    Lt(f64),
    Ge(f64),
    Approx { value: f64, tol: f64 },
    Range(f64, f64),
}

impl Expect {
    pub fn holds(&self, actual: &Value) -> bool {
        let num = actual.as_f64();
        match (self, num) {
            (Expect::Eq(v), Some(a)) if v.is_number() => v.as_f64() == Some(a),
            (Expect::Eq(v), _) => v == actual,
            (Expect::Le(x), Some(a)) => a <= *x,
            (Expect::Lt(x), Some(a)) => a < *x,
            (Expect::Ge(x), Some(a)) => a >= *x,
            (Expect::Approx { value, tol }, Some(a)) => (a - value).abs() <= *tol,
            (Expect::Range(lo, hi), Some(a)) => *lo <= a && a <= *hi,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectedRow {
    pub name: String,
    pub fields: BTreeMap<String, Expect>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectedTable {
    pub caption: String,
    pub rows: Vec<ExpectedRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub version: String,
    pub tables: BTreeMap<String, ExpectedTable>,
}

/// The embedded reference values, parsed once.
pub fn expected_values() -> Result<&'static Expected, SurveyError> {
    static CELL: OnceLock<Result<Expected, String>> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(EXPECTED_JSON).map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|e| SurveyError::Expected(e.clone()))
}

impl Expected {
    /// One line per (table, row, field): `table,row,field,rule,value,tol`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("table,row,field,rule,value,tol\n");
        for (t, table) in &self.tables {
            for row in &table.rows {
                for (f, e) in &row.fields {
                    let (rule, value, tol) = match e {
                        Expect::Eq(v) => ("eq", v.as_str().map_or_else(|| v.to_string(), str::to_string), String::new()),
                        Expect::Le(x) => ("le", x.to_string(), String::new()),
                        Expect::Lt(x) => ("lt", x.to_string(), String::new()),
                        Expect::Ge(x) => ("ge", x.to_string(), String::new()),
                        Expect::Approx { value, tol } => ("approx", value.to_string(), tol.to_string()),
                        Expect::Range(a, b) => ("range", format!("{a}..{b}"), String::new()),
                    };
                    let cells = [t.as_str(), &row.name, f, rule, &value, &tol].map(csv_field);
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
            }
        }
        out
    }
}

/// Every expected field of every expected row is checked; a missing row or a
/// row that failed counts as one mismatch.
pub fn compare(rows: &[Row], table: &ExpectedTable) -> Vec<Mismatch> {
    let mut out = Vec::new();
    for exp in &table.rows {
        let Some(row) = rows.iter().find(|r| r.name == exp.name) else {
            out.push(Mismatch {
                row: exp.name.clone(),
                field: "(row)".into(),
                expected: Expect::Eq(Value::String("present".into())),
                actual: Value::Null,
            });
            continue;
        };
        if let Some(e) = &row.error {
            out.push(Mismatch {
                row: exp.name.clone(),
                field: "(error)".into(),
                expected: Expect::Eq(Value::Null),
                actual: Value::String(e.clone()),
            });
            continue;
        }
        for (field, want) in &exp.fields {
            let actual = row.values.get(field).cloned().unwrap_or(Value::Null);
            if !want.holds(&actual) {
                out.push(Mismatch { row: exp.name.clone(), field: field.clone(), expected: want.clone(), actual });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn embedded_file_parses() {
        let e = expected_values().unwrap();
        assert!(!e.version.is_empty());
        for (name, t) in &e.tables {
            assert!(!t.rows.is_empty(), "{name}");
        }
    }

    #[test]
    fn csv_export() {
        let csv = expected_values().unwrap().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("table,row,field,rule,value,tol"));
        assert!(csv.contains("table1,integer,min,eq,31,\n"));
        assert!(csv.contains("csw,ck-31,theta,approx,11.71,0.02\n"));
        assert!(csv.contains("heegner,heegner7-43,degrees,eq,\"4:16,5:20,6:4,8:2,10:1\",\n"));
    }

    #[test]
    fn rules() {
        assert!(Expect::Eq(json!(13)).holds(&json!(13)));
        assert!(Expect::Eq(json!(13)).holds(&json!(13.0)));
        assert!(Expect::Eq(json!(null)).holds(&json!(null)));
        assert!(!Expect::Eq(json!(true)).holds(&json!(false)));
        assert!(Expect::Le(72.0).holds(&json!(63)));
        assert!(!Expect::Le(72.0).holds(&json!(73)));
        assert!(!Expect::Le(72.0).holds(&json!(null)));
        assert!(Expect::Approx { value: 11.71, tol: 0.02 }.holds(&json!(11.713)));
        assert!(Expect::Range(13.0, 43.0).holds(&json!(21)));
        assert!(Expect::Lt(1.0).holds(&json!(0.9)));
    }

    #[test]
    fn missing_and_failed_rows() {
        let t = ExpectedTable {
            caption: String::new(),
            rows: vec![
                ExpectedRow { name: "a".into(), fields: [("x".into(), Expect::Eq(json!(1)))].into() },
                ExpectedRow { name: "b".into(), fields: BTreeMap::new() },
                ExpectedRow { name: "c".into(), fields: BTreeMap::new() },
            ],
        };
        let mut a = Row::new("a");
        a.set("x", 2);
        let rows = vec![a, Row::failed("b", "boom")];
        let m = compare(&rows, &t);
        assert_eq!(m.len(), 3);
        assert_eq!(m[0].field, "x");
        assert_eq!(m[1].field, "(error)");
        assert_eq!(m[2].field, "(row)");
    }
}
