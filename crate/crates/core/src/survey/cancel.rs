//! Three-term zero sums over the Hermitian products `{1, x, x̄, |x|²}` of a
//! two-element alphabet `{0, ±1, ±x}`.
//!
//! A pattern is a coefficient vector over the four products with absolute
//! values summing to three. Classes are taken under the overall sign,
//! `x ↦ x̄` and `x ↦ 1/x` (which after clearing `|x|²` swaps `1 ↔ |x|²` and
//! `x ↔ x̄`). Each class is tested exactly against the generators of the
//! known islands: real generators only on members free of `x̄` (for real x
//! the product set is `{1, x, x²}`), complex ones on every member.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{Generator, RingKind};
use crate::{Exact, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    One,
    X,
    XBar,
    NormSq,
}

const TERMS: [Term; 4] = [Term::One, Term::X, Term::XBar, Term::NormSq];

impl Term {
    fn symbol(self) -> &'static str {
        match self {
            Term::One => "1",
            Term::X => "x",
            Term::XBar => "x̄",
            Term::NormSq => "|x|²",
        }
    }
}

type Coeffs = [i8; 4];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CancellationPattern {
    /// Representative zero sum, e.g. `1 + 1 - x = 0`.
    pub pattern: String,
    /// Signed terms of the representative.
    pub terms: Vec<(i8, Term)>,
    /// Condition on x implied by the representative.
    pub constraint: String,
    /// Every zero sum in the class.
    pub members: Vec<String>,
    /// Known generators satisfying some member.
    pub solutions: Vec<String>,
    /// Island tags, `colorable` for the trace-one class, or `none`.
    pub tag: String,
    pub ks: bool,
}

fn normalize(c: Coeffs) -> Coeffs {
    let first = c.iter().copied().find(|&v| v != 0).unwrap_or(0);
    if first < 0 {
        c.map(|v| -v)
    } else {
        c
    }
}

fn orbit(c: Coeffs) -> Vec<Coeffs> {
    let conj = |c: Coeffs| [c[0], c[2], c[1], c[3]];
    let inv = |c: Coeffs| [c[3], c[2], c[1], c[0]];
    let mut v: Vec<Coeffs> = [c, conj(c), inv(c), conj(inv(c))].into_iter().map(normalize).collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn render(c: Coeffs) -> String {
    let mut s = String::new();
    for (k, &v) in c.iter().enumerate() {
        for _ in 0..v.unsigned_abs() {
            if s.is_empty() {
                if v < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if v < 0 { " - " } else { " + " });
            }
            s.push_str(TERMS[k].symbol());
        }
    }
    s + " = 0"
}

fn constraint(c: Coeffs) -> String {
    let [c0, cx, cy, cn] = c.map(i64::from);
    let q = |n: i64, d: i64| crate::Rational::new(n.into(), d.into());
    if cx != cy {
        // only real x can satisfy it: cn x² + (cx + cy) x + c0 = 0
        if cn == 0 && cx + cy == 0 {
            return "none".into();
        }
        let mut p = Vec::new();
        for (coef, mono) in [(cn, "x²"), (cx + cy, "x"), (c0, "1")] {
            if coef != 0 {
                p.push(match (coef, mono) {
                    (_, "1") => coef.to_string(),
                    (1, _) => mono.to_string(),
                    (-1, _) => format!("-{mono}"),
                    _ => format!("{coef}{mono}"),
                });
            }
        }
        format!("x real, {} = 0", p.join(" + ").replace("+ -", "- "))
    } else if cn == 0 {
        if cx == 0 {
            "none".into()
        } else {
            format!("Re(x) = {}", q(-c0, 2 * cx))
        }
    } else if cx == 0 {
        format!("|x|² = {}", q(-c0, cn))
    } else {
        format!("{cn}|x|² + {}Re(x) + {c0} = 0", 2 * cx)
    }
}

struct Candidate {
    label: &'static str,
    tag: &'static str,
    ring: RingKind,
    x: &'static str,
}

const CANDIDATES: &[Candidate] = &[
    Candidate { label: "x = 2", tag: "integer", ring: RingKind::Rational, x: "2" },
    Candidate {
        label: "x = √2",
        tag: "peres",
        ring: RingKind::Quadratic { d: 2, generator: Generator::Sqrt },
        x: "g",
    },
    Candidate {
        label: "x = φ",
        tag: "golden",
        ring: RingKind::Quadratic { d: 5, generator: Generator::Half },
        x: "g",
    },
    Candidate {
        label: "x = √-2",
        tag: "sqrt-2",
        ring: RingKind::Quadratic { d: -2, generator: Generator::Sqrt },
        x: "g",
    },
    Candidate {
        label: "x = 1+i",
        tag: "gaussian",
        ring: RingKind::Quadratic { d: -1, generator: Generator::Sqrt },
        x: "1+g",
    },
    Candidate {
        label: "x = (1+√-7)/2",
        tag: "heegner-7",
        ring: RingKind::Quadratic { d: -7, generator: Generator::Half },
        x: "g",
    },
    Candidate {
        label: "x = ω",
        tag: "eisenstein",
        ring: RingKind::Quadratic { d: -3, generator: Generator::Half },
        x: "g-1",
    },
    Candidate {
        label: "x = (1+√-11)/2",
        tag: "colorable",
        ring: RingKind::Quadratic { d: -11, generator: Generator::Half },
        x: "g",
    },
];

fn vanishes(c: Coeffs, x: &Exact) -> bool {
    let r = x.ring();
    let xb = x.conjugate();
    let vals = [Exact::one(r), x.clone(), xb.clone(), x * &xb];
    let mut s = Exact::zero(r);
    for (k, v) in vals.iter().enumerate() {
        s = &s + &v.scale(&crate::Rational::from_integer(c[k].into()));
    }
    s.is_zero()
}

fn satisfied_by(class: &[Coeffs], cand: &Candidate) -> bool {
    let ring = Ring::new(cand.ring).expect("candidate ring");
    let x = Exact::parse(&ring, cand.x).expect("candidate value");
    class.iter().any(|&c| (!ring.is_real() || c[2] == 0) && vanishes(c, &x))
}

/// The trace-one pattern `1 - x - x̄`; its class is tagged colorable.
const TRACE_ONE: Coeffs = [1, -1, -1, 0];

/// All classes of primitive three-term zero sums, ordered by representative.
pub fn classify_cancellations() -> Vec<CancellationPattern> {
    let mut classes: BTreeMap<Coeffs, Vec<Coeffs>> = BTreeMap::new();
    let range = -3i8..=3;
    for c0 in range.clone() {
        for cx in range.clone() {
            for cy in range.clone() {
                for cn in range.clone() {
                    let c = [c0, cx, cy, cn];
                    let weight: i8 = c.iter().map(|v| v.abs()).sum();
                    if weight != 3 || (cx == 0 && cy == 0 && cn == 0) {
                        continue;
                    }
                    let o = orbit(c);
                    classes.entry(o[0]).or_insert(o);
                }
            }
        }
    }
    let mut out: Vec<CancellationPattern> = classes
        .into_values()
        .map(|members| {
            let rep = *members.iter().max_by_key(|c| (c[0], c[2] == 0, c[1], c[3])).expect("nonempty");
            let mut solutions = Vec::new();
            let mut tags: Vec<&str> = Vec::new();
            for cand in CANDIDATES {
                if satisfied_by(&members, cand) {
                    solutions.push(cand.label.to_string());
                    if cand.tag != "colorable" && !tags.contains(&cand.tag) {
                        tags.push(cand.tag);
                    }
                }
            }
            let trace_one = members.contains(&TRACE_ONE);
            let tag = if trace_one {
                "colorable".to_string()
            } else if tags.is_empty() {
                "none".to_string()
            } else {
                tags.join("/")
            };
            let terms =
                rep.iter().enumerate().flat_map(|(k, &v)| std::iter::repeat_n((v.signum(), TERMS[k]), v.unsigned_abs().into())).collect();
            CancellationPattern {
                pattern: render(rep),
                terms,
                constraint: constraint(rep),
                members: members.iter().map(|&c| render(c)).collect(),
                ks: !trace_one && !tags.is_empty(),
                solutions,
                tag,
            }
        })
        .collect();
    out.sort_by(|a, b| b.ks.cmp(&a.ks).then_with(|| a.pattern.cmp(&b.pattern)));
    out
}
