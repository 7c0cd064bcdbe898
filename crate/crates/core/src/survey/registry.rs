//! Named alphabets and the text form accepted on the command line.
//!
//! A spec is `<ring>:<symbols>`; several specs joined by `+` build the union
//! of their pools. Rings: `Q`, `sqrt(d)`, `half(d)` (generator (1+√d)/2),
//! `zeta(n)`. Symbols are comma separated in the ring's text form (`g` or
//! `z`) and closed under negation together with ±1; the single symbol
//! `roots` gives `{0} ∪ μ_n` instead.

use serde::Serialize;

use super::SurveyError;
use crate::algebra::{Generator, RingKind};
use crate::rays::{complete_pool, generate_pool, Alphabet, DEFAULT_MAX_HEIGHT, DEFAULT_MAX_ITERATIONS};
use crate::{Exact, ExactPool, Rational, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Part {
    pub ring: RingKind,
    /// `None` means the roots of unity of a cyclotomic ring.
    pub symbols: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recipe {
    pub name: String,
    pub parts: Vec<Part>,
    pub complete: bool,
}

const NAMED: &[(&str, &str, bool)] = &[
    ("units", "Q:", false),
    ("integer", "Q:2", false),
    ("half", "Q:1/2", false),
    ("peres", "sqrt(2):g", false),
    ("sqrt3", "sqrt(3):g", false),
    ("sqrt5", "sqrt(5):g", false),
    ("golden-raw", "half(5):g", false),
    ("golden", "half(5):g", true),
    ("integer-completed", "Q:2", true),
    ("peres-completed", "sqrt(2):g", true),
    ("sqrt3-completed", "sqrt(3):g", true),
    ("sqrt5-completed", "sqrt(5):g", true),
    ("integer-sqrt2", "sqrt(2):g,2", false),
    ("integer-golden", "half(5):g,2", false),
    ("integer-3", "Q:2,3", false),
    ("sqrt2-golden", "zeta(40):z^5+z^35,z^4+z^36", false),
    ("golden-golden2", "half(5):g,1+g", false),
    ("gaussian", "sqrt(-1):g", false),
    ("gaussian-enriched", "sqrt(-1):g,1+g", false),
    ("sqrt-2", "sqrt(-2):g", false),
    ("sqrt-3", "sqrt(-3):g", false),
    ("sqrt-5", "sqrt(-5):g", false),
    ("sqrt-7", "sqrt(-7):g", false),
    ("eisenstein", "zeta(6):roots", false),
    ("heegner-3", "half(-3):g,1-g", false),
    ("heegner-7", "half(-7):g,1-g", false),
    ("heegner-11", "half(-11):g,1-g", false),
    ("heegner-19", "half(-19):g,1-g", false),
    ("heegner-43", "half(-43):g,1-g", false),
    ("heegner-67", "half(-67):g,1-g", false),
    ("heegner-163", "half(-163):g,1-g", false),
    ("mixed-integer-sqrt2", "sqrt(2):2+sqrt(2):g", true),
    ("mixed-integer-sqrt3", "sqrt(3):2+sqrt(3):g", true),
    ("mixed-integer-sqrt5", "sqrt(5):2+sqrt(5):g", true),
    ("mixed-integer-golden", "half(5):2+half(5):g", true),
    ("mixed-sqrt2-sqrt3", "zeta(24):z^3+z^21+zeta(24):z^2+z^22", true),
    ("mixed-sqrt2-golden", "zeta(40):z^5+z^35+zeta(40):z^4+z^36", true),
];

/// Names accepted by [`recipe`], in registry order.
pub fn names() -> Vec<&'static str> {
    NAMED.iter().map(|(n, _, _)| *n).collect()
}

/// Looks up a named alphabet, or parses a spec (`roots-n` is also accepted).
pub fn recipe(name_or_spec: &str, complete: bool) -> Result<Recipe, SurveyError> {
    if let Some(&(name, spec, c)) = NAMED.iter().find(|(n, _, _)| *n == name_or_spec) {
        return Ok(Recipe { name: name.to_string(), parts: parse_spec(spec)?, complete: c || complete });
    }
    if let Some(n) = name_or_spec.strip_prefix("roots-") {
        let n: u32 = n.parse().map_err(|_| SurveyError::UnknownAlphabet(name_or_spec.to_string()))?;
        return Ok(Recipe {
            name: name_or_spec.to_string(),
            parts: vec![Part { ring: RingKind::Cyclotomic { n }, symbols: None }],
            complete,
        });
    }
    Ok(Recipe { name: name_or_spec.to_string(), parts: parse_spec(name_or_spec)?, complete })
}

fn parse_ring(s: &str) -> Option<RingKind> {
    if s == "Q" {
        return Some(RingKind::Rational);
    }
    let (head, arg) = s.strip_suffix(')')?.split_once('(')?;
    match head {
        "sqrt" => Some(RingKind::Quadratic { d: arg.parse().ok()?, generator: Generator::Sqrt }),
        "half" => Some(RingKind::Quadratic { d: arg.parse().ok()?, generator: Generator::Half }),
        "zeta" => Some(RingKind::Cyclotomic { n: arg.parse().ok()? }),
        _ => None,
    }
}

/// Splits at `+` only where a new `<ring>:` part starts, since symbols may
/// contain `+` themselves.
pub fn parse_spec(spec: &str) -> Result<Vec<Part>, SurveyError> {
    let bad = || SurveyError::UnknownAlphabet(spec.to_string());
    let mut starts = vec![0];
    for (i, _) in spec.match_indices('+') {
        let rest = &spec[i + 1..];
        if rest.split_once(':').is_some_and(|(r, _)| parse_ring(r).is_some()) {
            starts.push(i + 1);
        }
    }
    starts.push(spec.len() + 1);
    let mut parts = Vec::new();
    for w in starts.windows(2) {
        let text = &spec[w[0]..w[1] - 1];
        let (ring, syms) = text.split_once(':').ok_or_else(bad)?;
        let ring = parse_ring(ring).ok_or_else(bad)?;
        let symbols = match syms.trim() {
            "roots" => None,
            "" => Some(Vec::new()),
            s => Some(s.split(',').map(|x| x.trim().to_string()).collect()),
        };
        if symbols.is_none() && !matches!(ring, RingKind::Cyclotomic { .. }) {
            return Err(bad());
        }
        parts.push(Part { ring, symbols });
    }
    if parts.is_empty() || parts.iter().any(|p| p.ring != parts[0].ring) {
        return Err(bad());
    }
    Ok(parts)
}

impl Part {
    pub fn alphabet(&self) -> Result<Alphabet<Rational>, SurveyError> {
        let ring = Ring::new(self.ring)?;
        Ok(match (&self.symbols, self.ring) {
            (None, RingKind::Cyclotomic { n }) => Alphabet::roots_of_unity(&ring, n)?,
            (None, _) => unreachable!("checked when parsing"),
            (Some(syms), _) => {
                let extra = syms.iter().map(|s| Exact::parse(&ring, s)).collect::<Result<Vec<_>, _>>()?;
                Alphabet::signed(&ring, &extra)?
            }
        })
    }
}

/// Pool before and after the optional completion step.
pub struct Built {
    pub raw: ExactPool,
    pub pool: ExactPool,
    pub completion_rounds: usize,
}

impl Recipe {
    pub fn build(&self) -> Result<Built, SurveyError> {
        let mut raw: Option<ExactPool> = None;
        for p in &self.parts {
            let next = generate_pool(&p.alphabet()?);
            raw = Some(match raw {
                None => next,
                Some(prev) => prev.union(&next)?,
            });
        }
        let raw = raw.expect("at least one part");
        if !self.complete {
            return Ok(Built { pool: raw.clone(), raw, completion_rounds: 0 });
        }
        let c = complete_pool(&raw, DEFAULT_MAX_ITERATIONS, DEFAULT_MAX_HEIGHT)?;
        Ok(Built { raw, pool: c.pool, completion_rounds: c.iterations })
    }
}
