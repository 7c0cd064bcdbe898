//! Text form `a/b + c/d*g` (quadratic) or `c0 + c1*z + c2*z^2` (cyclotomic).

use std::fmt;

use super::coeff::Coefficient;
use super::number::AlgNum;
use super::ring::Ring;
use super::AlgebraError;

fn basis_name(sym: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{k}"),
    }
}

impl<Q: Coefficient> fmt::Display for AlgNum<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.ring().symbol();
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => mag.to_string(),
                (_, true) => basis_name(sym, k),
                (_, false) => format!("{mag}*{}", basis_name(sym, k)),
            };
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn parse_term<Q: Coefficient>(ring: &Ring, term: &str, coeffs: &mut [Q]) -> Result<(), AlgebraError> {
    let bad = || AlgebraError::Parse(term.to_string());
    let sym = ring.symbol();
    let (neg, body) = match term.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, term.strip_prefix('+').unwrap_or(term)),
    };
    let (coef, basis) = match body.split_once('*') {
        Some((c, b)) => (Some(c), Some(b)),
        None if body.starts_with(sym) => (None, Some(body)),
        None => (Some(body), None),
    };
    let mut c = match coef {
        Some(c) => Q::parse_rational(c).ok_or_else(bad)?,
        None => Q::one(),
    };
    if neg {
        c = -c;
    }
    let k = match basis {
        None => 0,
        Some(b) => {
            let rest = b.strip_prefix(sym).ok_or_else(bad)?;
            if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^').and_then(|e| e.parse::<usize>().ok()).ok_or_else(bad)?
            }
        }
    };
    if k >= coeffs.len() {
        // higher powers are reduced through the ring
        let x = AlgNum::<Q>::power_of_generator(ring, k as u32).scale(&c);
        for (slot, v) in coeffs.iter_mut().zip(x.coeffs()) {
            *slot = slot.clone() + v.clone();
        }
        return Ok(());
    }
    coeffs[k] = coeffs[k].clone() + c;
    Ok(())
}

impl<Q: Coefficient> AlgNum<Q> {
    /// Parses the text form produced by `Display`. Powers beyond the field
    /// degree are accepted and reduced.
    pub fn parse(ring: &Ring, s: &str) -> Result<Self, AlgebraError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(AlgebraError::Parse(s.to_string()));
        }
        let mut coeffs = vec![Q::zero(); ring.degree()];
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..=bytes.len() {
            let split = i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^');
            if split {
                parse_term(ring, &compact[start..i], &mut coeffs)?;
                start = i;
            }
        }
        AlgNum::from_coeffs(ring, coeffs)
    }
}
