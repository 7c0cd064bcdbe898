use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::modular::Embedding;
use super::AlgebraError;

/// Generator of a quadratic field: `g = √d` or `g = (1 + √d)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    Sqrt,
    Half,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RingKind {
    Rational,
    Quadratic { d: i64, generator: Generator },
    Cyclotomic { n: u32 },
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Rational => write!(f, "rational"),
            RingKind::Quadratic { d, generator } => {
                let g = match generator {
                    Generator::Sqrt => "sqrt",
                    Generator::Half => "half",
                };
                write!(f, "quadratic({d},{g})")
            }
            RingKind::Cyclotomic { n } => write!(f, "cyclotomic({n})"),
        }
    }
}

impl FromStr for RingKind {
    type Err = AlgebraError;

    /// Accepts `rational`, `quadratic(d,sqrt|half)` and `cyclotomic(n)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::Parse(s.to_string());
        let s = s.trim();
        if s == "rational" {
            return Ok(RingKind::Rational);
        }
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        match head.trim() {
            "quadratic" => {
                let (d, g) = args.split_once(',').ok_or_else(bad)?;
                let d = d.trim().parse::<i64>().map_err(|_| bad())?;
                let generator = match g.trim() {
                    "sqrt" => Generator::Sqrt,
                    "half" => Generator::Half,
                    _ => return Err(bad()),
                };
                Ok(RingKind::Quadratic { d, generator })
            }
            "cyclotomic" => {
                let n = args.trim().parse::<u32>().map_err(|_| bad())?;
                Ok(RingKind::Cyclotomic { n })
            }
            _ => Err(bad()),
        }
    }
}

/// A coordinate field with its reduction and conjugation data.
///
/// Basis is `{1}`, `{1, g}` or `{1, ζ, …, ζ^(deg−1)}`. All tables are integral.
#[derive(Debug)]
pub struct RingSpec {
    kind: RingKind,
    /// Monic minimal polynomial of the generator, lowest coefficient first.
    minpoly: Vec<i64>,
    /// Row `i` is the coefficient vector of `conj(basis_i)`.
    conj: Vec<Vec<i64>>,
    /// Row `i` is `σ(basis_i)` for the nontrivial automorphism (degree ≤ 2 only).
    galois: Option<Vec<Vec<i64>>>,
    real: bool,
    embedding: OnceLock<Embedding>,
}

/// Shared handle to an immutable [`RingSpec`].
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingSpec>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}

impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.kind.hash(state)
    }
}

impl std::ops::Deref for Ring {
    type Target = RingSpec;
    fn deref(&self) -> &RingSpec {
        &self.0
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.kind.fmt(f)
    }
}

fn is_squarefree(d: i64) -> bool {
    let m = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Integer polynomial helpers (lowest coefficient first).
fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic divisor; panics if the remainder is nonzero.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "divisor must be monic");
    let qlen = rem.len() - dd;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    assert!(rem.iter().all(|&r| r == 0), "inexact polynomial division");
    q
}

/// Φₙ by dividing xⁿ − 1 by Φ_d for every proper divisor d of n.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    let mut den = vec![1i64];
    for d in (1..n).filter(|d| n % d == 0) {
        den = poly_mul(&den, &cyclotomic_polynomial(d));
    }
    poly_div_exact(&num, &den)
}

/// Reduce an integer polynomial modulo a monic polynomial.
fn reduce_int(mut p: Vec<i64>, minpoly: &[i64]) -> Vec<i64> {
    let deg = minpoly.len() - 1;
    for k in (deg..p.len()).rev() {
        let c = p[k];
        if c == 0 {
            continue;
        }
        p[k] = 0;
        for j in 0..deg {
            p[k - deg + j] -= c * minpoly[j];
        }
    }
    p.resize(deg, 0);
    p
}

impl RingSpec {
    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[i64] {
        &self.minpoly
    }

    /// True when every element is a real number (conjugation is the identity).
    pub fn is_real(&self) -> bool {
        self.real
    }

    pub(crate) fn conj_table(&self) -> &[Vec<i64>] {
        &self.conj
    }

    pub(crate) fn galois_table(&self) -> Option<&[Vec<i64>]> {
        self.galois.as_deref()
    }

    /// Ring homomorphism into a large prime field, built on first use.
    pub fn embedding(&self) -> &Embedding {
        self.embedding.get_or_init(|| Embedding::for_ring(self))
    }

    /// Images of the basis elements under a fixed complex embedding.
    pub fn complex_basis(&self) -> Vec<Complex64> {
        match self.kind {
            RingKind::Rational => vec![Complex64::new(1.0, 0.0)],
            RingKind::Quadratic { d, generator } => {
                let root = if d > 0 {
                    Complex64::new((d as f64).sqrt(), 0.0)
                } else {
                    Complex64::new(0.0, ((-d) as f64).sqrt())
                };
                let g = match generator {
                    Generator::Sqrt => root,
                    Generator::Half => (Complex64::new(1.0, 0.0) + root) / 2.0,
                };
                vec![Complex64::new(1.0, 0.0), g]
            }
            RingKind::Cyclotomic { n } => {
                let z = Complex64::from_polar(1.0, std::f64::consts::TAU / n as f64);
                (0..self.degree()).map(|k| z.powu(k as u32)).collect()
            }
        }
    }

    /// Symbol used for the generator in text form.
    pub fn symbol(&self) -> &'static str {
        match self.kind {
            RingKind::Cyclotomic { .. } => "z",
            _ => "g",
        }
    }
}

impl Ring {
    pub fn new(kind: RingKind) -> Result<Ring, AlgebraError> {
        let spec = match kind {
            RingKind::Rational => RingSpec {
                kind,
                minpoly: vec![0, 1],
                conj: vec![vec![1]],
                galois: Some(vec![vec![1]]),
                real: true,
                embedding: OnceLock::new(),
            },
            RingKind::Quadratic { d, generator } => {
                if d == 0 || d == 1 || !is_squarefree(d) {
                    return Err(AlgebraError::InvalidRing(format!(
                        "quadratic field needs a squarefree d other than 0 and 1, got {d}"
                    )));
                }
                let (minpoly, sigma) = match generator {
                    Generator::Sqrt => (vec![-d, 0, 1], vec![vec![1, 0], vec![0, -1]]),
                    Generator::Half => {
                        if d.rem_euclid(4) != 1 {
                            return Err(AlgebraError::InvalidRing(format!(
                                "(1+√d)/2 is not integral unless d ≡ 1 (mod 4), got {d}"
                            )));
                        }
                        // α² = α + (d−1)/4, σ(α) = 1 − α
                        (vec![-(d - 1) / 4, -1, 1], vec![vec![1, 0], vec![1, -1]])
                    }
                };
                let real = d > 0;
                let conj = if real { vec![vec![1, 0], vec![0, 1]] } else { sigma.clone() };
                RingSpec { kind, minpoly, conj, galois: Some(sigma), real, embedding: OnceLock::new() }
            }
            RingKind::Cyclotomic { n } => {
                if n == 0 {
                    return Err(AlgebraError::InvalidRing("cyclotomic order must be ≥ 1".into()));
                }
                let minpoly = cyclotomic_polynomial(n);
                let deg = minpoly.len() - 1;
                let conj: Vec<Vec<i64>> = (0..deg)
                    .map(|k| {
                        let e = (n as usize - k % n as usize) % n as usize;
                        let mut mono = vec![0i64; e + 1];
                        mono[e] = 1;
                        reduce_int(mono, &minpoly)
                    })
                    .collect();
                let galois = (deg <= 2).then(|| conj.clone());
                RingSpec { kind, minpoly, conj, galois, real: deg == 1, embedding: OnceLock::new() }
            }
        };
        Ok(Ring(Arc::new(spec)))
    }

    pub fn rational() -> Ring {
        Ring::new(RingKind::Rational).expect("rational ring")
    }

    pub fn quadratic(d: i64, generator: Generator) -> Result<Ring, AlgebraError> {
        Ring::new(RingKind::Quadratic { d, generator })
    }

    pub fn cyclotomic(n: u32) -> Result<Ring, AlgebraError> {
        Ring::new(RingKind::Cyclotomic { n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: Φₙ(x) = Π_{d | n} (x^d − 1)^{μ(n/d)}, evaluated at integers.
    fn mobius(mut n: u32) -> i32 {
        let mut k = 0;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                k += 1;
            }
            p += 1;
        }
        if n > 1 {
            k += 1;
        }
        if k % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn eval(p: &[i64], x: f64) -> f64 {
        p.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
    }

    #[test]
    fn phi6_matches_division() {
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
    }

    #[test]
    fn cyclotomic_agrees_with_mobius_product() {
        for n in 1..=30u32 {
            let phi = cyclotomic_polynomial(n);
            for x in [1.5f64, 2.0, 0.7] {
                let mut prod = 1.0f64;
                for d in (1..=n).filter(|d| n % d == 0) {
                    prod *= (x.powi(d as i32) - 1.0).powi(mobius(n / d));
                }
                let v = eval(&phi, x);
                assert!((v - prod).abs() <= 1e-6 * prod.abs().max(1.0), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert!(Ring::quadratic(12, Generator::Sqrt).is_err());
        assert!(Ring::quadratic(3, Generator::Half).is_err());
        assert!(Ring::quadratic(-7, Generator::Half).is_ok());
        assert!(Ring::quadratic(5, Generator::Half).is_ok());
        assert!(Ring::cyclotomic(0).is_err());
    }

    #[test]
    fn heegner_minpoly() {
        let r = Ring::quadratic(-7, Generator::Half).unwrap();
        // α² − α + 2
        assert_eq!(r.minpoly(), &[2, -1, 1]);
        assert!(!r.is_real());
    }

    #[test]
    fn descriptor_round_trip() {
        for s in ["rational", "quadratic(-7,half)", "quadratic(2,sqrt)", "cyclotomic(12)"] {
            let k: RingKind = s.parse().unwrap();
            assert_eq!(k.to_string(), s);
        }
    }
}
