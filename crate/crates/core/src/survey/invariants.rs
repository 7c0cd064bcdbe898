use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::SurveyError;
use crate::algebra::RingKind;
use crate::{Exact, ExactPool, Rational};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArithmeticInvariants {
    pub ring: RingKind,
    /// Galois norm and trace of the ring generator (`None` beyond degree 2).
    pub galois_norm: Option<String>,
    pub galois_trace: Option<String>,
    /// lcm of ‖v‖² over integral primitive representatives of the set;
    /// `None` when some ‖v‖² is irrational.
    pub n_s: Option<String>,
    /// Distinct ‖v‖² values.
    pub norms: Vec<String>,
}

fn integral(x: &Exact) -> bool {
    x.coeffs().iter().all(|q| q.is_integer())
}

/// Non-unit elements `a + b g` with small coefficients and rational `|π|²`;
/// dividing by one of them keeps ‖v‖² rational.
fn small_primes(ring: &crate::Ring) -> Vec<Exact> {
    if ring.degree() != 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for b in 1..=2i64 {
        for a in -2..=2i64 {
            let p = &Exact::from_int(ring, a) + &Exact::generator(ring).scale(&Rational::from_integer(b.into()));
            match (&p * &p.conjugate()).as_rational() {
                Some(n) if n.abs() > Rational::one() => out.push(p),
                _ => {}
            }
        }
    }
    out
}

/// Clears the ray's rational content, then divides out ring elements of
/// small norm while the coordinates stay integral, and returns ‖v‖².
fn primitive_norm(coords: &[Exact; 3]) -> Exact {
    let ring = coords[0].ring().clone();
    let mut den = num_bigint::BigInt::one();
    let mut num = num_bigint::BigInt::zero();
    for c in coords {
        for q in c.coeffs() {
            den = den.lcm(q.denom());
        }
    }
    for c in coords {
        for q in c.coeffs() {
            num = num.gcd(&(q.numer() * (&den / q.denom())));
        }
    }
    let scale = Rational::new(den, num.abs());
    let mut v: Vec<Exact> = coords.iter().map(|c| c.scale(&scale)).collect();
    let primes = small_primes(&ring);
    'outer: loop {
        for p in &primes {
            let w: Option<Vec<Exact>> = v.iter().map(|c| c.checked_div(p).ok().filter(integral)).collect();
            if let Some(w) = w {
                v = w;
                continue 'outer;
            }
        }
        break;
    }
    v.iter().fold(Exact::zero(&ring), |n, c| &n + &(c * &c.conjugate()))
}

/// Generator invariants of the pool's ring and N(S) of the chosen rays.
pub fn arithmetic_invariants(pool: &ExactPool, set: &[usize]) -> Result<ArithmeticInvariants, SurveyError> {
    let ring = pool.ring();
    let (galois_norm, galois_trace) = match Exact::generator(ring).invariants() {
        Ok(inv) if ring.kind() != RingKind::Rational => (Some(inv.galois_norm.to_string()), Some(inv.galois_trace.to_string())),
        _ => (None, None),
    };
    let mut norms: Vec<Exact> = Vec::new();
    for &i in set {
        let ray = pool.rays().get(i).ok_or_else(|| SurveyError::Expected(format!("ray index {i} out of range")))?;
        let n = primitive_norm(ray.coords());
        if !norms.contains(&n) {
            norms.push(n);
        }
    }
    let rational: Option<Vec<Rational>> = norms.iter().map(|n| n.as_rational().cloned()).collect();
    let n_s = rational.map(|mut r| {
        r.sort();
        norms = r.iter().map(|q| Exact::from_rational(ring, q.clone())).collect();
        r.iter().fold(num_bigint::BigInt::one(), |l, q| l.lcm(&q.to_integer())).to_string()
    });
    Ok(ArithmeticInvariants {
        ring: ring.kind(),
        galois_norm,
        galois_trace,
        n_s,
        norms: norms.iter().map(ToString::to_string).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rays::{generate_pool, Alphabet};
    use crate::{ExactRay, Ring};

    #[test]
    fn axes_have_n_one() {
        let r = Ring::rational();
        let p = generate_pool(&Alphabet::signed(&r, &[]).unwrap());
        let axes: Vec<usize> = (0..p.len())
            .filter(|&i| p.rays()[i].coords().iter().filter(|c| c.is_zero()).count() == 2)
            .collect();
        assert_eq!(axes.len(), 3);
        let inv = arithmetic_invariants(&p, &axes).unwrap();
        assert_eq!(inv.n_s.as_deref(), Some("1"));
    }

    #[test]
    fn content_is_cleared() {
        let r = Ring::rational();
        let q = |n: i64, d: i64| Exact::from_rational(&r, Rational::new(n.into(), d.into()));
        let ray = ExactRay::canonicalize([q(1, 2), q(1, 2), q(0, 1)]).unwrap();
        assert_eq!(primitive_norm(ray.coords()), q(2, 1));
        let ray = ExactRay::canonicalize([q(2, 3), q(4, 3), q(0, 1)]).unwrap();
        assert_eq!(primitive_norm(ray.coords()), q(5, 1));
    }
}
