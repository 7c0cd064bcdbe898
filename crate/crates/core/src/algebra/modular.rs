//! Ring homomorphisms from the coordinate fields into a prime field F_p.
//!
//! A nonzero image proves the element is nonzero; a zero image is only a hint
//! and callers confirm it exactly. This keeps orthogonality tests exact while
//! skipping almost all big-rational work on non-orthogonal pairs.

use super::coeff::Coefficient;
use super::ring::{Generator, RingKind, RingSpec};
use super::AlgNum;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    (a % p != 0).then(|| pow_mod(a, p - 2, p))
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn legendre(a: u64, p: u64) -> u64 {
    pow_mod(a, (p - 1) / 2, p)
}

/// Tonelli–Shanks square root of a quadratic residue.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| legendre(z, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

const START: u64 = 1 << 62;

fn signed_residue(d: i64, p: u64) -> u64 {
    (d as i128).rem_euclid(p as i128) as u64
}

/// Images of the basis elements in F_p.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub p: u64,
    pub basis: Vec<u64>,
}

impl Embedding {
    pub(crate) fn for_ring(spec: &RingSpec) -> Embedding {
        match spec.kind() {
            RingKind::Rational => {
                let p = (START..).find(|&p| is_prime(p)).unwrap();
                Embedding { p, basis: vec![1] }
            }
            RingKind::Quadratic { d, generator } => {
                for p in (START..).filter(|&p| is_prime(p)) {
                    let dm = signed_residue(d, p);
                    if let Some(s) = sqrt_mod(dm, p).filter(|&s| s != 0) {
                        let g = match generator {
                            Generator::Sqrt => s,
                            Generator::Half => mul_mod(add_mod(1, s, p), inv_mod(2, p).unwrap(), p),
                        };
                        return Embedding { p, basis: vec![1, g] };
                    }
                }
                unreachable!()
            }
            RingKind::Cyclotomic { n } => {
                let n = n as u64;
                let mut p = START - START % n + 1;
                while !is_prime(p) {
                    p += n;
                }
                let factors = prime_factors(n);
                let root = (2..)
                    .map(|h| pow_mod(h, (p - 1) / n, p))
                    .find(|&g| factors.iter().all(|&q| pow_mod(g, n / q, p) != 1))
                    .unwrap();
                let basis = (0..spec.degree() as u64).map(|k| pow_mod(root, k, p)).collect();
                Embedding { p, basis }
            }
        }
    }

    /// Image of a rational, or `None` when p divides its denominator.
    pub fn rational_image<Q: Coefficient>(&self, c: &Q) -> Option<u64> {
        let den = inv_mod(c.denom_residue(self.p), self.p)?;
        Some(mul_mod(c.numer_residue(self.p), den, self.p))
    }

    pub fn image<Q: Coefficient>(&self, a: &AlgNum<Q>) -> Option<u64> {
        let mut acc = 0u64;
        for (c, &b) in a.coeffs().iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            acc = add_mod(acc, mul_mod(self.rational_image(c)?, b, self.p), self.p);
        }
        Some(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Ring;

    #[test]
    fn primality_small() {
        let sieve: Vec<u64> = (0..200).filter(|&n| is_prime(n)).collect();
        let naive: Vec<u64> = (0..200u64).filter(|&n| n >= 2 && (2..n).all(|d| n % d != 0)).collect();
        assert_eq!(sieve, naive);
    }

    #[test]
    fn generator_satisfies_minpoly() {
        for ring in [
            Ring::quadratic(-7, Generator::Half).unwrap(),
            Ring::quadratic(5, Generator::Half).unwrap(),
            Ring::quadratic(2, Generator::Sqrt).unwrap(),
            Ring::cyclotomic(30).unwrap(),
            Ring::cyclotomic(29).unwrap(),
        ] {
            let e = ring.embedding();
            let g = if ring.degree() > 1 { e.basis[1] } else { 1 };
            let mut acc = 0u64;
            for &c in ring.minpoly().iter().rev() {
                acc = add_mod(mul_mod(acc, g, e.p), signed_residue(c, e.p), e.p);
            }
            assert_eq!(acc, 0, "{ring}");
        }
    }
}
