use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::coeff::Coefficient;
use super::ring::Ring;
use super::AlgebraError;

/// Exact element of a coordinate field, stored as reduced basis coefficients.
#[derive(Clone)]
pub struct AlgNum<Q> {
    ring: Ring,
    coeffs: Vec<Q>,
}

/// `|a|²` is rational for complex rings and for rational elements of real ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormSq<Q: Coefficient> {
    Rational(Q),
    Irrational(AlgNum<Q>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants<Q: Coefficient> {
    pub norm_sq: NormSq<Q>,
    pub galois_norm: Q,
    pub galois_trace: Q,
}

fn apply_table<Q: Coefficient>(coeffs: &[Q], table: &[Vec<i64>]) -> Vec<Q> {
    let mut out = vec![Q::zero(); coeffs.len()];
    for (c, row) in coeffs.iter().zip(table) {
        if c.is_zero() {
            continue;
        }
        for (o, &t) in out.iter_mut().zip(row) {
            if t != 0 {
                *o = o.clone() + c.clone() * Q::from_i64(t).unwrap();
            }
        }
    }
    out
}

impl<Q: Coefficient> AlgNum<Q> {
    /// Builds an element from coefficients over the ring basis; missing trailing
    /// coefficients are zero.
    pub fn from_coeffs(ring: &Ring, mut coeffs: Vec<Q>) -> Result<Self, AlgebraError> {
        let deg = ring.degree();
        if coeffs.len() > deg {
            if coeffs[deg..].iter().any(|c| !c.is_zero()) {
                return Err(AlgebraError::Degree { got: coeffs.len(), max: deg });
            }
            coeffs.truncate(deg);
        }
        coeffs.resize(deg, Q::zero());
        Ok(AlgNum { ring: ring.clone(), coeffs })
    }

    pub fn from_rational(ring: &Ring, q: Q) -> Self {
        let mut coeffs = vec![Q::zero(); ring.degree()];
        coeffs[0] = q;
        AlgNum { ring: ring.clone(), coeffs }
    }

    pub fn from_int(ring: &Ring, n: i64) -> Self {
        Self::from_rational(ring, Q::from_i64(n).unwrap())
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::from_int(ring, 0)
    }

    pub fn one(ring: &Ring) -> Self {
        Self::from_int(ring, 1)
    }

    /// The generator `g` (quadratic) or `ζ` (cyclotomic); `1` for degree one.
    pub fn generator(ring: &Ring) -> Self {
        Self::power_of_generator(ring, 1)
    }

    /// `g^k` reduced; for cyclotomic rings this is `ζ^k`.
    pub fn power_of_generator(ring: &Ring, k: u32) -> Self {
        if ring.degree() == 1 {
            let root = -Q::from_i64(ring.minpoly()[0]).unwrap();
            let mut x = Self::one(ring);
            let r = Self::from_rational(ring, root);
            for _ in 0..k {
                x = &x * &r;
            }
            return x;
        }
        let mut coeffs = vec![Q::zero(); k as usize + 1];
        coeffs[k as usize] = Q::one();
        let coeffs = reduce(coeffs, ring.minpoly());
        AlgNum { ring: ring.clone(), coeffs }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// `Some(q)` when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<&Q> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then(|| &self.coeffs[0])
    }

    fn same_ring(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(AlgNum { ring: self.ring.clone(), coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(AlgNum { ring: self.ring.clone(), coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_ring(other)?;
        let deg = self.coeffs.len();
        if deg == 1 {
            let c = self.coeffs[0].clone() * other.coeffs[0].clone();
            return Ok(AlgNum { ring: self.ring.clone(), coeffs: vec![c] });
        }
        let mut prod = vec![Q::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                prod[i + j] = prod[i + j].clone() + a.clone() * b.clone();
            }
        }
        Ok(AlgNum { ring: self.ring.clone(), coeffs: reduce(prod, self.ring.minpoly()) })
    }

    pub fn scale(&self, q: &Q) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.clone() * q.clone()).collect();
        AlgNum { ring: self.ring.clone(), coeffs }
    }

    /// Complex conjugate under the ring's fixed embedding.
    pub fn conjugate(&self) -> Self {
        if self.ring.is_real() {
            return self.clone();
        }
        AlgNum { ring: self.ring.clone(), coeffs: apply_table(&self.coeffs, self.ring.conj_table()) }
    }

    /// The nontrivial field automorphism σ (degree ≤ 2 only).
    pub fn galois_conjugate(&self) -> Result<Self, AlgebraError> {
        let table = self
            .ring
            .galois_table()
            .ok_or(AlgebraError::DegreeTooHigh(self.ring.degree()))?;
        Ok(AlgNum { ring: self.ring.clone(), coeffs: apply_table(&self.coeffs, table) })
    }

    pub fn invert(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&self.ring, Q::one() / q.clone()));
        }
        if self.ring.degree() == 2 {
            let s = self.galois_conjugate()?;
            let n = (self * &s).as_rational().cloned().expect("norm of a quadratic element is rational");
            return Ok(s.scale(&(Q::one() / n)));
        }
        let inv = poly_inverse_mod(&self.coeffs, self.ring.minpoly());
        Ok(AlgNum { ring: self.ring.clone(), coeffs: inv })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_mul(&other.invert()?)
    }

    /// `a · conj(a)`, rational whenever it can be.
    pub fn norm_sq(&self) -> NormSq<Q> {
        let p = self * &self.conjugate();
        match p.as_rational() {
            Some(q) => NormSq::Rational(q.clone()),
            None => NormSq::Irrational(p),
        }
    }

    pub fn invariants(&self) -> Result<Invariants<Q>, AlgebraError> {
        let s = self.galois_conjugate()?;
        let n = (self * &s).as_rational().cloned().expect("Galois norm is rational");
        let t = (self + &s).as_rational().cloned().expect("Galois trace is rational");
        Ok(Invariants { norm_sq: self.norm_sq(), galois_norm: n, galois_trace: t })
    }

    pub fn to_complex(&self) -> Complex64 {
        self.coeffs
            .iter()
            .zip(self.ring.complex_basis())
            .map(|(c, b)| b * c.approx_f64())
            .sum()
    }

    /// True when any numerator or denominator exceeds `cap`.
    pub fn height_exceeds(&self, cap: u64) -> bool {
        self.coeffs.iter().any(|c| c.height_exceeds(cap))
    }
}

/// Reduce a rational polynomial modulo a monic integer polynomial.
fn reduce<Q: Coefficient>(mut p: Vec<Q>, minpoly: &[i64]) -> Vec<Q> {
    let deg = minpoly.len() - 1;
    for k in (deg..p.len()).rev() {
        if p[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut p[k], Q::zero());
        for (j, &m) in minpoly[..deg].iter().enumerate() {
            if m != 0 {
                p[k - deg + j] = p[k - deg + j].clone() - c.clone() * Q::from_i64(m).unwrap();
            }
        }
    }
    p.resize(deg, Q::zero());
    p
}

fn trim<Q: Coefficient>(p: &mut Vec<Q>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_divrem<Q: Coefficient>(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![Q::zero()], r);
    }
    let mut q = vec![Q::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone() / lead.clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = r[k + j].clone() - c.clone() * bj.clone();
        }
        q[k] = c;
    }
    r.truncate(db.max(1));
    trim(&mut r);
    (q, r)
}

fn poly_mul_q<Q: Coefficient>(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

fn poly_sub_q<Q: Coefficient>(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let mut out: Vec<Q> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Q::zero);
            let y = b.get(i).cloned().unwrap_or_else(Q::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `m` by the extended Euclidean algorithm.
fn poly_inverse_mod<Q: Coefficient>(a: &[Q], minpoly: &[i64]) -> Vec<Q> {
    let m: Vec<Q> = minpoly.iter().map(|&c| Q::from_i64(c).unwrap()).collect();
    let mut a = a.to_vec();
    trim(&mut a);
    // invariant: s_i · a ≡ r_i (mod m)
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut s0, mut s1) = (vec![Q::zero()], vec![Q::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub_q(&s0, &poly_mul_q(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is a nonzero constant because m is irreducible
    let c = r0[0].clone();
    let inv: Vec<Q> = s0.into_iter().map(|x| x / c.clone()).collect();
    reduce(inv, minpoly)
}

impl<Q: Coefficient> PartialEq for AlgNum<Q> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.coeffs == other.coeffs
    }
}

impl<Q: Coefficient> Eq for AlgNum<Q> {}

impl<Q: Coefficient> Hash for AlgNum<Q> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state)
    }
}

impl<Q: Coefficient> PartialOrd for AlgNum<Q> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the coefficient vector. Not a field order; only used to
/// make canonical forms and pool listings deterministic.
impl<Q: Coefficient> Ord for AlgNum<Q> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<Q: Coefficient> $tr<&AlgNum<Q>> for &AlgNum<Q> {
            type Output = AlgNum<Q>;
            /// Panics if the operands live in different rings.
            fn $method(self, rhs: &AlgNum<Q>) -> AlgNum<Q> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<Q: Coefficient> $tr for AlgNum<Q> {
            type Output = AlgNum<Q>;
            fn $method(self, rhs: AlgNum<Q>) -> AlgNum<Q> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<Q: Coefficient> Neg for &AlgNum<Q> {
    type Output = AlgNum<Q>;
    fn neg(self) -> AlgNum<Q> {
        AlgNum { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<Q: Coefficient> Neg for AlgNum<Q> {
    type Output = AlgNum<Q>;
    fn neg(self) -> AlgNum<Q> {
        -&self
    }
}

impl<Q: Coefficient> fmt::Debug for AlgNum<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [{}]", self.ring)
    }
}
