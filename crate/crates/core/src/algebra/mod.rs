//! Exact arithmetic in ℚ, quadratic fields and cyclotomic fields.

mod coeff;
pub mod modular;
mod number;
mod ring;
mod text;

pub use coeff::Coefficient;
pub use number::{AlgNum, Invariants, NormSq};
pub use ring::{cyclotomic_polynomial, Generator, Ring, RingKind, RingSpec};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands live in different rings ({0} vs {1})")]
    RingMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient vector of length {got} exceeds field degree {max}")]
    Degree { got: usize, max: usize },
    #[error("Galois invariants need a field of degree at most 2, got {0}")]
    DegreeTooHigh(usize),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Exact, Rational};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn int(r: &Ring, n: i64) -> Exact {
        Exact::from_int(r, n)
    }

    #[test]
    fn omega_squared() {
        let r = Ring::cyclotomic(3).unwrap();
        let w = Exact::generator(&r);
        let w2 = &w * &w;
        assert_eq!(w2, -(int(&r, 1) + w.clone()));
        assert!((int(&r, 1) + w.clone() + w2).is_zero());
    }

    #[test]
    fn golden_ratio_identities() {
        let r = Ring::quadratic(5, Generator::Half).unwrap();
        let phi = Exact::generator(&r);
        assert_eq!(&phi * &phi, &phi + &int(&r, 1));
        assert_eq!(phi.invert().unwrap(), &phi - &int(&r, 1));
        assert_eq!(phi.conjugate(), phi);
    }

    #[test]
    fn heegner_generator() {
        let r = Ring::quadratic(-7, Generator::Half).unwrap();
        let a = Exact::generator(&r);
        assert_eq!(&a * &a, &a - &int(&r, 2));
        assert_eq!(a.conjugate(), &int(&r, 1) - &a);
        let inv = a.invariants().unwrap();
        assert_eq!(inv.norm_sq, NormSq::Rational(q(2, 1)));
        assert_eq!(inv.galois_norm, q(2, 1));
        assert_eq!(inv.galois_trace, q(1, 1));
    }

    #[test]
    fn sqrt_minus_two_conjugate() {
        let r = Ring::quadratic(-2, Generator::Sqrt).unwrap();
        let s = Exact::generator(&r);
        assert_eq!(s.conjugate(), -s.clone());
        assert_eq!(s.norm_sq(), NormSq::Rational(q(2, 1)));
    }

    #[test]
    fn omega_invariants() {
        let r = Ring::cyclotomic(3).unwrap();
        let inv = Exact::generator(&r).invariants().unwrap();
        assert_eq!(inv.galois_norm, q(1, 1));
        assert_eq!(inv.galois_trace, q(-1, 1));
        let one = int(&r, 1).invariants().unwrap();
        assert_eq!((one.norm_sq, one.galois_norm, one.galois_trace), (NormSq::Rational(q(1, 1)), q(1, 1), q(2, 1)));
    }

    #[test]
    fn zeta6_inverse() {
        let r = Ring::cyclotomic(6).unwrap();
        let z = Exact::generator(&r);
        assert_eq!(z.invert().unwrap(), Exact::power_of_generator(&r, 5));
        assert!((&z * &z.invert().unwrap()).is_one());
    }

    #[test]
    fn zeta5_sum_nonzero() {
        let r = Ring::cyclotomic(5).unwrap();
        let z = Exact::generator(&r);
        let s = int(&r, 1) + z.clone() + &z * &z;
        assert!(!s.is_zero());
    }

    #[test]
    fn invert_rational_and_zero() {
        let r = Ring::rational();
        assert_eq!(int(&r, 2).invert().unwrap(), Exact::from_rational(&r, q(1, 2)));
        assert_eq!(int(&r, 0).invert(), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn galois_rejected_above_degree_two() {
        let r = Ring::cyclotomic(5).unwrap();
        assert!(matches!(Exact::generator(&r).invariants(), Err(AlgebraError::DegreeTooHigh(4))));
    }

    #[test]
    fn real_quadratic_norm_sq_can_be_irrational() {
        let r = Ring::quadratic(5, Generator::Half).unwrap();
        assert!(matches!(Exact::generator(&r).norm_sq(), NormSq::Irrational(_)));
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = Exact::generator(&Ring::cyclotomic(3).unwrap());
        let b = Exact::generator(&Ring::cyclotomic(4).unwrap());
        assert!(matches!(a.checked_add(&b), Err(AlgebraError::RingMismatch(..))));
    }

    #[test]
    fn text_round_trip_examples() {
        let r = Ring::quadratic(-7, Generator::Half).unwrap();
        let x = Exact::from_coeffs(&r, vec![q(3, 2), q(-1, 1)]).unwrap();
        assert_eq!(x.to_string(), "3/2 - g");
        assert_eq!(Exact::parse(&r, "3/2 - g").unwrap(), x);
        assert_eq!(Exact::parse(&r, "-1/3*g + 2").unwrap().to_string(), "2 - 1/3*g");
        let c = Ring::cyclotomic(12).unwrap();
        let z = Exact::parse(&c, "z^5").unwrap();
        assert_eq!(Exact::parse(&c, &z.to_string()).unwrap(), z);
        assert_eq!(Exact::zero(&c).to_string(), "0");
    }

    #[test]
    fn small_ratio_coefficients_work() {
        type Small = AlgNum<num_rational::Ratio<i64>>;
        let r = Ring::quadratic(5, Generator::Half).unwrap();
        let phi = Small::generator(&r);
        assert_eq!(&phi * &phi, &phi + &Small::one(&r));
    }

    fn rings() -> Vec<Ring> {
        vec![
            Ring::rational(),
            Ring::quadratic(2, Generator::Sqrt).unwrap(),
            Ring::quadratic(5, Generator::Half).unwrap(),
            Ring::quadratic(-2, Generator::Sqrt).unwrap(),
            Ring::quadratic(-7, Generator::Half).unwrap(),
            Ring::cyclotomic(3).unwrap(),
            Ring::cyclotomic(5).unwrap(),
            Ring::cyclotomic(12).unwrap(),
        ]
    }

    fn element(ring: &Ring, raw: &[(i64, i64)]) -> Exact {
        let coeffs = raw.iter().take(ring.degree()).map(|&(n, d)| q(n, d)).collect();
        Exact::from_coeffs(ring, coeffs).unwrap()
    }

    fn coeff_strategy() -> impl Strategy<Value = Vec<(i64, i64)>> {
        prop::collection::vec((-9i64..=9, 1i64..=6), 4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_laws(ri in 0usize..8, a in coeff_strategy(), b in coeff_strategy(), c in coeff_strategy()) {
            let ring = &rings()[ri];
            let (a, b, c) = (element(ring, &a), element(ring, &b), element(ring, &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &(-&a)).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.invert().unwrap()).is_one());
            }
        }

        #[test]
        fn conjugation_is_an_involutive_homomorphism(ri in 0usize..8, a in coeff_strategy(), b in coeff_strategy()) {
            let ring = &rings()[ri];
            let (a, b) = (element(ring, &a), element(ring, &b));
            prop_assert_eq!(a.conjugate().conjugate(), a.clone());
            prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
            prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        }

        #[test]
        fn norm_sq_positive_definite(ri in 0usize..8, a in coeff_strategy()) {
            let ring = &rings()[ri];
            let a = element(ring, &a);
            if let NormSq::Rational(n) = a.norm_sq() {
                prop_assert!(n >= q(0, 1));
                prop_assert_eq!(n == q(0, 1), a.is_zero());
            }
        }

        #[test]
        fn text_round_trips(ri in 0usize..8, a in coeff_strategy()) {
            let ring = &rings()[ri];
            let a = element(ring, &a);
            prop_assert_eq!(Exact::parse(ring, &a.to_string()).unwrap(), a);
        }

        #[test]
        fn embedding_is_a_homomorphism(ri in 0usize..8, a in coeff_strategy(), b in coeff_strategy()) {
            let ring = &rings()[ri];
            let (a, b) = (element(ring, &a), element(ring, &b));
            let e = ring.embedding();
            let (ia, ib) = (e.image(&a).unwrap(), e.image(&b).unwrap());
            prop_assert_eq!(e.image(&(&a * &b)).unwrap(), modular::mul_mod(ia, ib, e.p));
            prop_assert_eq!(e.image(&(&a + &b)).unwrap(), modular::add_mod(ia, ib, e.p));
        }
    }
}
