use num_complex::Complex64;

use super::RayError;
use crate::algebra::{AlgNum, Coefficient, Ring};

/// Canonical representative of a projective ray in dimension 3.
///
/// Real rings: divide by the first nonzero coordinate, then clear the joint
/// rational content of all coefficient vectors, so the first nonzero entry is a
/// positive rational and the rest are coprime. Complex rings: the first nonzero
/// coordinate is exactly 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ray<Q: Coefficient> {
    coords: [AlgNum<Q>; 3],
}

impl<Q: Coefficient> Ray<Q> {
    pub fn canonicalize(v: [AlgNum<Q>; 3]) -> Result<Self, RayError> {
        let ring = v[0].ring().clone();
        if v[1..].iter().any(|x| x.ring() != &ring) {
            return Err(RayError::RingMismatch);
        }
        let f = v.iter().position(|x| !x.is_zero()).ok_or(RayError::ZeroVector)?;
        let inv = v[f].invert()?;
        Ok(Self::scaled(&v, f, &inv))
    }

    /// `v` times `inv` (the inverse of `v[first]`), then content-cleared.
    pub(crate) fn scaled(v: &[AlgNum<Q>; 3], first: usize, inv: &AlgNum<Q>) -> Self {
        let ring = inv.ring();
        let mut coords: [AlgNum<Q>; 3] = std::array::from_fn(|k| {
            if k < first || v[k].is_zero() {
                AlgNum::zero(ring)
            } else if k == first {
                AlgNum::one(ring)
            } else {
                &v[k] * inv
            }
        });
        if ring.is_real() {
            let all: Vec<Q> = coords.iter().flat_map(|c| c.coeffs().iter().cloned()).collect();
            let content = Q::content(&all);
            if !content.is_one() {
                let s = Q::one() / content;
                for c in &mut coords {
                    *c = c.scale(&s);
                }
            }
        }
        Ray { coords }
    }

    /// Wraps coordinates that are already canonical; checked.
    pub fn from_canonical(coords: [AlgNum<Q>; 3]) -> Result<Self, RayError> {
        let r = Self::canonicalize(coords.clone())?;
        if r.coords != coords {
            return Err(RayError::NotCanonical);
        }
        Ok(r)
    }

    pub fn coords(&self) -> &[AlgNum<Q>; 3] {
        &self.coords
    }

    pub fn ring(&self) -> &Ring {
        self.coords[0].ring()
    }

    pub fn is_real(&self) -> bool {
        self.ring().is_real()
    }

    /// Exact `Σ conj(v_k) w_k`.
    pub fn hermitian_dot(&self, other: &Self) -> AlgNum<Q> {
        let mut acc = AlgNum::zero(self.ring());
        for (a, b) in self.coords.iter().zip(&other.coords) {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc = &acc + &(&a.conjugate() * b);
        }
        acc
    }

    pub fn is_orthogonal(&self, other: &Self) -> bool {
        self.hermitian_dot(other).is_zero()
    }

    /// `‖v‖²` of this representative (an element of the real subfield).
    pub fn norm_sq(&self) -> AlgNum<Q> {
        self.hermitian_dot(self)
    }

    /// Cofactor vector of `(conj v, conj w)`: orthogonal to both inputs. For
    /// real rings this is the ordinary cross product.
    pub fn complement(&self, other: &Self) -> [AlgNum<Q>; 3] {
        let a: Vec<AlgNum<Q>> = self.coords.iter().map(AlgNum::conjugate).collect();
        let b: Vec<AlgNum<Q>> = other.coords.iter().map(AlgNum::conjugate).collect();
        [
            &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
            &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
            &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
        ]
    }

    pub fn to_complex(&self) -> [Complex64; 3] {
        std::array::from_fn(|k| self.coords[k].to_complex())
    }

    pub fn height_exceeds(&self, cap: u64) -> bool {
        self.coords.iter().any(|c| c.height_exceeds(cap))
    }
}

impl<Q: Coefficient> std::fmt::Display for Ray<Q> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;
    use crate::{Exact, Rational};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn ints(r: &Ring, v: [i64; 3]) -> [Exact; 3] {
        v.map(|x| Exact::from_int(r, x))
    }

    #[test]
    fn sign_and_content() {
        let r = Ring::rational();
        let a = Ray::canonicalize(ints(&r, [-1, 0, 2])).unwrap();
        assert_eq!(a.coords(), &ints(&r, [1, 0, -2]));
        let b = Ray::canonicalize(ints(&r, [2, 4, 6])).unwrap();
        assert_eq!(b.coords(), &ints(&r, [1, 2, 3]));
        let c = Ray::canonicalize(ints(&r, [0, -3, 6])).unwrap();
        assert_eq!(c.coords(), &ints(&r, [0, 1, -2]));
        assert!(matches!(Ray::canonicalize(ints(&r, [0, 0, 0])), Err(RayError::ZeroVector)));
    }

    #[test]
    fn eisenstein_first_coordinate_is_one() {
        let r = Ring::cyclotomic(3).unwrap();
        let w = Exact::generator(&r);
        let ray = Ray::canonicalize([w.clone(), Exact::one(&r), Exact::zero(&r)]).unwrap();
        assert_eq!(ray.coords()[0], Exact::one(&r));
        assert_eq!(ray.coords()[1], &w * &w);
        assert_eq!(Ray::canonicalize(ray.coords().clone()).unwrap(), ray);
    }

    #[test]
    fn golden_multiples_collapse() {
        let r = Ring::quadratic(5, Generator::Half).unwrap();
        let phi = Exact::generator(&r);
        let a = Ray::canonicalize([phi.clone(), phi.clone(), Exact::zero(&r)]).unwrap();
        let b = Ray::canonicalize(ints(&r, [1, 1, 0])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dot_examples() {
        let r = Ring::rational();
        let d = |x, y| Ray::canonicalize(ints(&r, x)).unwrap().hermitian_dot(&Ray::canonicalize(ints(&r, y)).unwrap());
        assert!(d([1, 1, 0], [1, -1, 0]).is_zero());
        assert!(d([1, 1, -1], [1, 1, 2]).is_zero());
        let c = Ring::cyclotomic(3).unwrap();
        let w = Exact::generator(&c);
        let v = Ray::canonicalize([Exact::one(&c), w.clone(), &w * &w]).unwrap();
        assert_eq!(v.hermitian_dot(&v), Exact::from_int(&c, 3));
    }

    #[test]
    fn complement_is_orthogonal() {
        let c = Ring::cyclotomic(3).unwrap();
        let w = Exact::generator(&c);
        let v = Ray::canonicalize([Exact::one(&c), w.clone(), Exact::zero(&c)]).unwrap();
        let u = Ray::canonicalize([Exact::zero(&c), Exact::one(&c), w.clone()]).unwrap();
        let x = Ray::canonicalize(v.complement(&u)).unwrap();
        assert!(x.is_orthogonal(&v) && x.is_orthogonal(&u));
    }

    fn rings() -> Vec<Ring> {
        vec![
            Ring::rational(),
            Ring::quadratic(2, Generator::Sqrt).unwrap(),
            Ring::quadratic(5, Generator::Half).unwrap(),
            Ring::quadratic(-7, Generator::Half).unwrap(),
            Ring::cyclotomic(3).unwrap(),
            Ring::cyclotomic(8).unwrap(),
        ]
    }

    fn elem(r: &Ring, raw: &[i64]) -> Exact {
        let c = raw.iter().take(r.degree()).map(|&n| Rational::from_integer(BigInt::from(n))).collect();
        Exact::from_coeffs(r, c).unwrap()
    }

    proptest! {
        #[test]
        fn idempotent_and_scaling_invariant(
            ri in 0usize..6,
            v in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 3),
            s in prop::collection::vec(-5i64..=5, 4),
        ) {
            let r = &rings()[ri];
            let v: [Exact; 3] = std::array::from_fn(|k| elem(r, &v[k]));
            let s = elem(r, &s);
            prop_assume!(v.iter().any(|x| !x.is_zero()) && !s.is_zero());
            let a = Ray::canonicalize(v.clone()).unwrap();
            prop_assert_eq!(Ray::canonicalize(a.coords().clone()).unwrap(), a.clone());
            let scaled = v.map(|x| &x * &s);
            prop_assert_eq!(Ray::canonicalize(scaled).unwrap(), a);
        }
    }
}
