use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used for the basis coefficients of an [`AlgNum`](super::AlgNum).
///
/// Implemented for every `Ratio<T>` over a signed integer type, so both
/// `BigRational` and fixed-width ratios such as `Ratio<i64>` work. Pipelines use
/// the arbitrary-precision form.
pub trait Coefficient:
    Clone + Eq + Ord + Hash + Debug + Display + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Numerator reduced into `[0, p)`.
    fn numer_residue(&self, p: u64) -> u64;
    /// Denominator reduced into `[0, p)`.
    fn denom_residue(&self, p: u64) -> u64;
    fn is_integral(&self) -> bool;
    /// True when the numerator or denominator exceeds `cap` in absolute value.
    fn height_exceeds(&self, cap: u64) -> bool;
    fn approx_f64(&self) -> f64;
    /// Positive rational `c` such that every `v / c` is an integer and the
    /// resulting integers are coprime. Returns one for an all-zero slice.
    fn content(values: &[Self]) -> Self;
    fn parse_rational(s: &str) -> Option<Self>;
    /// Numerator and denominator as decimal strings (denominator positive).
    fn parts(&self) -> (String, String);
}

fn residue<T>(x: &T, p: u64) -> u64
where
    T: Integer + Clone + FromPrimitive + ToPrimitive,
{
    let m = T::from_u64(p).expect("modulus fits the integer type");
    x.mod_floor(&m).to_u64().expect("residue fits u64")
}

impl<T> Coefficient for Ratio<T>
where
    T: Integer
        + Signed
        + Clone
        + Hash
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + FromStr
        + Send
        + Sync
        + 'static,
    Ratio<T>: FromPrimitive,
{
    fn numer_residue(&self, p: u64) -> u64 {
        residue(self.numer(), p)
    }

    fn denom_residue(&self, p: u64) -> u64 {
        residue(self.denom(), p)
    }

    fn is_integral(&self) -> bool {
        self.denom().is_one()
    }

    fn height_exceeds(&self, cap: u64) -> bool {
        let c = T::from_u64(cap).expect("cap fits the integer type");
        self.numer().abs() > c || self.denom().abs() > c
    }

    fn approx_f64(&self) -> f64 {
        let n = self.numer().to_f64().unwrap_or(f64::NAN);
        let d = self.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    }

    fn content(values: &[Self]) -> Self {
        let mut g = T::zero();
        let mut l = T::one();
        for v in values.iter().filter(|v| !v.is_zero()) {
            g = g.gcd(v.numer());
            l = l.lcm(v.denom());
        }
        if g.is_zero() {
            return Self::one();
        }
        Ratio::new(g, l)
    }

    fn parse_rational(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n = T::from_str(n.trim()).ok()?;
                let d = T::from_str(d.trim()).ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(Ratio::new(n, d))
            }
            None => T::from_str(s).ok().map(Ratio::from_integer),
        }
    }

    fn parts(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }
}
