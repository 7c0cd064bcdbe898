use super::RayError;
use crate::algebra::{AlgNum, Coefficient, Ring};

/// Finite coordinate alphabet. Always contains 0; sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet<Q: Coefficient> {
    ring: Ring,
    symbols: Vec<AlgNum<Q>>,
}

impl<Q: Coefficient> Alphabet<Q> {
    /// `{0, ±1} ∪ {±s : s ∈ extra}`.
    pub fn signed(ring: &Ring, extra: &[AlgNum<Q>]) -> Result<Self, RayError> {
        let mut symbols = vec![AlgNum::one(ring), -AlgNum::one(ring)];
        for s in extra {
            symbols.push(s.clone());
            symbols.push(-s.clone());
        }
        Self::exact(ring, symbols)
    }

    /// Exactly the given symbols plus 0, without closing under negation.
    pub fn exact(ring: &Ring, symbols: Vec<AlgNum<Q>>) -> Result<Self, RayError> {
        if symbols.iter().any(|s| s.ring() != ring) {
            return Err(RayError::RingMismatch);
        }
        let mut symbols = symbols;
        symbols.push(AlgNum::zero(ring));
        symbols.sort();
        symbols.dedup();
        Ok(Alphabet { ring: ring.clone(), symbols })
    }

    /// `{0} ∪ μ_n` inside `ℚ(ζ_n)`.
    pub fn roots_of_unity(ring: &Ring, n: u32) -> Result<Self, RayError> {
        let syms = (0..n).map(|k| AlgNum::power_of_generator(ring, k)).collect();
        Self::exact(ring, syms)
    }

    pub fn union(&self, other: &Self) -> Result<Self, RayError> {
        if self.ring != other.ring {
            return Err(RayError::RingMismatch);
        }
        Self::exact(&self.ring, self.symbols.iter().chain(&other.symbols).cloned().collect())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn symbols(&self) -> &[AlgNum<Q>] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}
