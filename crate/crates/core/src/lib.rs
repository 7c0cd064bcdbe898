//! Exact ray pools in dimension 3 and Kochen–Specker colorability.
//!
//! The algebraic core is generic over the rational coefficient type and the
//! numeric kernels over the float type; the aliases below fix the types used
//! by every pipeline.

pub mod algebra;
pub mod bks;
pub mod csw;
pub mod hypergraph;
pub mod minimize;
pub mod rays;
pub mod satcore;
pub mod structure;
pub mod survey;

pub use algebra::{AlgNum, Coefficient, Generator, Ring, RingKind};
pub use hypergraph::OrthoGraph;
pub use rays::{Alphabet, Provenance, Ray, RayPool};

/// Arbitrary-precision rational coefficients.
pub type Rational = num_rational::BigRational;
/// Field element with arbitrary-precision coefficients.
pub type Exact = AlgNum<Rational>;
/// Ray with arbitrary-precision coefficients.
pub type ExactRay = Ray<Rational>;
/// Pool with arbitrary-precision coefficients.
pub type ExactPool = RayPool<Rational>;
