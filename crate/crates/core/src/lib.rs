//! Exact computations in universal enveloping algebras of Lie-Rinehart
//! algebras over polynomial rings: PBW normal forms, the bialgebroid and
//! left Hopf structure, symmetrisation, coring sections, Hopf kernels,
//! cocycles and crossed products.

pub mod catalog;
pub mod combinat;
pub mod derivation;
pub mod error;
pub mod lie_rinehart;
pub mod linalg;
mod memo;
pub mod pbw_maps;
pub mod poly;
pub mod products;
pub mod scalar;
pub mod uea;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// The coefficient field used above the core-algebra layer.
pub type Rational = num_rational::BigRational;
pub type Poly = poly::Poly<Rational>;
pub type Derivation = derivation::Derivation<Rational>;
