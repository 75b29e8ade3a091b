//! Exact algebra for finite free Hopf algebras over localized orders in
//! number fields: integrals and duals, comodules and fixed points,
//! equivariant symmetric bundles, principal homogeneous spaces, codifferents
//! and the twist of a bundle by a torsor.
//!
//! All arithmetic is exact. Base rings are S-localized orders, which keeps
//! membership, unit and lattice questions decidable by denominator
//! inspection and Hermite normal forms.

pub mod error;
pub mod rational;
pub mod field;
pub mod hnf;
pub mod lattice;
pub mod linalg;
pub mod ring;

pub use error::{Error, Result};
pub use field::{FieldElem, NumberField};
pub use ring::{InvertedPrimes, PrincipalIdeal, RingSpec};
