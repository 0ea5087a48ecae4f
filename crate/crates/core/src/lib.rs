//! Sieving prime-degree Galois number fields for failures of the
//! norm-Euclidean property, plus the explicit constants that bound where
//! a norm-Euclidean field can still hide.
//!
//! Module map:
//!
//! * [`primes`] - sieves, deterministic primality, modular arithmetic.
//! * [`character`] - one fixed Dirichlet character of prime order `l` modulo a prime `f`.
//! * [`eisenstein`] - arithmetic in `Z[w]` and the cubic residue symbol via reciprocity.
//! * [`heilbronn`] - witness conditions, the per-conductor sieve and the range driver.
//! * [`bounds`] - Burgess constants, auxiliary constants and discriminant bounds.

pub mod bounds;
pub mod character;
pub mod eisenstein;
mod error;
pub mod heilbronn;
pub mod primes;

pub use error::{Error, Result};
