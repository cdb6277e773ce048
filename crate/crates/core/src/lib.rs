//! Exact machinery for counting nonnegative k-subspaces of sum-zero
//! weightings of the points of `F_q^n`.
//!
//! Everything here is `no_std` with `alloc`: finite fields and Gaussian
//! coefficients ([`algebra`]), projective points and subspaces of `F_q^n`
//! ([`geometry`]), sum-zero weightings ([`weights`]), Grassmann-scheme
//! operators ([`scheme`]), bad configurations and the counting bounds
//! ([`extremal`]), and the exact feasibility oracle with the minimum searches
//! ([`search`]).
//!
//! All arithmetic on weights is exact: integers are [`BigInt`] and weights are
//! [`Rational`]s, so every identity below is checked with `==`, never with a
//! tolerance.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod error;
pub mod extremal;
pub mod geometry;
pub mod scheme;
pub mod search;
pub mod pool;
pub mod weights;

pub use algebra::{gaussian, gaussm, BigInt, FiniteField, Rational};
pub use error::{Error, Result};
pub use geometry::{GeometryContext, Subspace, SubspaceIndex};
pub use weights::{Family, WeightFunction, WeightVector};
