//! Exact arithmetic: finite fields, big integers, rationals and Gaussian
//! coefficients.

mod field;
mod gauss;
mod scaled;

pub use field::{Elem, FiniteField};
pub use gauss::{factorial, gaussian, gaussm, qpow, rational_qpow};
pub(crate) use gauss::gauss;
pub(crate) use scaled::ScaledVector;

/// Arbitrary-precision signed integer.
pub use num_bigint::BigInt;

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// `num / den` as a reduced [`Rational`].
pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

/// `value / 1`.
pub fn integer(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}
