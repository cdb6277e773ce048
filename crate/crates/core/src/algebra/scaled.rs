use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::Rational;

/// A rational vector over one common denominator, for fast exact sums.
///
/// When every numerator fits comfortably in an `i64` the sums run in `i128`;
/// otherwise they fall back to big integers.
#[derive(Clone, Debug)]
pub(crate) struct ScaledVector {
    den: BigInt,
    nums: Vec<BigInt>,
    small: Option<Vec<i64>>,
}

/// Keeps `terms * max|num|` far below `i128::MAX`.
const SMALL_LIMIT: i64 = 1 << 62;

impl ScaledVector {
    pub fn new(values: &[Rational]) -> Self {
        let den = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let nums: Vec<BigInt> = values.iter().map(|v| v.numer() * (&den / v.denom())).collect();
        let small = nums
            .iter()
            .map(|x| x.to_i64().filter(|v| v.unsigned_abs() < SMALL_LIMIT as u64))
            .collect::<Option<Vec<i64>>>();
        ScaledVector { den, nums, small }
    }

    /// Exact `sum_{i in ids} values[i]`.
    pub fn sum<I: IntoIterator<Item = usize>>(&self, ids: I) -> Rational {
        Rational::new(self.sum_numerators(ids), self.den.clone())
    }

    pub fn sum_numerators<I: IntoIterator<Item = usize>>(&self, ids: I) -> BigInt {
        match &self.small {
            Some(small) => BigInt::from(ids.into_iter().map(|i| small[i] as i128).sum::<i128>()),
            None => ids.into_iter().map(|i| &self.nums[i]).sum(),
        }
    }

    pub fn small(&self) -> Option<&[i64]> {
        self.small.as_deref()
    }

    pub fn nums(&self) -> &[BigInt] {
        &self.nums
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }
}
