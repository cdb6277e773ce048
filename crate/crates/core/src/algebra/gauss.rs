use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use super::Rational;
use crate::{Error, Result};

/// `q^e` as a big integer.
pub fn qpow(q: u64, e: u64) -> BigInt {
    Pow::pow(BigInt::from(q), e)
}

/// `q^e` for a possibly negative exponent.
pub fn rational_qpow(q: u64, e: i64) -> Rational {
    let base = qpow(q, e.unsigned_abs());
    if e >= 0 {
        Rational::from_integer(base)
    } else {
        Rational::new(BigInt::one(), base)
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// The Gaussian coefficient `[n over k]_q`: the number of `k`-dimensional
/// subspaces of `F_q^n`, and zero unless `0 <= k <= n`.
///
/// Evaluated as the product `prod_{i=1..k} (q^{n-i+1} - 1) / (q^i - 1)`; the
/// running product after `i` factors is `[n over i]_q`, so every division is
/// exact.
pub fn gaussian(n: i64, k: i64, q: u64) -> Result<BigInt> {
    if q < 2 {
        return Err(Error::InvalidQ(q));
    }
    Ok(gauss(n, k, q))
}

/// Number of points of `PG(n-1, q)`, i.e. `[n over 1]_q`.
pub fn gaussm(n: i64, q: u64) -> Result<BigInt> {
    gaussian(n, 1, q)
}

/// [`gaussian`] for callers that already validated `q >= 2`.
pub(crate) fn gauss(n: i64, k: i64, q: u64) -> BigInt {
    debug_assert!(q >= 2);
    if k < 0 || k > n {
        return BigInt::zero();
    }
    // symmetric, so use the shorter product
    let k = k.min(n - k);
    let qb = BigInt::from(q);
    let one = BigInt::one();
    let mut acc = BigInt::one();
    for i in 1..=k {
        let num = Pow::pow(&qb, (n - i + 1) as u64) - &one;
        let den = Pow::pow(&qb, i as u64) - &one;
        acc = acc * num / den;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        assert_eq!(gaussian(4, 2, 2).unwrap(), BigInt::from(35));
        assert_eq!(gaussian(7, 0, 3).unwrap(), BigInt::from(1));
        assert_eq!(gaussian(3, 5, 2).unwrap(), BigInt::from(0));
        assert_eq!(gaussian(3, -1, 2).unwrap(), BigInt::from(0));
        assert_eq!(gaussm(4, 2).unwrap(), BigInt::from(15));
        assert_eq!(gaussm(0, 5).unwrap(), BigInt::from(0));
        assert_eq!(gaussm(2, 3).unwrap(), BigInt::from(4));
    }

    #[test]
    fn rejects_small_q() {
        assert_eq!(gaussian(4, 2, 1), Err(Error::InvalidQ(1)));
        assert_eq!(gaussian(4, 2, 0), Err(Error::InvalidQ(0)));
    }

    /// Counts k x n RREF matrices over F_2 directly: pivot columns, then
    /// every filling of the free positions.
    fn brute_rref_count(n: usize, k: usize) -> u64 {
        let mut total = 0u64;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let pivots: alloc::vec::Vec<usize> = (0..n).filter(|c| mask >> c & 1 == 1).collect();
            let mut free = 0;
            for (r, &c) in pivots.iter().enumerate() {
                free += (n - c - 1) - (k - 1 - r);
            }
            total += 1 << free;
        }
        total
    }

    #[test]
    fn matches_rref_enumeration_over_f2() {
        for n in 0..=8usize {
            for k in 0..=n {
                assert_eq!(
                    gaussian(n as i64, k as i64, 2).unwrap(),
                    BigInt::from(brute_rref_count(n, k)),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn rational_powers() {
        assert_eq!(rational_qpow(3, -2), Rational::new(1.into(), 9.into()));
        assert_eq!(rational_qpow(2, 5), Rational::from_integer(32.into()));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
