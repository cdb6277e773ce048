//! The Gaussian-coefficient estimates the counting arguments rest on, as
//! exact `(lhs, rhs)` pairs so callers can compare them.

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::algebra::{gauss, integer, rational_qpow, Rational};

fn qp(q: u64, e: i64) -> BigInt {
    Pow::pow(BigInt::from(q), e as u64)
}

fn binomial2(x: i64) -> BigInt {
    BigInt::from(x * (x - 1) / 2)
}

/// `[n over k] <= 2 q^{k(n-k)}` (meaningful for `q >= 3`).
pub fn gauss_upper_bound(n: i64, k: i64, q: u64) -> (BigInt, BigInt) {
    (gauss(n, k, q), 2 * qp(q, k * (n - k)))
}

/// `[n-1 over k-1] >= q^{(k-1)(n-k)}`, strict once `k >= 2`.
pub fn pencil_lower_bound(n: i64, k: i64, q: u64) -> (BigInt, BigInt) {
    (gauss(n - 1, k - 1, q), qp(q, (k - 1) * (n - k)))
}

/// `q^{a(k-1)} [n-a-1 over k-1] >= (1 - 2/q^{n-k-a+1}) [n-1 over k-1]` for
/// `0 <= k <= a <= n-k`.
pub fn nk_tail_bound(n: i64, k: i64, a: i64, q: u64) -> (Rational, Rational) {
    let lhs = rational_qpow(q, a * (k - 1)) * integer(gauss(n - a - 1, k - 1, q));
    let factor = Rational::one() - integer(2) * rational_qpow(q, -(n - k - a + 1));
    (lhs, factor * integer(gauss(n - 1, k - 1, q)))
}

/// `q^{(k-1)(k-2)} [k-1 over 1] [n-k-1 over k-2] / [n-1 over k-1]`, which is
/// below `q^{-(n-2k+1)}` whenever `n >= 2k + 1`.
pub fn ac_km_ratio(n: i64, k: i64, q: u64) -> Rational {
    let num = qp(q, (k - 1) * (k - 2)) * gauss(k - 1, 1, q) * gauss(n - k - 1, k - 2, q);
    Rational::new(num, gauss(n - 1, k - 1, q))
}

/// Subspaces through `x` independent chosen points, one per member:
/// `[k over 1]^x [n-x over k-x] <= 2^{x+1} q^{x(k-1) + (n-k)(k-x)}`.
pub fn bad_number_full(x: i64, n: i64, k: i64, q: u64) -> (BigInt, BigInt) {
    let lhs = Pow::pow(gauss(k, 1, q), x as u64) * gauss(n - x, k - x, q);
    let rhs = (BigInt::one() << (x + 1) as usize) * qp(q, x * (k - 1) + (n - k) * (k - x));
    (lhs, rhs)
}

/// The `m < x` analogue:
/// `[k over 1]^{m-1} C(x-1, 2) [m over 1] [n-m over k-m] <= C(x-1, 2) 2^{m+1} q^{(m-1)k + (n-k)(k-m)}`.
pub fn bad_number_partial(x: i64, m: i64, n: i64, k: i64, q: u64) -> (BigInt, BigInt) {
    let c = binomial2(x - 1);
    let lhs = Pow::pow(gauss(k, 1, q), (m - 1) as u64) * &c * gauss(m, 1, q) * gauss(n - m, k - m, q);
    let rhs = c * (BigInt::one() << (m + 1) as usize) * qp(q, (m - 1) * k + (n - k) * (k - m));
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upper_bound_grid() {
        for q in [3u64, 4, 5, 7, 8, 9] {
            for n in 0..=20 {
                for k in 0..=n {
                    let (l, r) = gauss_upper_bound(n, k, q);
                    assert!(l <= r, "{n} {k} {q}");
                }
            }
        }
        // fails for q = 2: [2 over 1]_2 = 3 <= 4 holds but [4 over 2]_2 = 35 > 32
        let (l, r) = gauss_upper_bound(4, 2, 2);
        assert!(l > r);
    }

    #[test]
    fn pencil_bound() {
        for q in [2u64, 3, 4, 5] {
            for n in 2..=14 {
                for k in 1..n {
                    let (l, r) = pencil_lower_bound(n, k, q);
                    if k == 1 {
                        assert_eq!(l, r);
                    } else {
                        assert!(l > r, "{n} {k} {q}");
                    }
                }
            }
        }
    }

    #[test]
    fn tail_bound_grid() {
        for q in [2u64, 3, 4, 5] {
            for n in 0..=16 {
                for k in 0..=n {
                    for a in k..=n - k {
                        let (l, r) = nk_tail_bound(n, k, a, q);
                        assert!(l >= r, "{n} {k} {a} {q}");
                    }
                }
            }
        }
    }

    #[test]
    fn ac_km_grid() {
        for q in 2u64..=5 {
            for n in 3..=14 {
                for k in 1..=(n - 1) / 2 {
                    assert!(ac_km_ratio(n, k, q) < rational_qpow(q, -(n - 2 * k + 1)), "{n} {k} {q}");
                }
            }
        }
    }

    #[test]
    fn bad_number_grid() {
        for q in [3u64, 4, 5] {
            for n in 2..=14 {
                for k in 2..=n {
                    for x in 2..=k {
                        let (l, r) = bad_number_full(x, n, k, q);
                        assert!(l <= r, "full {x} {n} {k} {q}");
                        for m in 2..x {
                            let (l, r) = bad_number_partial(x, m, n, k, q);
                            assert!(l <= r, "partial {x} {m} {n} {k} {q}");
                        }
                    }
                }
            }
        }
    }
}
