//! Distance-`i` operators of the Grassmann scheme on `k`-subspaces.
//!
//! `(A_i)_{RS} = 1` iff `dim(R ∩ S) = k - i`. The matrices are never built:
//! every pair is classified by the popcount of the shared point bitsets.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use crate::algebra::{gauss, integer, Rational, ScaledVector};
use crate::geometry::SubspaceIndex;
use crate::weights::WeightVector;
use crate::{Error, Result};

fn q_to(q: u64, e: i64) -> BigInt {
    Pow::pow(BigInt::from(q), e as u64)
}

/// `dim(R ∩ S)` for every pair, read from the popcount lookup.
fn distance_row(index: &SubspaceIndex, c: usize, lookup: &[u8], out: &mut [u8]) {
    let k = index.k() as u8;
    for (s, d) in out.iter_mut().enumerate() {
        *d = k - lookup[index.common_points(c, s) as usize];
    }
}

/// Map from shared point count to intersection dimension (255 for counts
/// that are not a subspace size).
fn dim_lookup(index: &SubspaceIndex) -> Vec<u8> {
    let k = index.k();
    let ctx = index.ctx();
    let mut lookup = vec![u8::MAX; ctx.points_in_dim(k) as usize + 1];
    for d in 0..=k {
        lookup[ctx.points_in_dim(d) as usize] = d as u8;
    }
    lookup
}

/// `(A_i v)_C = sum_{dim(S ∩ C) = k - i} v_S`, exact.
pub fn apply_adjacency(index: &SubspaceIndex, i: usize, v: &[Rational]) -> Result<Vec<Rational>> {
    let k = index.k();
    if i > k {
        return Err(Error::DistanceOutOfRange { i, k });
    }
    let mut all = apply_all(index, v)?;
    Ok(all.swap_remove(i))
}

/// `A_0 v, ..., A_k v` in a single pass over the pairs.
pub fn apply_all(index: &SubspaceIndex, v: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    let total = index.len();
    if v.len() != total {
        return Err(Error::WrongLength { expected: total, got: v.len() });
    }
    let k = index.k();
    let lookup = dim_lookup(index);
    let scaled = ScaledVector::new(v);
    let mut row = vec![0u8; total];
    let mut out = vec![Vec::with_capacity(total); k + 1];
    for c in 0..total {
        distance_row(index, c, &lookup, &mut row);
        match scaled.small() {
            Some(small) => {
                let mut acc = vec![0i128; k + 1];
                for (s, &d) in row.iter().enumerate() {
                    acc[d as usize] += small[s] as i128;
                }
                for (i, a) in acc.into_iter().enumerate() {
                    out[i].push(Rational::new(BigInt::from(a), scaled.den().clone()));
                }
            }
            None => {
                let mut acc = vec![BigInt::zero(); k + 1];
                for (s, &d) in row.iter().enumerate() {
                    acc[d as usize] += &scaled.nums()[s];
                }
                for (i, a) in acc.into_iter().enumerate() {
                    out[i].push(Rational::new(a, scaled.den().clone()));
                }
            }
        }
    }
    Ok(out)
}

/// Number of `k`-subspaces at distance `i` from a fixed one:
/// `[k over i] [n-k over i] q^{i^2}`.
pub fn valency(n: usize, k: usize, q: u64, i: usize) -> BigInt {
    let (n, k, i) = (n as i64, k as i64, i as i64);
    gauss(k, i, q) * gauss(n - k, i, q) * q_to(q, i * i)
}

/// Eigenvalue of `A_i` on weight vectors `b = W_{k1} f` of sum-zero `f`:
///
/// `[n-k-1 over i][k-1 over i] q^{(i+1)i} - [n-k-1 over i-1][k-1 over i-1] q^{i(i-1)}`.
pub fn eigenvalue(n: usize, k: usize, q: u64, i: usize) -> BigInt {
    let (n, k, i) = (n as i64, k as i64, i as i64);
    let first = gauss(n - k - 1, i, q) * gauss(k - 1, i, q) * q_to(q, (i + 1) * i);
    if i == 0 {
        return first;
    }
    first - gauss(n - k - 1, i - 1, q) * gauss(k - 1, i - 1, q) * q_to(q, i * (i - 1))
}

/// The four successive forms of the eigenvalue in its derivation from the
/// standard Grassmann-scheme expression. All four are equal.
pub fn eigenvalue_derivation(n: usize, k: usize, q: u64, i: usize) -> [BigInt; 4] {
    let (n, k, i) = (n as i64, k as i64, i as i64);
    let g = |a: i64, b: i64| gauss(a, b, q);
    let p = |e: i64| if e < 0 { BigInt::zero() } else { q_to(q, e) };
    let line1 = g(n - k, n - k - i) * g(k - 1, i) * p(i * i) - g(n - k - 1, n - k - i) * g(k, i) * p(i * (i - 1));
    let line2 = g(n - k, i) * g(k - 1, i) * p(i * i) - g(n - k - 1, i - 1) * g(k, i) * p(i * (i - 1));
    let line3 = g(n - k - 1, i) * g(k - 1, i) * p((i + 1) * i) + g(n - k - 1, i - 1) * g(k - 1, i) * p(i * i)
        - g(n - k - 1, i - 1) * g(k, i) * p(i * (i - 1));
    let line4 = g(n - k - 1, i) * g(k - 1, i) * p((i + 1) * i) - g(n - k - 1, i - 1) * g(k - 1, i - 1) * p(i * (i - 1));
    [line1, line2, line3, line4]
}

/// Coefficient of `b_C` in `sum_{dim(S ∩ C) = 1} b_S`:
/// `q^{k(k-1)} [n-k-1 over k-1] - q^{(k-1)(k-2)} [k-1 over 1] [n-k-1 over k-2]`.
pub fn distance_one_coefficient(n: usize, k: usize, q: u64) -> BigInt {
    let (n, k) = (n as i64, k as i64);
    let first = q_to(q, k * (k - 1)) * gauss(n - k - 1, k - 1, q);
    if k < 2 {
        return first;
    }
    first - q_to(q, (k - 1) * (k - 2)) * gauss(k - 1, 1, q) * gauss(n - k - 1, k - 2, q)
}

/// `sum_{dim(S ∩ C) = 1} b_S` by direct summation.
pub fn distance_one_sum(index: &SubspaceIndex, c: usize, b: &WeightVector) -> Rational {
    let one = index.ctx().points_in_dim(1);
    (0..index.len())
        .filter(|&s| index.common_points(c, s) == one)
        .map(|s| b.get(s))
        .sum()
}

/// Outcome of checking `A_i b = λ_i b` for one `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenCheck {
    pub i: usize,
    pub eigenvalue: BigInt,
    /// First subspace id where the equation fails.
    pub violation: Option<usize>,
}

impl EigenCheck {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `A_i b = eigenvalue(n, k, q, i) b` for every `0 <= i <= k`.
pub fn eigencheck(index: &SubspaceIndex, b: &WeightVector) -> Result<Vec<EigenCheck>> {
    let (n, k, q) = (index.n(), index.k(), index.q() as u64);
    let images = apply_all(index, b.values())?;
    Ok(images
        .into_iter()
        .enumerate()
        .map(|(i, image)| {
            let lambda = eigenvalue(n, k, q, i);
            let factor = integer(lambda.clone());
            let violation = image.iter().zip(b.values()).position(|(x, y)| *x != &factor * y);
            EigenCheck { i, eigenvalue: lambda, violation }
        })
        .collect())
}
