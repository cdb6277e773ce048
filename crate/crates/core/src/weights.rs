//! Sum-zero weightings of points, the induced weights on `k`-subspaces and
//! the standard extremal constructions.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;

use crate::algebra::{integer, rational, Rational, ScaledVector};
use crate::geometry::{GeometryContext, Subspace, SubspaceIndex};
use crate::{Error, Result};

/// A weight `f(P)` on every point, summing to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFunction {
    n: usize,
    q: u32,
    values: Vec<Rational>,
}

/// Induced weights `b_S = sum_{P in S} f(P)` on the `k`-subspaces, by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    k: usize,
    values: Vec<Rational>,
}

/// A set of `k`-subspace ids, typically the nonnegative ones of a weighting.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Family {
    n: usize,
    k: usize,
    q: u32,
    members: Vec<usize>,
}

impl WeightFunction {
    /// Validates length and the sum-zero condition.
    pub fn new(ctx: &GeometryContext, values: Vec<Rational>) -> Result<Self> {
        if values.len() != ctx.point_count() {
            return Err(Error::WrongLength { expected: ctx.point_count(), got: values.len() });
        }
        let residual: Rational = values.iter().sum();
        if !residual.is_zero() {
            return Err(Error::NotSumZero { residual });
        }
        Ok(WeightFunction { n: ctx.n(), q: ctx.q(), values })
    }

    pub fn zero(ctx: &GeometryContext) -> Self {
        WeightFunction { n: ctx.n(), q: ctx.q(), values: alloc::vec![Rational::zero(); ctx.point_count()] }
    }

    /// `f(P0) = gaussm(n) - 1`, every other point `-1`.
    pub fn point_pencil(ctx: &GeometryContext, p0: usize) -> Self {
        let count = ctx.point_count();
        let mut values = alloc::vec![integer(-1); count];
        values[p0] = integer(count as i64 - 1);
        WeightFunction { n: ctx.n(), q: ctx.q(), values }
    }

    /// `q^{n-1} / gaussm(n-1)` on the points of the hyperplane `s`, `-1` on the
    /// `q^{n-1}` points off it.
    pub fn hyperplane_example(ctx: &GeometryContext, s: &Subspace) -> Result<Self> {
        let n = ctx.n();
        if n < 2 || s.dim() != n - 1 {
            return Err(Error::WrongSubspaceDimension { expected: n.saturating_sub(1), got: s.dim() });
        }
        let on = rational(ctx.q_pow(n - 1), ctx.points_in_dim(n - 1));
        let mut values = alloc::vec![integer(-1); ctx.point_count()];
        for p in ctx.point_ids(s) {
            values[p as usize] = on.clone();
        }
        Ok(WeightFunction { n, q: ctx.q(), values })
    }

    /// Random sum-zero weights: numerators in `-max_num..=max_num`,
    /// denominators in `1..=max_den`, then the mean is subtracted.
    pub fn random<R: Rng + ?Sized>(ctx: &GeometryContext, rng: &mut R, max_num: i64, max_den: i64) -> Self {
        let mut values: Vec<Rational> = (0..ctx.point_count())
            .map(|_| rational(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den)))
            .collect();
        let mean: Rational = values.iter().sum::<Rational>() / integer(values.len() as i64);
        for v in values.iter_mut() {
            *v -= &mean;
        }
        WeightFunction { n: ctx.n(), q: ctx.q(), values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, point: usize) -> &Rational {
        &self.values[point]
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// `λ f` for `λ > 0`; the nonnegative family does not change.
    pub fn scaled(&self, factor: &Rational) -> Self {
        assert!(factor.is_positive(), "scale factor must be positive");
        let values = self.values.iter().map(|v| v * factor).collect();
        WeightFunction { n: self.n, q: self.q, values }
    }

    /// The weighting `g(H) = sum_{P in H} f(P)` on hyperplanes, read as a
    /// weighting of the points of the dual space: dual point `h` stands for
    /// the hyperplane `h^⊥`.
    ///
    /// For every `k`-subspace `U`, the `g`-weight of `dual_subspace(U)` is
    /// `q^{n-k-1}` times the `f`-weight of `U`.
    pub fn dual_transform(&self, ctx: &GeometryContext) -> WeightFunction {
        let scaled = ScaledVector::new(&self.values);
        let values = ctx
            .enumerate_points()
            .map(|h| {
                let on = ctx.enumerate_points().filter(|p| ctx.dot(h.coords, p.coords) == 0).map(|p| p.id);
                scaled.sum(on)
            })
            .collect();
        WeightFunction { n: self.n, q: self.q, values }
    }
}

/// Exact weight of an arbitrary subspace.
pub fn subspace_weight(ctx: &GeometryContext, s: &Subspace, f: &WeightFunction) -> Rational {
    ctx.point_ids(s).into_iter().map(|p| f.value(p as usize)).sum()
}

/// `b = W_{k1} f` over all indexed `k`-subspaces.
pub fn weight_vector(index: &SubspaceIndex, f: &WeightFunction) -> WeightVector {
    let scaled = ScaledVector::new(f.values());
    let values = (0..index.len())
        .map(|id| scaled.sum(index.point_ids(id).iter().map(|&p| p as usize)))
        .collect();
    WeightVector { k: index.k(), values }
}

impl WeightVector {
    pub fn new(k: usize, values: Vec<Rational>) -> Self {
        WeightVector { k, values }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, id: usize) -> &Rational {
        &self.values[id]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Ids with `b_S >= 0` (zero counts as nonnegative).
    pub fn nonneg_ids(&self) -> Vec<usize> {
        self.values.iter().enumerate().filter(|(_, v)| !v.is_negative()).map(|(i, _)| i).collect()
    }

    pub fn nonneg_count(&self) -> usize {
        self.values.iter().filter(|v| !v.is_negative()).count()
    }

    pub fn nonneg_family(&self, index: &SubspaceIndex) -> Family {
        Family::from_sorted(index, self.nonneg_ids())
    }

    /// Id of a highest-weight subspace (smallest id among ties).
    pub fn argmax(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, v) in self.values.iter().enumerate() {
            if best.is_none_or(|b| v > &self.values[b]) {
                best = Some(i);
            }
        }
        best
    }

    pub fn total(&self) -> Rational {
        self.values.iter().sum()
    }
}

impl Family {
    /// Members are sorted and deduplicated; ids must be valid for `index`.
    pub fn new(index: &SubspaceIndex, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self::from_sorted(index, members)
    }

    fn from_sorted(index: &SubspaceIndex, members: Vec<usize>) -> Self {
        assert!(members.last().is_none_or(|&m| m < index.len()), "subspace id out of range");
        Family { n: index.n(), k: index.k(), q: index.q(), members }
    }

    pub fn empty(index: &SubspaceIndex) -> Self {
        Self::from_sorted(index, Vec::new())
    }

    pub fn all(index: &SubspaceIndex) -> Self {
        Self::from_sorted(index, (0..index.len()).collect())
    }

    /// Family from a bitmask over ids (bit `i` set means id `i` is a member).
    pub fn from_mask(index: &SubspaceIndex, mask: u128) -> Self {
        let members = (0..index.len().min(128)).filter(|&i| mask >> i & 1 == 1).collect();
        Self::from_sorted(index, members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.members.binary_search(&id).is_ok()
    }

    /// Membership flags for ids `0..total`.
    pub fn indicator(&self, total: usize) -> Vec<bool> {
        let mut flags = alloc::vec![false; total];
        for &m in &self.members {
            flags[m] = true;
        }
        flags
    }
}

/// Sum of all point weights, useful for diagnostics on rejected input.
pub fn residual(values: &[Rational]) -> Rational {
    values.iter().sum()
}

/// `gaussm(n) - gaussm(k)`, the weight of a `k`-subspace through the special
/// point of [`WeightFunction::point_pencil`].
pub fn pencil_weight_through(ctx: &GeometryContext, k: usize) -> BigInt {
    BigInt::from(ctx.point_count() as u64 - ctx.points_in_dim(k))
}
