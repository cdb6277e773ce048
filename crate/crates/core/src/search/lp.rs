//! Exact realizability test for a sign pattern.
//!
//! A family `F` is realizable when some `f` has `sum f = 0`, `b_S >= 0` for
//! `S ∈ F` and `b_S <= -1` for `S ∉ F`. By Farkas' lemma this fails exactly
//! when the alternative system
//!
//! ```text
//! sum_{S ∉ F} y_S a_S - sum_{S ∈ F} y_S a_S + t·1 = 0,   sum_{S ∉ F} y_S = 1,   y >= 0
//! ```
//!
//! is solvable (`a_S` is the point incidence vector of `S`). Phase one of the
//! simplex method on the alternative decides it: a zero optimum yields `y` as
//! an infeasibility certificate, a positive optimum yields `f` from the dual
//! values of the artificial columns.
//!
//! The tableau is fraction-free: integer entries over one common
//! denominator, updated by `T' = (T_ij T_rs - T_is T_rj) / D`, `D' = T_rs`,
//! where every division is exact. It runs on `i64`, then `i128`, then big
//! integers, restarting whenever an entry overflows.
//!
//! The entering column has the most negative reduced cost; after a run of
//! degenerate pivots the rule falls back to Bland's (smallest index) until
//! the objective decreases again, which rules out cycling. Ties in the
//! ratio test go to the smallest basic index.
//!
//! Most calls never reach that tableau. A floating-point simplex with a
//! slightly perturbed right-hand side proposes a final basis first; the
//! basis is then solved exactly and its claim (positive or zero optimum) is
//! accepted only if every sign condition holds in exact arithmetic. The
//! float result is a hint and never decides the answer.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::{integer, Rational};
use crate::geometry::SubspaceIndex;
use crate::weights::{weight_vector, Family, WeightFunction};

/// Integer arithmetic for the tableau; `None` signals overflow.
trait Scalar: Clone + Ord + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn is_nil(&self) -> bool;
    fn mul(&self, other: &Self) -> Option<Self>;
    /// `(a b - c d) / den`, exact.
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, den: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_pos(&self) -> bool {
        *self > 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    #[inline]
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, den: &Self) -> Option<Self> {
        let left = a.checked_mul(*b)?;
        if *c == 0 || *d == 0 {
            return Some(left / den);
        }
        Some(left.checked_sub(c.checked_mul(*d)?)? / den)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_pos(&self) -> bool {
        *self > 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    #[inline]
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, den: &Self) -> Option<Self> {
        let left = a.checked_mul(*b)?;
        if *c == 0 || *d == 0 {
            return Some(left / den);
        }
        Some(left.checked_sub(c.checked_mul(*d)?)? / den)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn is_nil(&self) -> bool {
        self.is_zero()
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, den: &Self) -> Option<Self> {
        Some((a * b - c * d) / den)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Why a family is not realizable: nonnegative multipliers `y` with
/// `sum_{S ∉ F} y_S a_S - sum_{S ∈ F} y_S a_S + shift·1 = 0` and
/// `sum_{S ∉ F} y_S = 1`. For any sum-zero `f` this forces
/// `sum_{S ∉ F} y_S b_S = sum_{S ∈ F} y_S b_S`, impossible when the left side
/// is at most `-1` and the right side nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// `(subspace id, y)` with `y > 0`.
    pub multipliers: Vec<(usize, Rational)>,
    pub shift: Rational,
}

impl Certificate {
    /// Checks the certificate exactly against `family`.
    pub fn verify(&self, index: &SubspaceIndex, family: &Family) -> bool {
        let mut combo = vec![self.shift.clone(); index.ctx().point_count()];
        let mut outside = Rational::zero();
        for (id, y) in &self.multipliers {
            if !y.is_positive() || *id >= index.len() {
                return false;
            }
            let member = family.contains(*id);
            if !member {
                outside += y;
            }
            for &p in index.point_ids(*id) {
                if member {
                    combo[p as usize] -= y;
                } else {
                    combo[p as usize] += y;
                }
            }
        }
        outside == integer(1) && combo.iter().all(Zero::is_zero)
    }
}

/// Outcome of [`lp_feasible`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeasibilityResult {
    /// A weighting whose nonnegative family is exactly the queried one.
    Feasible(WeightFunction),
    Infeasible(Certificate),
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible(_))
    }

    pub fn witness(&self) -> Option<&WeightFunction> {
        match self {
            FeasibilityResult::Feasible(f) => Some(f),
            FeasibilityResult::Infeasible(_) => None,
        }
    }
}

/// Degenerate pivots in a row after which the entering rule switches from
/// steepest reduced cost to Bland's rule until the objective moves again.
const DEGENERATE_STREAK: usize = 8;

/// Float tolerance of the guiding simplex.
const EPS: f64 = 1e-9;

/// Scale of the right-hand side perturbation in the guiding simplex.
const PERTURB: f64 = 1e-6;

/// Phase-one tableau of the alternative system: one row per point, the
/// indicator row, then the objective row. Columns are the subspaces, the
/// two shift columns, one artificial per row and the right-hand side.
fn build_cells<T: Clone>(index: &SubspaceIndex, in_family: &[bool], of: impl Fn(i64) -> T) -> (usize, usize, Vec<T>) {
    let points = index.ctx().point_count();
    let subspaces = index.len();
    let rows = points + 1;
    let structural = subspaces + 2;
    let width = structural + rows + 1;
    let mut cells = vec![of(0); (rows + 1) * width];
    let mut colsum = vec![0i64; structural];
    for (s, &member) in in_family.iter().enumerate() {
        let sign = if member { -1 } else { 1 };
        for &p in index.point_ids(s) {
            cells[p as usize * width + s] = of(sign);
        }
        colsum[s] = sign * index.point_ids(s).len() as i64;
        if !member {
            cells[points * width + s] = of(1);
            colsum[s] += 1;
        }
    }
    for p in 0..points {
        cells[p * width + subspaces] = of(1);
        cells[p * width + subspaces + 1] = of(-1);
    }
    colsum[subspaces] = points as i64;
    colsum[subspaces + 1] = -(points as i64);
    for r in 0..rows {
        cells[r * width + structural + r] = of(1);
    }
    cells[points * width + width - 1] = of(1);
    let objective = rows * width;
    for (j, &sum) in colsum.iter().enumerate() {
        cells[objective + j] = of(-sum);
    }
    cells[objective + width - 1] = of(-1);
    (rows, width, cells)
}

/// Integer matrix over a common denominator with fraction-free pivoting.
struct Dense<T> {
    height: usize,
    width: usize,
    cells: Vec<T>,
    den: T,
}

impl<T: Scalar> Dense<T> {
    fn at(&self, r: usize, c: usize) -> &T {
        &self.cells[r * self.width + c]
    }

    /// Eliminates column `s` from every row but `r`; `None` on overflow.
    fn pivot(&mut self, r: usize, s: usize) -> Option<()> {
        let w = self.width;
        let p = self.at(r, s).clone();
        let pivot_row: Vec<T> = self.cells[r * w..(r + 1) * w].to_vec();
        for i in 0..self.height {
            if i == r {
                continue;
            }
            let factor = self.cells[i * w + s].clone();
            let row = &mut self.cells[i * w..(i + 1) * w];
            for (cell, pr) in row.iter_mut().zip(&pivot_row) {
                *cell = T::cross(cell, &p, &factor, pr, &self.den)?;
            }
        }
        self.den = p;
        Some(())
    }

    /// Solves the square system in the first `height` columns against the
    /// last column. Returns numerators over the final (signed) denominator.
    fn solve(mut self) -> Option<(Vec<T>, T)> {
        let n = self.height;
        let mut used = vec![false; n];
        let mut row_of = vec![0; n];
        for (s, slot) in row_of.iter_mut().enumerate() {
            let r = (0..n).find(|&r| !used[r] && !self.at(r, s).is_nil())?;
            self.pivot(r, s)?;
            used[r] = true;
            *slot = r;
        }
        let x = row_of.iter().map(|&r| self.at(r, n).clone()).collect();
        Some((x, self.den))
    }
}

struct Tableau<T> {
    /// Constraint rows; the objective row follows them.
    rows: usize,
    dense: Dense<T>,
    basis: Vec<usize>,
}

/// Raw phase-one result with integer numerators.
enum Raw {
    /// Dual values `pi` (common denominator dropped, `pi[last] > 0`); the
    /// witness is `pi[P] / pi[last]`.
    Positive { pi: Vec<BigInt> },
    /// Positive basic structural values over a positive `den`.
    Zero { basic: Vec<(usize, BigInt)>, den: BigInt },
}

impl<T: Scalar> Tableau<T> {
    fn build(index: &SubspaceIndex, in_family: &[bool]) -> Self {
        let (rows, width, cells) = build_cells(index, in_family, T::from_i64);
        let structural = width - 1 - rows;
        let basis = (structural..structural + rows).collect();
        Tableau { rows, dense: Dense { height: rows + 1, width, cells, den: T::from_i64(1) }, basis }
    }

    fn at(&self, r: usize, c: usize) -> &T {
        self.dense.at(r, c)
    }

    /// `a_num / a_den` vs `b_num / b_den` with positive denominators.
    fn cmp_ratio(a_num: &T, a_den: &T, b_num: &T, b_den: &T) -> Option<Ordering> {
        Some(a_num.mul(b_den)?.cmp(&b_num.mul(a_den)?))
    }

    /// Exact phase one; `None` on overflow.
    fn run(mut self) -> Option<Raw> {
        let width = self.dense.width;
        let rhs = width - 1;
        let columns = width - 1;
        let objective = self.rows;
        let mut degenerate = 0;
        loop {
            let entering = if degenerate < DEGENERATE_STREAK {
                (0..columns).filter(|&j| self.at(objective, j).is_neg()).min_by(|&a, &b| {
                    self.at(objective, a).cmp(self.at(objective, b)).then(a.cmp(&b))
                })
            } else {
                (0..columns).find(|&j| self.at(objective, j).is_neg())
            };
            let Some(s) = entering else {
                break;
            };
            let mut leave: Option<usize> = None;
            for i in 0..self.rows {
                if !self.at(i, s).is_pos() {
                    continue;
                }
                leave = Some(match leave {
                    None => i,
                    Some(best) => {
                        match Self::cmp_ratio(self.at(i, rhs), self.at(i, s), self.at(best, rhs), self.at(best, s))? {
                            Ordering::Less => i,
                            Ordering::Equal if self.basis[i] < self.basis[best] => i,
                            _ => best,
                        }
                    }
                });
            }
            // phase one is bounded below by zero
            let r = leave.expect("phase-one objective is bounded");
            degenerate = if self.at(r, rhs).is_nil() { degenerate + 1 } else { 0 };
            self.dense.pivot(r, s)?;
            self.basis[r] = s;
        }
        let den = self.dense.den.to_big();
        let structural = columns - self.rows;
        if self.at(objective, rhs).is_nil() {
            let basic = (0..self.rows)
                .filter(|&i| self.basis[i] < structural && !self.at(i, rhs).is_nil())
                .map(|i| (self.basis[i], self.at(i, rhs).to_big()))
                .collect();
            Some(Raw::Zero { basic, den })
        } else {
            // dual value of row i is 1 - cost_i / den
            let pi = (0..self.rows).map(|r| &den - self.at(objective, structural + r).to_big()).collect();
            Some(Raw::Positive { pi })
        }
    }
}

/// Floating-point phase one; returns the final basis and whether the
/// optimum looked positive. `None` if it stalls or finds no pivot.
fn float_basis(index: &SubspaceIndex, in_family: &[bool], perturb: bool) -> Option<(Vec<usize>, bool)> {
    let (rows, w, mut cells) = build_cells(index, in_family, |v| v as f64);
    let structural = w - 1 - rows;
    // generic right-hand side perturbation against degenerate stalling
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    for r in (0..rows).filter(|_| perturb) {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        let delta = PERTURB * (1.0 + (state >> 11) as f64 / (1u64 << 53) as f64);
        cells[r * w + w - 1] += delta;
        cells[rows * w + w - 1] -= delta;
    }
    let mut basis: Vec<usize> = (structural..structural + rows).collect();
    let rhs = w - 1;
    let columns = w - 1;
    let objective = rows * w;
    let mut degenerate = 0;
    for _ in 0..50 * (rows + columns) {
        let obj = &cells[objective..objective + columns];
        let entering = if degenerate < DEGENERATE_STREAK {
            (0..columns).filter(|&j| obj[j] < -EPS).min_by(|&a, &b| obj[a].total_cmp(&obj[b]))
        } else {
            (0..columns).find(|&j| obj[j] < -EPS)
        };
        let Some(s) = entering else {
                        return Some((basis, cells[objective + rhs] < -1e-4));
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..rows {
            let a = cells[i * w + s];
            if a <= EPS {
                continue;
            }
            let ratio = cells[i * w + rhs] / a;
            leave = match leave {
                Some((best, t)) if ratio > t + EPS || (ratio > t - EPS && basis[best] < basis[i]) => Some((best, t)),
                _ => Some((i, ratio)),
            };
        }
        let (r, _) = leave?;
        degenerate = if cells[r * w + rhs] <= EPS { degenerate + 1 } else { 0 };
        let p = cells[r * w + s];
        for c in 0..w {
            cells[r * w + c] /= p;
        }
        let pivot_row: Vec<f64> = cells[r * w..(r + 1) * w].to_vec();
        for i in 0..=rows {
            let factor = cells[i * w + s];
            if i == r || factor == 0.0 {
                continue;
            }
            for (cell, pr) in cells[i * w..(i + 1) * w].iter_mut().zip(&pivot_row) {
                *cell -= factor * pr;
            }
        }
        basis[r] = s;
    }
    None
}

/// Re-derives the phase-one answer for `basis` in exact arithmetic and
/// checks it. `None` if the basis does not certify either outcome (or
/// the arithmetic overflows).
fn exact_from_basis<T: Scalar>(index: &SubspaceIndex, in_family: &[bool], basis: &[usize], positive: bool) -> Option<Raw> {
    let (rows, w, cells) = build_cells(index, in_family, |v| v);
    let structural = w - 1 - rows;
    let entry = |r: usize, c: usize| cells[r * w + c];
    let mut m = Vec::with_capacity(rows * (rows + 1));
    if positive {
        // B^T pi = c_B
        for &col in basis {
            m.extend((0..rows).map(|r| T::from_i64(entry(r, col))));
            m.push(T::from_i64((col >= structural) as i64));
        }
    } else {
        // B y = e_last
        for r in 0..rows {
            m.extend(basis.iter().map(|&col| T::from_i64(entry(r, col))));
            m.push(T::from_i64((r + 1 == rows) as i64));
        }
    }
    let (x, den) = Dense { height: rows, width: rows + 1, cells: m, den: T::from_i64(1) }.solve()?;
    let mut x: Vec<BigInt> = x.iter().map(Scalar::to_big).collect();
    let mut den = den.to_big();
    if den.is_negative() {
        den = -den;
        x.iter_mut().for_each(|v| *v = -&*v);
    }
    if positive {
        let tau = x[rows - 1].clone();
        if !tau.is_positive() {
            return None;
        }
        let pi = x;
        let points = rows - 1;
        let total: BigInt = pi[..points].iter().sum();
        if !total.is_zero() {
            return None;
        }
        let pattern_ok = in_family.iter().enumerate().all(|(s, &member)| {
            let b: BigInt = index.point_ids(s).iter().map(|&p| &pi[p as usize]).sum();
            member != b.is_negative()
        });
        pattern_ok.then_some(Raw::Positive { pi })
    } else {
        let mut basic = Vec::new();
        for (&col, y) in basis.iter().zip(x) {
            if y.is_negative() || (col >= structural && !y.is_zero()) {
                return None;
            }
            if col < structural && y.is_positive() {
                basic.push((col, y));
            }
        }
        Some(Raw::Zero { basic, den })
    }
}

/// Float-guided answer, verified exactly; `None` if the guide fails.
fn guided(index: &SubspaceIndex, in_family: &[bool]) -> Option<Raw> {
    [true, false].into_iter().find_map(|perturb| {
        let (basis, positive) = float_basis(index, in_family, perturb)?;
        [positive, !positive].into_iter().find_map(|claim| {
            exact_from_basis::<i64>(index, in_family, &basis, claim)
                .or_else(|| exact_from_basis::<i128>(index, in_family, &basis, claim))
                .or_else(|| exact_from_basis::<BigInt>(index, in_family, &basis, claim))
        })
    })
}

fn solve(index: &SubspaceIndex, in_family: &[bool]) -> Raw {
    guided(index, in_family).unwrap_or_else(|| exact_phase_one(index, in_family))
}

/// The exact simplex alone, used when the float guide fails.
fn exact_phase_one(index: &SubspaceIndex, in_family: &[bool]) -> Raw {
    Tableau::<i64>::build(index, in_family)
        .run()
        .or_else(|| Tableau::<i128>::build(index, in_family).run())
        .unwrap_or_else(|| Tableau::<BigInt>::build(index, in_family).run().expect("big integers do not overflow"))
}

/// Decides realizability of a membership pattern without building a
/// witness or certificate.
pub fn is_realizable(index: &SubspaceIndex, in_family: &[bool]) -> bool {
    assert_eq!(in_family.len(), index.len(), "pattern length");
    matches!(solve(index, in_family), Raw::Positive { .. })
}

/// Decides whether `family` is exactly the nonnegative family of some
/// sum-zero weighting, with a verified witness or certificate.
pub fn lp_feasible(index: &SubspaceIndex, family: &Family) -> FeasibilityResult {
    let flags = family.indicator(index.len());
    let points = index.ctx().point_count();
    match solve(index, &flags) {
        Raw::Positive { pi } => {
            let tau = &pi[points];
            assert!(tau.is_positive(), "positive phase-one optimum has a positive dual on the indicator row");
            let values = pi[..points].iter().map(|v| Rational::new(v.clone(), tau.clone())).collect();
            let f = WeightFunction::new(index.ctx(), values).expect("dual solution is sum-zero");
            let b = weight_vector(index, &f);
            assert_eq!(&b.nonneg_family(index), family, "witness reproduces the family");
            FeasibilityResult::Feasible(f)
        }
        Raw::Zero { basic, den } => {
            let subspaces = index.len();
            let mut multipliers = Vec::new();
            let mut shift = Rational::zero();
            for (col, value) in basic {
                let y = Rational::new(value, den.clone());
                match col.cmp(&subspaces) {
                    Ordering::Less => multipliers.push((col, y)),
                    Ordering::Equal => shift += y,
                    Ordering::Greater => shift -= y,
                }
            }
            multipliers.sort_by_key(|(id, _)| *id);
            let cert = Certificate { multipliers, shift };
            debug_assert!(cert.verify(index, family));
            FeasibilityResult::Infeasible(cert)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::SpanPart;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn all_and_empty() {
        let idx = SubspaceIndex::build(4, 2, 2).unwrap();
        match lp_feasible(&idx, &Family::all(&idx)) {
            FeasibilityResult::Feasible(f) => assert!(f.is_zero()),
            other => panic!("{other:?}"),
        }
        match lp_feasible(&idx, &Family::empty(&idx)) {
            FeasibilityResult::Infeasible(cert) => assert!(cert.verify(&idx, &Family::empty(&idx))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pencil_and_hyperplane_families() {
        let idx = SubspaceIndex::build(4, 2, 2).unwrap();
        let pencil = Family::new(&idx, idx.pencil(6));
        assert!(lp_feasible(&idx, &pencil).is_feasible());
        let h = idx.ctx().span(&[SpanPart::Point(1), SpanPart::Point(2), SpanPart::Point(4)]).unwrap();
        let inside = Family::new(&idx, idx.inside(&h));
        assert!(lp_feasible(&idx, &inside).is_feasible());
        // one line fewer than the pencil is not realizable
        let mut smaller = idx.pencil(6);
        smaller.pop();
        let family = Family::new(&idx, smaller);
        match lp_feasible(&idx, &family) {
            FeasibilityResult::Infeasible(cert) => assert!(cert.verify(&idx, &family)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn random_nonneg_families_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (n, k, q) in [(4, 2, 2), (5, 2, 2), (4, 2, 3), (3, 1, 5)] {
            let idx = SubspaceIndex::build(n, k, q).unwrap();
            for _ in 0..6 {
                let f = WeightFunction::random(idx.ctx(), &mut rng, 30, 9);
                let family = weight_vector(&idx, &f).nonneg_family(&idx);
                assert!(lp_feasible(&idx, &family).is_feasible());
            }
        }
    }

    #[test]
    fn random_families_are_decided_consistently() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let idx = SubspaceIndex::build(4, 2, 2).unwrap();
        let mut feasible = 0;
        for _ in 0..200 {
            let members: Vec<usize> = (0..idx.len()).filter(|_| rng.gen_bool(0.5)).collect();
            let family = Family::new(&idx, members);
            let flags = family.indicator(idx.len());
            let result = lp_feasible(&idx, &family);
            assert_eq!(result.is_feasible(), is_realizable(&idx, &flags));
            match result {
                FeasibilityResult::Feasible(_) => feasible += 1,
                FeasibilityResult::Infeasible(cert) => assert!(cert.verify(&idx, &family)),
            }
        }
        assert!(feasible < 200);
    }

    #[test]
    fn guide_succeeds_on_structured_families() {
        for (n, k, q) in [(4, 2, 2), (5, 2, 2), (4, 2, 3)] {
            let idx = SubspaceIndex::build(n, k, q).unwrap();
            let ctx = idx.ctx();
            let h = crate::geometry::Grassmannian::new(ctx, n - 1).unwrap().unrank(0);
            for f in [WeightFunction::point_pencil(ctx, 0), WeightFunction::hyperplane_example(ctx, &h).unwrap()] {
                let mut flags = weight_vector(&idx, &f).nonneg_family(&idx).indicator(idx.len());
                assert!(matches!(guided(&idx, &flags), Some(Raw::Positive { .. })), "{n} {k} {q}");
                let first = flags.iter().position(|&b| b).unwrap();
                flags[first] = false;
                let exact = matches!(exact_phase_one(&idx, &flags), Raw::Positive { .. });
                let fast = guided(&idx, &flags).map(|r| matches!(r, Raw::Positive { .. }));
                assert_eq!(fast, Some(exact), "{n} {k} {q}");
            }
        }
    }

    #[test]
    fn float_guide_matches_exact_simplex() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (n, k, q) in [(4, 2, 2), (5, 2, 2), (4, 2, 3)] {
            let idx = SubspaceIndex::build(n, k, q).unwrap();
            for trial in 0..40 {
                let flags: Vec<bool> = if trial % 2 == 0 {
                    (0..idx.len()).map(|_| rng.gen_bool(0.3)).collect()
                } else {
                    let f = WeightFunction::random(idx.ctx(), &mut rng, 20, 5);
                    let mut fam = weight_vector(&idx, &f).nonneg_family(&idx).indicator(idx.len());
                    // perturb one membership
                    let flip = rng.gen_range(0..idx.len());
                    fam[flip] = !fam[flip];
                    fam
                };
                let guided = matches!(solve(&idx, &flags), Raw::Positive { .. });
                let exact = matches!(exact_phase_one(&idx, &flags), Raw::Positive { .. });
                assert_eq!(guided, exact, "{n} {k} {q} trial {trial}");
            }
        }
    }

    #[test]
    fn big_integer_fallback_agrees() {
        let idx = SubspaceIndex::build(4, 2, 3).unwrap();
        let f = WeightFunction::point_pencil(idx.ctx(), 2);
        let flags = weight_vector(&idx, &f).nonneg_family(&idx).indicator(idx.len());
        let small = Tableau::<i128>::build(&idx, &flags).run().map(|r| matches!(r, Raw::Positive { .. }));
        let big = Tableau::<BigInt>::build(&idx, &flags).run().map(|r| matches!(r, Raw::Positive { .. }));
        assert_eq!(big, Some(true));
        assert!(small.is_none() || small == big);
    }
}
