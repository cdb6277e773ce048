//! Exhaustive minimum over all families up to a size cap, one orbit
//! representative at a time.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::lp::{is_realizable, lp_feasible, FeasibilityResult};
use super::symmetry::{MaskAction, MonomialGroup};
use crate::geometry::{SpanPart, Subspace, SubspaceIndex};
use crate::pool::WorkerPool;
use crate::weights::{Family, WeightFunction};
use crate::{Error, Result};

/// How an extremal family arises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// All subspaces through a point.
    Pencil { point: usize },
    /// All subspaces inside a hyperplane.
    Hyperplane { hyperplane: Subspace },
    Other,
}

/// Recognizes pencils and hyperplane families; pencils win when both apply.
pub fn classify_family(index: &SubspaceIndex, family: &Family) -> FamilyKind {
    let ctx = index.ctx();
    let members = family.members();
    if let Some(&first) = members.first() {
        for &p in index.point_ids(first) {
            if index.pencil(p as usize) == members {
                return FamilyKind::Pencil { point: p as usize };
            }
        }
    }
    if index.k() < ctx.n() {
        // the span of the members must be the hyperplane
        let parts: Vec<_> =
            members.iter().map(|&id| SpanPart::Subspace(index.subspace(id))).collect();
        if let Ok(span) = ctx.span(&parts) {
            if span.dim() + 1 == ctx.n() && index.inside(&span) == members {
                return FamilyKind::Hyperplane { hyperplane: span };
            }
        }
    }
    FamilyKind::Other
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeStats {
    pub size: usize,
    /// All families of this size, `C(N, size)`.
    pub families: u128,
    /// Orbit representatives.
    pub canonical: u64,
    /// Representatives that reached the LP (the rest miss a spread).
    pub lp_calls: u64,
    pub feasible_canonical: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalFamily {
    pub family: Family,
    pub kind: FamilyKind,
}

#[derive(Clone, Debug)]
pub struct ExhaustiveReport {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub cap: usize,
    pub group_order: usize,
    /// Smallest realizable family size, if one is at most `cap`.
    pub min: Option<usize>,
    pub sizes: Vec<SizeStats>,
    /// Every family of the minimum size, orbits expanded, in mask order.
    pub extremal: Vec<ExtremalFamily>,
    /// One verified witness per orbit of extremal families.
    pub representatives: Vec<(Family, WeightFunction)>,
}

impl ExhaustiveReport {
    pub fn count_kind(&self, pred: impl Fn(&FamilyKind) -> bool) -> usize {
        self.extremal.iter().filter(|e| pred(&e.kind)).count()
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let value = num_integer::binomial(BigInt::from(n), BigInt::from(k));
    value.to_u128().unwrap_or(u128::MAX)
}

/// Number of families the search may visit with this cap.
pub fn exhaustive_cost(subspaces: usize, cap: usize) -> u128 {
    (0..=cap.min(subspaces)).fold(0u128, |acc, s| acc.saturating_add(binomial(subspaces, s)))
}

/// Largest number of spreads collected for the pre-filter.
const MAX_SPREADS: usize = 4096;

/// Partitions of the point set into `k`-subspaces, as masks over subspace
/// ids. The weights of a spread sum to `sum f = 0`, so a realizable family
/// meets every spread.
pub fn spreads(index: &SubspaceIndex, limit: usize) -> Vec<u128> {
    let points = index.ctx().point_count();
    let len = index.len();
    if len > 128 || !points.is_multiple_of(index.point_ids(0).len()) {
        return Vec::new();
    }
    // subspaces by their least point
    let mut by_first: Vec<Vec<usize>> = alloc::vec![Vec::new(); points];
    for id in 0..len {
        let first = *index.point_ids(id).iter().min().unwrap() as usize;
        by_first[first].push(id);
    }
    let mut covered = alloc::vec![false; points];
    let mut found = Vec::new();
    fn extend(
        index: &SubspaceIndex,
        by_first: &[Vec<usize>],
        covered: &mut [bool],
        mask: u128,
        found: &mut Vec<u128>,
        limit: usize,
    ) {
        if found.len() >= limit {
            return;
        }
        let Some(p) = covered.iter().position(|c| !c) else {
            found.push(mask);
            return;
        };
        for &id in &by_first[p] {
            let pts = index.point_ids(id);
            if pts.iter().any(|&x| covered[x as usize]) {
                continue;
            }
            pts.iter().for_each(|&x| covered[x as usize] = true);
            extend(index, by_first, covered, mask | 1 << id, found, limit);
            pts.iter().for_each(|&x| covered[x as usize] = false);
        }
    }
    extend(index, &by_first, &mut covered, 0, &mut found, limit);
    found
}

/// All `r`-subsets of `bits` bit positions, in increasing order (Gosper).
fn subsets(bits: usize, r: usize) -> impl Iterator<Item = u128> {
    let mut next = (r <= bits).then(|| if r == 0 { 0 } else { (1u128 << r) - 1 });
    core::iter::from_fn(move || {
        let sub = next?;
        next = if sub == 0 {
            None
        } else {
            let c = sub & sub.wrapping_neg();
            let r = sub + c;
            let succ = (((r ^ sub) >> 2) / c) | r;
            (succ >> bits == 0).then_some(succ)
        };
        Some(sub)
    })
}

/// Orbit representatives of size `s` whose least member is `low`: how many
/// there are, how many reached the LP, and the realizable ones.
fn scan_low(
    index: &SubspaceIndex,
    action: &MaskAction,
    spreads: &[u128],
    s: usize,
    low: usize,
) -> (u64, u64, Vec<u128>) {
    let len = index.len();
    let mut canonical = 0u64;
    let mut calls = 0u64;
    let mut feasible = Vec::new();
    let mut pattern = alloc::vec![false; len];
    for sub in subsets(len - low - 1, s - 1) {
        let mask = 1u128 << low | sub << (low + 1);
        if !action.is_canonical(mask) {
            continue;
        }
        canonical += 1;
        if spreads.iter().any(|&t| t & mask == 0) {
            continue;
        }
        calls += 1;
        for (i, slot) in pattern.iter_mut().enumerate() {
            *slot = mask >> i & 1 == 1;
        }
        if is_realizable(index, &pattern) {
            feasible.push(mask);
        }
    }
    (canonical, calls, feasible)
}

/// Knobs for [`exhaustive_min_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExhaustiveOptions {
    pub cap: usize,
    /// Families the search may consider.
    pub budget: u128,
    /// Skip families that miss a spread before calling the LP.
    pub spread_filter: bool,
}

/// Smallest nonnegative count over all sum-zero weightings, restricted to
/// answers at most `cap`. Families are enumerated up to the monomial group;
/// the extremal families are reported with orbits expanded.
///
/// Fails with [`Error::BudgetExceeded`] when more than `budget` families
/// would have to be considered.
pub fn exhaustive_min<P: WorkerPool>(
    index: &SubspaceIndex,
    cap: usize,
    budget: u128,
    pool: &P,
) -> Result<ExhaustiveReport> {
    exhaustive_min_with(index, &ExhaustiveOptions { cap, budget, spread_filter: true }, pool)
}

/// [`exhaustive_min`] with explicit options.
pub fn exhaustive_min_with<P: WorkerPool>(
    index: &SubspaceIndex,
    options: &ExhaustiveOptions,
    pool: &P,
) -> Result<ExhaustiveReport> {
    let ExhaustiveOptions { cap, budget, spread_filter } = *options;
    let len = index.len();
    let needed = exhaustive_cost(len, cap);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let group = MonomialGroup::new(index)?;
    let action = MaskAction::new(&group, len)?;
    let spreads = if spread_filter { spreads(index, MAX_SPREADS) } else { Vec::new() };
    let ctx = index.ctx();
    let mut report = ExhaustiveReport {
        n: ctx.n(),
        k: index.k(),
        q: ctx.q(),
        cap,
        group_order: group.order(),
        min: None,
        sizes: Vec::new(),
        extremal: Vec::new(),
        representatives: Vec::new(),
    };
    for s in 0..=cap.min(len) {
        let (canonical, lp_calls, reps) = if s == 0 {
            (1, 1, if is_realizable(index, &alloc::vec![false; len]) { alloc::vec![0u128] } else { Vec::new() })
        } else {
            let parts = pool.map(len - s + 1, |low| scan_low(index, &action, &spreads, s, low));
            let canonical = parts.iter().map(|p| p.0).sum();
            let calls = parts.iter().map(|p| p.1).sum();
            (canonical, calls, parts.into_iter().flat_map(|p| p.2).collect::<Vec<_>>())
        };
        report.sizes.push(SizeStats {
            size: s,
            families: binomial(len, s),
            canonical,
            lp_calls,
            feasible_canonical: reps.len() as u64,
        });
        if reps.is_empty() {
            continue;
        }
        report.min = Some(s);
        let mut all = Vec::new();
        for &mask in &reps {
            let family = Family::from_mask(index, mask);
            match lp_feasible(index, &family) {
                FeasibilityResult::Feasible(f) => report.representatives.push((family, f)),
                FeasibilityResult::Infeasible(_) => unreachable!("oracle disagrees with itself"),
            }
            all.extend(action.orbit(mask));
        }
        all.sort_unstable();
        all.dedup();
        report.extremal = all
            .into_iter()
            .map(|mask| {
                let family = Family::from_mask(index, mask);
                let kind = classify_family(index, &family);
                ExtremalFamily { family, kind }
            })
            .collect();
        break;
    }
    Ok(report)
}
