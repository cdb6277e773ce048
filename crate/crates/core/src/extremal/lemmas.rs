//! Numeric checks of the counting lemmas on a concrete weighting.
//!
//! Each check evaluates a lemma's hypotheses on the instance and the
//! weighting; when they hold, the conclusion is verified by exact counting.
//! Hypothesis failures are reported as skips, never as errors.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::certificate::exceeds_clause_a;
use super::max_delta;
use crate::algebra::{factorial, gauss, integer, rational, rational_qpow, Rational};
use crate::geometry::SubspaceIndex;
use crate::weights::{weight_vector, WeightFunction, WeightVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaOutcome {
    /// The conclusion held in every one of `checked` instances.
    Holds { checked: usize },
    /// A counterexample certificate.
    Violated(String),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    pub lemma: &'static str,
    pub outcome: LemmaOutcome,
}

impl LemmaCheck {
    fn new(lemma: &'static str, outcome: LemmaOutcome) -> Self {
        LemmaCheck { lemma, outcome }
    }

    pub fn is_violation(&self) -> bool {
        matches!(self.outcome, LemmaOutcome::Violated(_))
    }
}

/// Free constants of the lemma chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaParams {
    /// Size of the bad configuration sought.
    pub x: usize,
    /// The constant `c` with `3 <= c <= q`.
    pub c: Rational,
    /// Largest share of `[n-1 over k-1]` nonnegative subspaces allowed
    /// through one point in the existence lemma.
    pub point_share: Rational,
    /// Numerator constant of the candidate range in the existence lemma.
    pub tilde_factor: Rational,
    /// Cap on the index subsets enumerated for the common-meeting checks.
    pub max_subsets: usize,
}

impl LemmaParams {
    /// The constants used in the proof of the main theorem:
    /// `c = (x-2)! 2^{x+1}`, point share `3/q`, candidate factor `(x-2)! 2^{x+1}`.
    pub fn theorem(x: usize, q: u64) -> Self {
        let c = integer(factorial(x.saturating_sub(2) as u64) << (x + 1));
        LemmaParams { x, c: c.clone(), point_share: rational(3, q), tilde_factor: c, max_subsets: 4096 }
    }

    pub fn with_c(mut self, c: Rational) -> Self {
        self.c = c;
        self
    }
}

struct Snapshot<'a> {
    index: &'a SubspaceIndex,
    b: WeightVector,
    nonneg: Vec<bool>,
    nonneg_count: usize,
    /// `[n-1 over k-1]`.
    g: Rational,
    a: usize,
    /// Subspaces meeting `A` in a point, heaviest first (ties by id).
    cs: Vec<usize>,
}

impl<'a> Snapshot<'a> {
    fn new(index: &'a SubspaceIndex, f: &WeightFunction) -> Self {
        let b = weight_vector(index, f);
        let nonneg: Vec<bool> = b.values().iter().map(|v| !v.is_negative()).collect();
        let nonneg_count = nonneg.iter().filter(|&&x| x).count();
        let (n, k, q) = (index.n() as i64, index.k() as i64, index.q() as u64);
        let a = b.argmax().unwrap_or(0);
        let mut cs: Vec<usize> = (0..index.len()).filter(|&s| index.common_points(a, s) == 1).collect();
        cs.sort_by(|&x, &y| b.get(y).cmp(b.get(x)).then(x.cmp(&y)));
        Snapshot { index, b, nonneg, nonneg_count, g: integer(gauss(n - 1, k - 1, q)), a, cs }
    }

    fn n(&self) -> i64 {
        self.index.n() as i64
    }

    fn k(&self) -> i64 {
        self.index.k() as i64
    }

    fn q(&self) -> u64 {
        self.index.q() as u64
    }

    fn b_a(&self) -> &Rational {
        self.b.get(self.a)
    }

    /// `3 / q^{n-2k+1}`.
    fn tail(&self, factor: i64) -> Rational {
        integer(factor) * rational_qpow(self.q(), -(self.n() - 2 * self.k() + 1))
    }

    fn nonneg_meeting_all_in_a_point(&self, members: &[usize]) -> usize {
        (0..self.index.len())
            .filter(|&s| self.nonneg[s] && members.iter().all(|&m| self.index.common_points(m, s) == 1))
            .count()
    }

    /// How many nonnegative subspaces contain each point.
    fn point_loads(&self) -> Vec<usize> {
        let mut loads = alloc::vec![0usize; self.index.ctx().point_count()];
        for s in (0..self.index.len()).filter(|&s| self.nonneg[s]) {
            for &p in self.index.point_ids(s) {
                loads[p as usize] += 1;
            }
        }
        loads
    }

    /// `floor((c - 3)/q * G + 1)`, capped by the number of candidates.
    fn candidate_range(&self, factor: &Rational) -> usize {
        let bound = (factor - integer(3)) / integer(self.q()) * &self.g + Rational::one();
        bound.floor().to_integer().to_usize().unwrap_or(0).min(self.cs.len())
    }

    fn common_checks(&self, c: &Rational) -> Option<String> {
        let mut why = Vec::new();
        if self.n() < 2 * self.k() + 1 {
            why.push(format!("needs n >= 2k + 1 (n = {}, k = {})", self.n(), self.k()));
        }
        if *c < integer(3) || *c > integer(self.q()) {
            why.push(format!("needs 3 <= c <= q (c = {c}, q = {})", self.q()));
        }
        if integer(self.nonneg_count as u64) > self.g {
            why.push(format!("needs at most {} nonnegative subspaces (found {})", self.g, self.nonneg_count));
        }
        if !self.b_a().is_positive() {
            why.push(String::from("weighting is identically zero"));
        }
        (!why.is_empty()).then(|| why.join("; "))
    }
}

fn distance_one_count(s: &Snapshot) -> LemmaCheck {
    const NAME: &str = "distance-one count";
    if s.n() < 2 * s.k() + 1 {
        return LemmaCheck::new(NAME, LemmaOutcome::Skipped(format!("needs n >= 2k + 1 (n = {})", s.n())));
    }
    if !s.b_a().is_positive() {
        return LemmaCheck::new(NAME, LemmaOutcome::Skipped("highest weight is 0, ratio undefined".into()));
    }
    let factor = (Rational::one() - s.tail(3)) * &s.g / s.b_a();
    let mut checked = 0;
    for c in (0..s.index.len()).filter(|&c| s.nonneg[c]) {
        let count = (0..s.index.len()).filter(|&t| s.nonneg[t] && s.index.common_points(c, t) == 1).count();
        let bound = &factor * s.b.get(c);
        if integer(count as u64) < bound {
            return LemmaCheck::new(
                NAME,
                LemmaOutcome::Violated(format!("subspace {c}: {count} nonnegative neighbours < {bound}")),
            );
        }
        checked += 1;
    }
    LemmaCheck::new(NAME, LemmaOutcome::Holds { checked })
}

fn top_neighbours(s: &Snapshot, p: &LemmaParams) -> LemmaCheck {
    const NAME: &str = "top neighbours near the maximum";
    if let Some(why) = s.common_checks(&p.c) {
        return LemmaCheck::new(NAME, LemmaOutcome::Skipped(why));
    }
    let q = integer(s.q());
    let floor = (Rational::one() - &p.c / &q) * s.b_a();
    let range = s.candidate_range(&p.c);
    for (i, &c) in s.cs.iter().take(range).enumerate() {
        if s.b.get(c) <= &floor {
            return LemmaCheck::new(
                NAME,
                LemmaOutcome::Violated(format!("C_{} = subspace {c}: weight {} <= {floor}", i + 1, s.b.get(c))),
            );
        }
    }
    LemmaCheck::new(NAME, LemmaOutcome::Holds { checked: range })
}

/// Subsets of `1..=range` with at most `max_len` elements, in order of size
/// then lexicographically, at most `cap` of them.
fn index_subsets(range: usize, max_len: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for set in &frontier {
            let start = set.last().map_or(1, |&l| l + 1);
            for i in start..=range {
                if out.len() >= cap {
                    return out;
                }
                let mut grown = set.clone();
                grown.push(i);
                out.push(grown.clone());
                next.push(grown);
            }
        }
        frontier = next;
    }
    out
}

fn is_bad(s: &Snapshot, members: &[usize]) -> bool {
    let idx = s.index;
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if idx.common_points(a, b) != 1 {
                return false;
            }
        }
    }
    // no point on three members
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate().skip(i + 1) {
            for &c in &members[j + 1..] {
                let shared = idx.point_set(a).iter().zip(idx.point_set(b)).zip(idx.point_set(c));
                if shared.map(|((x, y), z)| (x & y & z).count_ones()).sum::<u32>() != 0 {
                    return false;
                }
            }
        }
    }
    true
}

fn shared_point(s: &Snapshot, a: usize, b: usize) -> usize {
    let idx = s.index;
    for (w, (x, y)) in idx.point_set(a).iter().zip(idx.point_set(b)).enumerate() {
        let both = x & y;
        if both != 0 {
            return w * 64 + both.trailing_zeros() as usize;
        }
    }
    unreachable!("members of a bad configuration meet in a point")
}

fn common_meeting(s: &Snapshot, p: &LemmaParams) -> [LemmaCheck; 2] {
    const NAME_A: &str = "nonnegative subspaces meeting A and top neighbours";
    const NAME_B: &str = "heavy point of a bad configuration";
    if let Some(why) = s.common_checks(&p.c) {
        return [
            LemmaCheck::new(NAME_A, LemmaOutcome::Skipped(why.clone())),
            LemmaCheck::new(NAME_B, LemmaOutcome::Skipped(why)),
        ];
    }
    let q = integer(s.q());
    let range = s.candidate_range(&p.c);
    let loads = s.point_loads();
    let (mut checked_a, mut checked_b) = (0, 0);
    for subset in index_subsets(range, s.k() as usize - 1, p.max_subsets) {
        let x = subset.len() + 1;
        let mut members = alloc::vec![s.a];
        members.extend(subset.iter().map(|&i| s.cs[i - 1]));
        let base = Rational::one() - integer(x as u64 - 1) * &p.c / &q - s.tail(3 * x as i64);
        let count = s.nonneg_meeting_all_in_a_point(&members);
        if integer(count as u64) < &base * &s.g {
            return [
                LemmaCheck::new(
                    NAME_A,
                    LemmaOutcome::Violated(format!("I = {subset:?}: {count} < {}", &base * &s.g)),
                ),
                LemmaCheck::new(NAME_B, LemmaOutcome::Skipped("earlier part violated".into())),
            ];
        }
        checked_a += 1;
        if x < 2 || !is_bad(s, &members) {
            continue;
        }
        let Some(delta) = max_delta(x, s.n() as usize, s.k() as usize) else {
            continue;
        };
        let penalty = integer((x * x) as u64 * (1u64 << x)) * rational_qpow(s.q(), -(delta as i64));
        let pairs = integer((x * (x - 1) / 2) as u64);
        let bound = (base - penalty) * &s.g / pairs;
        let best = (0..x)
            .flat_map(|i| (i + 1..x).map(move |j| (i, j)))
            .map(|(i, j)| loads[shared_point(s, members[i], members[j])])
            .max()
            .unwrap_or(0);
        if integer(best as u64) < bound {
            return [
                LemmaCheck::new(NAME_A, LemmaOutcome::Holds { checked: checked_a }),
                LemmaCheck::new(
                    NAME_B,
                    LemmaOutcome::Violated(format!("I = {subset:?}: heaviest shared point {best} < {bound}")),
                ),
            ];
        }
        checked_b += 1;
    }
    let b_outcome = if checked_b == 0 {
        LemmaOutcome::Skipped("no bad configuration among the candidates".into())
    } else {
        LemmaOutcome::Holds { checked: checked_b }
    };
    [LemmaCheck::new(NAME_A, LemmaOutcome::Holds { checked: checked_a }), LemmaCheck::new(NAME_B, b_outcome)]
}

/// Backtracking search for a bad configuration of `x` members containing
/// `first`, drawn from `pool`.
fn find_bad_within(s: &Snapshot, first: usize, pool: &[usize], x: usize) -> Option<Vec<usize>> {
    fn extend(s: &Snapshot, chosen: &mut Vec<usize>, pool: &[usize], from: usize, x: usize) -> bool {
        if chosen.len() == x {
            return true;
        }
        for i in from..pool.len() {
            chosen.push(pool[i]);
            if is_bad(s, chosen) && extend(s, chosen, pool, i + 1, x) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = alloc::vec![first];
    extend(s, &mut chosen, pool, 0, x).then_some(chosen)
}

fn bad_configuration_exists(s: &Snapshot, p: &LemmaParams) -> LemmaCheck {
    const NAME: &str = "bad configuration among the top neighbours";
    let x = p.x;
    let mut why = Vec::new();
    if s.n() < 2 * s.k() + 1 {
        why.push(format!("needs n >= 2k + 1 (n = {})", s.n()));
    }
    if x < 2 || x as i64 > s.k() {
        why.push(format!("needs 2 <= x <= k (x = {x})"));
    } else if !exceeds_clause_a(s.q(), x as u64) {
        why.push(format!("needs q > (x-1)! 2^(x+2) (q = {})", s.q()));
    }
    if integer(s.nonneg_count as u64) > s.g {
        why.push(format!("needs at most {} nonnegative subspaces", s.g));
    }
    let heaviest = s.point_loads().into_iter().max().unwrap_or(0);
    if integer(heaviest as u64) > &p.point_share * &s.g {
        why.push(format!("a point lies on {heaviest} nonnegative subspaces"));
    }
    if !s.b_a().is_positive() {
        why.push(String::from("weighting is identically zero"));
    }
    if !why.is_empty() {
        return LemmaCheck::new(NAME, LemmaOutcome::Skipped(why.join("; ")));
    }
    let range = s.candidate_range(&p.tilde_factor);
    match find_bad_within(s, s.a, &s.cs[..range], x) {
        Some(_) => LemmaCheck::new(NAME, LemmaOutcome::Holds { checked: 1 }),
        None => LemmaCheck::new(
            NAME,
            LemmaOutcome::Violated(format!("no bad {x}-configuration through A among {range} candidates")),
        ),
    }
}

fn disjoint_bound(s: &Snapshot) -> LemmaCheck {
    const NAME: &str = "nonnegative subspaces disjoint from a negative one";
    let delta = s.n() - 2 * s.k();
    if delta < 0 || delta >= s.k() {
        return LemmaCheck::new(
            NAME,
            LemmaOutcome::Skipped(format!("needs n = 2k + delta with 0 <= delta < k (delta = {delta})")),
        );
    }
    let bound = (Rational::one() - rational(2, s.q())) * &s.g;
    let mut checked = 0;
    for t in (0..s.index.len()).filter(|&t| !s.nonneg[t]) {
        let count = (0..s.index.len()).filter(|&u| s.nonneg[u] && s.index.common_points(t, u) == 0).count();
        if integer(count as u64) < bound {
            return LemmaCheck::new(
                NAME,
                LemmaOutcome::Violated(format!("negative subspace {t}: {count} disjoint nonnegative < {bound}")),
            );
        }
        checked += 1;
    }
    if checked == 0 && s.b.values().iter().all(Zero::is_zero) {
        return LemmaCheck::new(NAME, LemmaOutcome::Skipped("no negative subspace".into()));
    }
    LemmaCheck::new(NAME, LemmaOutcome::Holds { checked })
}

/// Runs every lemma check on `f`, including [`verify_disjoint_bound`].
pub fn verify_lemma_bounds(index: &SubspaceIndex, f: &WeightFunction, params: &LemmaParams) -> Vec<LemmaCheck> {
    let s = Snapshot::new(index, f);
    let mut out = alloc::vec![distance_one_count(&s), top_neighbours(&s, params)];
    out.extend(common_meeting(&s, params));
    out.push(bad_configuration_exists(&s, params));
    out.push(disjoint_bound(&s));
    out
}

/// For `n = 2k + δ`, `0 <= δ < k`: every negative `T` is disjoint from at
/// least `(1 - 2/q) [n-1 over k-1]` nonnegative subspaces.
pub fn verify_disjoint_bound(index: &SubspaceIndex, f: &WeightFunction) -> LemmaCheck {
    disjoint_bound(&Snapshot::new(index, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::SpanPart;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assert_no_violation(checks: &[LemmaCheck]) {
        for c in checks {
            assert!(!c.is_violation(), "{}: {:?}", c.lemma, c.outcome);
        }
    }

    #[test]
    fn pencil_on_5_2_3() {
        let idx = SubspaceIndex::build(5, 2, 3).unwrap();
        let f = WeightFunction::point_pencil(idx.ctx(), 7);
        let checks = verify_lemma_bounds(&idx, &f, &LemmaParams::theorem(2, 3).with_c(integer(3)));
        assert_no_violation(&checks);
        assert!(matches!(checks[0].outcome, LemmaOutcome::Holds { checked: 40 }));
        assert!(matches!(checks[1].outcome, LemmaOutcome::Holds { .. }));
        assert!(matches!(checks[4].outcome, LemmaOutcome::Skipped(_)));
        assert!(matches!(checks[5].outcome, LemmaOutcome::Holds { .. }));
    }

    #[test]
    fn zero_weighting_is_skipped() {
        let idx = SubspaceIndex::build(5, 2, 3).unwrap();
        let checks = verify_lemma_bounds(&idx, &WeightFunction::zero(idx.ctx()), &LemmaParams::theorem(2, 3));
        assert!(checks.iter().take(5).all(|c| matches!(c.outcome, LemmaOutcome::Skipped(_))));
    }

    #[test]
    fn theorem_constant_exceeds_small_q() {
        let idx = SubspaceIndex::build(5, 2, 3).unwrap();
        let f = WeightFunction::point_pencil(idx.ctx(), 0);
        let checks = verify_lemma_bounds(&idx, &f, &LemmaParams::theorem(2, 3));
        // c = 8 > q = 3
        assert!(matches!(&checks[1].outcome, LemmaOutcome::Skipped(why) if why.contains("c <= q")));
    }

    #[test]
    fn hyperplane_example_disjoint_bound() {
        let idx = SubspaceIndex::build(4, 2, 3).unwrap();
        let ctx = idx.ctx();
        let h = ctx.span(&[SpanPart::Point(0), SpanPart::Point(1), SpanPart::Point(4)]).unwrap();
        let f = WeightFunction::hyperplane_example(ctx, &h).unwrap();
        let check = verify_disjoint_bound(&idx, &f);
        assert!(matches!(check.outcome, LemmaOutcome::Holds { .. }), "{check:?}");
        let idx6 = SubspaceIndex::build(6, 2, 2).unwrap();
        let g = WeightFunction::point_pencil(idx6.ctx(), 0);
        assert!(matches!(verify_disjoint_bound(&idx6, &g).outcome, LemmaOutcome::Skipped(_)));
    }

    #[test]
    fn random_weightings_5_2_3() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let idx = SubspaceIndex::build(5, 2, 3).unwrap();
        for _ in 0..5 {
            let f = WeightFunction::random(idx.ctx(), &mut rng, 40, 6);
            assert_no_violation(&verify_lemma_bounds(&idx, &f, &LemmaParams::theorem(2, 3).with_c(integer(3))));
        }
    }

    #[test]
    fn subsets() {
        assert_eq!(index_subsets(3, 1, 100), [&[][..], &[1], &[2], &[3]]);
        assert_eq!(index_subsets(3, 2, 100).len(), 7);
        assert_eq!(index_subsets(10, 3, 5).len(), 5);
    }
}
