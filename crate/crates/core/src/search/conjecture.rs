//! Checks the three-part conjecture on the minimum number of nonnegative
//! `k`-subspaces against the search results at one instance.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::exhaustive::{exhaustive_min, ExhaustiveReport, FamilyKind};
use super::heuristic::{heuristic_min, HeuristicConfig, LedgerRecord};
use super::lp::{lp_feasible, FeasibilityResult};
use crate::algebra::gauss;
use crate::geometry::{Grassmannian, SubspaceIndex};
use crate::pool::WorkerPool;
use crate::weights::{weight_vector, Family, WeightFunction};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Heuristic,
}

/// Which part of the conjecture applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `k < n < 2k`: minimum `[n-1 over k]`, attained by the hyperplane example.
    A,
    /// `n = 2k`: minimum `[n-1 over k-1]`, attained exactly by pencils and hyperplane families.
    B,
    /// `n > 2k`: minimum `[n-1 over k-1]`, attained only by pencils.
    C,
}

impl Regime {
    pub fn of(n: usize, k: usize) -> Option<Regime> {
        if k == 0 || k >= n {
            None
        } else if n < 2 * k {
            Some(Regime::A)
        } else if n == 2 * k {
            Some(Regime::B)
        } else {
            Some(Regime::C)
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Regime::A => "a",
            Regime::B => "b",
            Regime::C => "c",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Confirmed,
    Unresolved,
    /// A realizable family contradicting the claim, with its witness.
    Refuted { family: Family, witness: WeightFunction },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Confirmed => "CONFIRMED",
            Verdict::Unresolved => "UNRESOLVED",
            Verdict::Refuted { .. } => "REFUTED",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConjectureConfig {
    pub mode: SearchMode,
    /// Families the exhaustive search may consider.
    pub family_budget: u128,
    pub heuristic: HeuristicConfig,
}

impl ConjectureConfig {
    pub fn new(mode: SearchMode, seed: u64) -> Self {
        ConjectureConfig { mode, family_budget: 50_000_000, heuristic: HeuristicConfig::new(2000, seed) }
    }
}

#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub mode: SearchMode,
    pub regime: Regime,
    pub claimed_min: usize,
    /// Size of the nonnegative family of the construction attaining the claim.
    pub example_count: usize,
    /// Best realizable family found, with its verified witness.
    pub best_count: usize,
    pub best: Family,
    pub witness: WeightFunction,
    pub exhaustive: Option<ExhaustiveReport>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

fn witness_of(index: &SubspaceIndex, family: &Family) -> WeightFunction {
    match lp_feasible(index, family) {
        FeasibilityResult::Feasible(f) => f,
        FeasibilityResult::Infeasible(_) => unreachable!("family came from a realizable search result"),
    }
}

/// Evaluates the applicable part of the conjecture at `index`.
pub fn verify_conjecture<P: WorkerPool>(
    index: &SubspaceIndex,
    config: &ConjectureConfig,
    pool: &P,
    sink: impl FnMut(&LedgerRecord),
) -> Result<ConjectureReport> {
    let ctx = index.ctx();
    let (n, k, q) = (ctx.n(), index.k(), ctx.q());
    let regime = Regime::of(n, k).ok_or_else(|| Error::Unsupported(format!("need 0 < k < n (n = {n}, k = {k})")))?;
    let claimed = match regime {
        Regime::A => gauss(n as i64 - 1, k as i64, q as u64),
        _ => gauss(n as i64 - 1, k as i64 - 1, q as u64),
    }
    .to_usize()
    .expect("claimed minimum fits the enumerated geometry");
    let mut notes = Vec::new();

    let example_f = match regime {
        Regime::A => WeightFunction::hyperplane_example(ctx, &Grassmannian::new(ctx, n - 1)?.unrank(0))?,
        _ => WeightFunction::point_pencil(ctx, 0),
    };
    let example = weight_vector(index, &example_f).nonneg_family(index);
    let example_count = example.len();
    if !lp_feasible(index, &example).is_feasible() {
        unreachable!("a nonnegative family is realizable by its own weighting");
    }
    notes.push(format!(
        "{} attains {example_count} nonnegative {k}-subspaces (claimed minimum {claimed})",
        if regime == Regime::A { "hyperplane example" } else { "point pencil" }
    ));
    let empty = Family::empty(index);
    if lp_feasible(index, &empty).is_feasible() {
        unreachable!("the empty family is never realizable");
    }
    notes.push(String::from("empty family is infeasible, so the minimum is at least 1"));

    let mut report = ConjectureReport {
        n,
        k,
        q,
        mode: config.mode,
        regime,
        claimed_min: claimed,
        example_count,
        best_count: example_count,
        best: example,
        witness: example_f,
        exhaustive: None,
        verdict: Verdict::Unresolved,
        notes,
    };

    match config.mode {
        SearchMode::Heuristic => {
            let found = heuristic_min(index, &config.heuristic, pool, sink)?;
            report.notes.push(format!("local search: {} LP calls, best {}", found.lp_calls, found.best_count));
            if found.best_count < report.best_count {
                report.best_count = found.best_count;
                report.best = found.best;
                report.witness = found.witness;
            }
            report.verdict = if report.best_count < claimed {
                Verdict::Refuted { family: report.best.clone(), witness: report.witness.clone() }
            } else if claimed == 1 {
                Verdict::Confirmed
            } else {
                Verdict::Unresolved
            };
        }
        SearchMode::Exhaustive => {
            let ex = exhaustive_min(index, claimed, config.family_budget, pool)?;
            let min = ex.min.expect("the example is within the cap");
            let (first, witness) = ex.representatives[0].clone();
            report.best_count = min;
            report.best = first;
            report.witness = witness;
            let pencils = ex.count_kind(|k| matches!(k, FamilyKind::Pencil { .. }));
            let hyperplanes = ex.count_kind(|k| matches!(k, FamilyKind::Hyperplane { .. }));
            let other = ex.extremal.iter().find(|e| e.kind == FamilyKind::Other).map(|e| e.family.clone());
            report.notes.push(format!(
                "exhaustive: minimum {min}, {} extremal families ({pencils} pencils, {hyperplanes} hyperplane families)",
                ex.extremal.len()
            ));
            let refute = |family: Family| {
                let witness = witness_of(index, &family);
                Verdict::Refuted { family, witness }
            };
            let points = ctx.point_count();
            let hyperplane_total = points;
            report.verdict = if min < claimed {
                Verdict::Refuted { family: report.best.clone(), witness: report.witness.clone() }
            } else {
                match (regime, other) {
                    (Regime::A, _) => Verdict::Confirmed,
                    (_, Some(family)) => refute(family),
                    (Regime::B, None) if pencils + hyperplanes == ex.extremal.len() => {
                        // each pencil and each hyperplane family must occur, up to coincidences at k = 1
                        let expected = if k == 1 { points } else { points + hyperplane_total };
                        if ex.extremal.len() == expected {
                            Verdict::Confirmed
                        } else {
                            Verdict::Unresolved
                        }
                    }
                    (Regime::C, None) if hyperplanes == 0 && pencils == points => Verdict::Confirmed,
                    (Regime::C, None) => match ex.extremal.iter().find(|e| !matches!(e.kind, FamilyKind::Pencil { .. })) {
                        Some(e) => refute(e.family.clone()),
                        None => Verdict::Unresolved,
                    },
                    _ => Verdict::Unresolved,
                }
            };
            report.exhaustive = Some(ex);
        }
    }
    Ok(report)
}
