//! Realizability of nonnegative families and the search for small ones.

mod conjecture;
mod exhaustive;
mod heuristic;
mod lp;
mod symmetry;

pub use conjecture::{verify_conjecture, ConjectureConfig, ConjectureReport, Regime, SearchMode, Verdict};
pub use exhaustive::{
    classify_family, exhaustive_cost, exhaustive_min, exhaustive_min_with, spreads, ExhaustiveOptions, ExhaustiveReport, ExtremalFamily, FamilyKind, SizeStats,
};
pub use heuristic::{heuristic_min, replay, replay_verified, HeuristicConfig, HeuristicReport, LedgerRecord};
pub use lp::{is_realizable, lp_feasible, Certificate, FeasibilityResult};
pub use symmetry::{MaskAction, MonomialGroup, MAX_GROUP_ORDER};
