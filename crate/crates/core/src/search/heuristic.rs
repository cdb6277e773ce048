//! Seeded local search for small realizable families.
//!
//! Starts from the pencil, the hyperplane example and the nonnegative
//! families of random weightings, then repeatedly tries to drop or swap one
//! member. Every LP call is logged; the run is a pure function of the
//! configuration, independent of the worker count.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::lp::{is_realizable, lp_feasible, FeasibilityResult};
use crate::geometry::{Grassmannian, SubspaceIndex};
use crate::pool::WorkerPool;
use crate::weights::{weight_vector, Family, WeightFunction};
use crate::{Error, Result};

/// One LP call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerRecord {
    pub seq: u64,
    pub members: Vec<usize>,
    pub feasible: bool,
    /// Size of the tested family.
    pub count: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeuristicConfig {
    /// LP calls spent after the starting families.
    pub budget: usize,
    pub seed: u64,
    /// Candidate moves tested together.
    pub batch: usize,
    /// Batches without an accepted move before restarting.
    pub patience: usize,
    /// Random weightings used as extra starting points.
    pub random_starts: usize,
}

impl HeuristicConfig {
    pub fn new(budget: usize, seed: u64) -> Self {
        HeuristicConfig { budget, seed, batch: 8, patience: 6, random_starts: 2 }
    }
}

#[derive(Clone, Debug)]
pub struct HeuristicReport {
    pub best_count: usize,
    pub best: Family,
    pub witness: WeightFunction,
    pub lp_calls: usize,
    pub records: Vec<LedgerRecord>,
}

struct Run<'a, P, S> {
    index: &'a SubspaceIndex,
    pool: &'a P,
    seed: u64,
    records: Vec<LedgerRecord>,
    sink: S,
}

impl<P: WorkerPool, S: FnMut(&LedgerRecord)> Run<'_, P, S> {
    fn log(&mut self, members: &[usize], feasible: bool) {
        let record = LedgerRecord {
            seq: self.records.len() as u64,
            members: members.to_vec(),
            feasible,
            count: members.len(),
            seed: self.seed,
        };
        (self.sink)(&record);
        self.records.push(record);
    }

    /// Tests the candidates together and logs them in order.
    fn test(&mut self, candidates: &[Vec<usize>]) -> Vec<bool> {
        let index = self.index;
        let verdicts = self.pool.map(candidates.len(), |i| {
            let mut flags = alloc::vec![false; index.len()];
            candidates[i].iter().for_each(|&id| flags[id] = true);
            is_realizable(index, &flags)
        });
        for (members, &ok) in candidates.iter().zip(&verdicts) {
            self.log(members, ok);
        }
        verdicts
    }
}

fn nonneg_members(index: &SubspaceIndex, f: &WeightFunction) -> Vec<usize> {
    weight_vector(index, f).nonneg_ids()
}

fn random_start<R: Rng>(index: &SubspaceIndex, rng: &mut R) -> Vec<usize> {
    nonneg_members(index, &WeightFunction::random(index.ctx(), rng, 64, 16))
}

/// Drop a random member (if more than one) or swap one in and one out.
fn propose<R: Rng>(len: usize, current: &[usize], rng: &mut R) -> Vec<usize> {
    let mut next = current.to_vec();
    let out = rng.gen_range(0..next.len());
    if next.len() > 1 && rng.gen_bool(0.5) {
        next.remove(out);
        return next;
    }
    if next.len() == len {
        next.remove(out);
        return next;
    }
    let incoming = loop {
        let id = rng.gen_range(0..len);
        if current.binary_search(&id).is_err() {
            break id;
        }
    };
    next[out] = incoming;
    next.sort_unstable();
    next
}

/// Best realizable family found within `config.budget` local-search LP calls.
/// `sink` receives every ledger record as it is produced.
pub fn heuristic_min<P: WorkerPool>(
    index: &SubspaceIndex,
    config: &HeuristicConfig,
    pool: &P,
    sink: impl FnMut(&LedgerRecord),
) -> Result<HeuristicReport> {
    let ctx = index.ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut run = Run { index, pool, seed: config.seed, records: Vec::new(), sink };

    let mut starts = alloc::vec![nonneg_members(index, &WeightFunction::point_pencil(ctx, 0))];
    if ctx.n() >= 2 {
        let hyperplane = Grassmannian::new(ctx, ctx.n() - 1)?.unrank(0);
        starts.push(nonneg_members(index, &WeightFunction::hyperplane_example(ctx, &hyperplane)?));
    }
    for _ in 0..config.random_starts {
        starts.push(random_start(index, &mut rng));
    }
    let verdicts = run.test(&starts);
    let mut current = starts
        .into_iter()
        .zip(verdicts)
        .filter(|(_, ok)| *ok)
        .map(|(m, _)| m)
        .min_by_key(Vec::len)
        .ok_or_else(|| Error::Unsupported(alloc::string::String::from("no starting family is realizable")))?;
    let mut best = current.clone();

    let mut spent = 0;
    let mut stale = 0;
    while spent < config.budget {
        if stale >= config.patience {
            let start = random_start(index, &mut rng);
            spent += 1;
            if run.test(core::slice::from_ref(&start))[0] {
                if start.len() < best.len() {
                    best = start.clone();
                }
                current = start;
            }
            stale = 0;
            continue;
        }
        let size = config.batch.max(1).min(config.budget - spent);
        let candidates: Vec<Vec<usize>> = (0..size).map(|_| propose(index.len(), &current, &mut rng)).collect();
        let verdicts = run.test(&candidates);
        spent += size;
        let accepted = candidates
            .iter()
            .zip(&verdicts)
            .filter(|(_, ok)| **ok)
            .map(|(c, _)| c)
            .min_by_key(|c| c.len())
            .filter(|c| c.len() <= current.len());
        match accepted {
            Some(next) => {
                let improved = next.len() < current.len();
                current = next.clone();
                if current.len() < best.len() {
                    best = current.clone();
                }
                stale = if improved { 0 } else { stale + 1 };
            }
            None => stale += 1,
        }
    }

    let family = Family::new(index, best);
    let witness = match lp_feasible(index, &family) {
        FeasibilityResult::Feasible(f) => f,
        FeasibilityResult::Infeasible(_) => unreachable!("accepted families are realizable"),
    };
    Ok(HeuristicReport { best_count: family.len(), best: family, witness, lp_calls: run.records.len(), records: run.records })
}

/// Smallest count among the feasible records.
pub fn replay(records: &[LedgerRecord]) -> Option<usize> {
    records.iter().filter(|r| r.feasible).map(|r| r.count).min()
}

/// Re-decides every record marked feasible and returns the minimum;
/// fails on the first record the oracle disagrees with.
pub fn replay_verified(index: &SubspaceIndex, records: &[LedgerRecord]) -> Result<Option<usize>> {
    let mut min: Option<usize> = None;
    for r in records.iter().filter(|r| r.feasible) {
        let mut flags = alloc::vec![false; index.len()];
        for &id in &r.members {
            if id >= index.len() {
                return Err(Error::LedgerMismatch(r.seq));
            }
            flags[id] = true;
        }
        if r.count != r.members.len() || !is_realizable(index, &flags) {
            return Err(Error::LedgerMismatch(r.seq));
        }
        min = Some(min.map_or(r.count, |m| m.min(r.count)));
    }
    Ok(min)
}
