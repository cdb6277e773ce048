//! Bad configurations, the badly-meeting bound, the lemma checks and the
//! parameter certificates of the main theorem.
//!
//! A subspace `M` meets a set `Y` badly when every `A ∈ Y` meets `M` in
//! exactly one point and those points are pairwise distinct (so
//! `A ∩ B ∩ M = 0`). `Y` is a bad configuration when each member meets the
//! rest badly.

mod certificate;
mod inequalities;
mod lemmas;

use alloc::vec::Vec;

use rand::Rng;

use crate::algebra::{gauss, integer, rational_qpow, Rational};
use crate::geometry::{GeometryContext, Grassmannian, SpanPart, Subspace};
use crate::pool::WorkerPool;
use crate::{Error, Result};

pub use certificate::{table_rows, theorem_certificate, Clause, TableRow, TheoremCertificate};
pub use inequalities::{
    ac_km_ratio, bad_number_full, bad_number_partial, gauss_upper_bound, nk_tail_bound, pencil_lower_bound,
};
pub use lemmas::{verify_disjoint_bound, verify_lemma_bounds, LemmaCheck, LemmaOutcome, LemmaParams};

/// `Y` preprocessed for fast "meets badly" tests against point-id lists.
#[derive(Clone, Debug)]
pub struct BadnessTest {
    members: Vec<Vec<u64>>,
}

impl BadnessTest {
    pub fn new(ctx: &GeometryContext, ys: &[Subspace]) -> Self {
        let words = ctx.point_count().div_ceil(64);
        let members = ys
            .iter()
            .map(|a| {
                let mut set = alloc::vec![0u64; words];
                for p in ctx.point_ids(a) {
                    set[p as usize / 64] |= 1 << (p % 64);
                }
                set
            })
            .collect();
        BadnessTest { members }
    }

    /// Whether the subspace with these point ids meets `Y` badly.
    pub fn meets(&self, points: &[u32]) -> bool {
        let mut hit: Vec<u32> = Vec::with_capacity(self.members.len());
        for set in &self.members {
            let mut found = None;
            for &p in points {
                if set[p as usize / 64] >> (p % 64) & 1 == 1 {
                    if found.is_some() {
                        return false;
                    }
                    found = Some(p);
                }
            }
            match found {
                Some(p) if !hit.contains(&p) => hit.push(p),
                _ => return false,
            }
        }
        true
    }
}

/// `dim(A ∩ M) = 1` for all `A ∈ Y` and `dim(A ∩ B ∩ M) = 0` for distinct
/// `A, B ∈ Y`.
pub fn meets_badly(ctx: &GeometryContext, m: &Subspace, ys: &[Subspace]) -> bool {
    BadnessTest::new(ctx, ys).meets(&ctx.point_ids(m))
}

/// Pairwise intersections are points and no point is on three members.
pub fn is_bad_configuration(ctx: &GeometryContext, ys: &[Subspace]) -> bool {
    (0..ys.len()).all(|c| {
        let rest: Vec<Subspace> =
            ys.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, s)| s.clone()).collect();
        meets_badly(ctx, &ys[c], &rest)
    })
}

/// Number of `k`-subspaces meeting `Y` badly, streamed over the
/// Grassmannian one pivot pattern per job.
pub fn count_badly_meeting<P: WorkerPool>(
    ctx: &GeometryContext,
    ys: &[Subspace],
    k: usize,
    pool: &P,
) -> Result<u64> {
    let grass = Grassmannian::new(ctx, k)?;
    let test = BadnessTest::new(ctx, ys);
    let counts = pool.map(grass.pattern_count(), |pattern| {
        let mut points = Vec::new();
        let mut count = 0u64;
        grass.for_each_in_pattern(pattern, |_, s| {
            points.clear();
            ctx.point_ids_into(s, &mut points);
            if test.meets(&points) {
                count += 1;
            }
        });
        count
    });
    Ok(counts.into_iter().sum())
}

/// Largest `δ >= 1` with `n >= 2k + δ` and `(x-1) n >= (2x-1) k - x + δ`.
pub fn max_delta(x: usize, n: usize, k: usize) -> Option<usize> {
    let (x, n, k) = (x as i64, n as i64, k as i64);
    let delta = (n - 2 * k).min((x - 1) * n - (2 * x - 1) * k + x);
    (delta >= 1).then_some(delta as usize)
}

/// `x^2 2^x q^{-δ} [n-1 over k-1]`, the bound on subspaces meeting a bad
/// configuration of size `x` badly.
pub fn bad_config_bound(x: usize, n: usize, k: usize, q: u64, delta: usize) -> Result<Rational> {
    let mut failed = Vec::new();
    if !(1 < x && x <= k) {
        failed.push(alloc::format!("1 < x <= k required (x = {x}, k = {k})"));
    }
    if q < 3 {
        failed.push(alloc::format!("q >= 3 required (q = {q})"));
    }
    if delta < 1 {
        failed.push(alloc::format!("delta >= 1 required (delta = {delta})"));
    }
    if n < 2 * k + delta {
        failed.push(alloc::format!("n >= 2k + delta required (n = {n}, 2k + delta = {})", 2 * k + delta));
    }
    let (xi, ni, ki, di) = (x as i64, n as i64, k as i64, delta as i64);
    if (xi - 1) * ni < (2 * xi - 1) * ki - xi + di {
        failed.push(alloc::format!(
            "(x-1) n >= (2x-1) k - x + delta required ({} < {})",
            (xi - 1) * ni,
            (2 * xi - 1) * ki - xi + di
        ));
    }
    if !failed.is_empty() {
        return Err(Error::Hypothesis(failed));
    }
    let scale = integer(x as u64 * x as u64 * (1u64 << x));
    Ok(scale * rational_qpow(q, -di) * integer(gauss(ni - 1, ki - 1, q)))
}

/// A random `k`-subspace through one chosen point of every member of `ys`,
/// the chosen points pairwise distinct.
fn random_badly_meeting<R: Rng + ?Sized>(
    ctx: &GeometryContext,
    ys: &[Subspace],
    k: usize,
    rng: &mut R,
) -> Option<Subspace> {
    let mut chosen: Vec<usize> = Vec::with_capacity(ys.len());
    for a in ys {
        let pts = ctx.point_ids(a);
        let p = pts[rng.gen_range(0..pts.len())] as usize;
        if chosen.contains(&p) {
            return None;
        }
        chosen.push(p);
    }
    let parts: Vec<SpanPart> = chosen.iter().map(|&p| SpanPart::Point(p)).collect();
    let mut s = if parts.is_empty() { Subspace::zero(ctx.n()) } else { ctx.span(&parts).ok()? };
    if s.dim() > k {
        return None;
    }
    while s.dim() < k {
        let p = rng.gen_range(0..ctx.point_count());
        s = ctx.span(&[SpanPart::Subspace(&s), SpanPart::Point(p)]).ok()?;
    }
    meets_badly(ctx, &s, ys).then_some(s)
}

/// Samples up to `wanted` bad configurations of size `x` by greedy random
/// extension. Each returned configuration is verified.
pub fn find_bad_configurations<R: Rng + ?Sized>(
    ctx: &GeometryContext,
    k: usize,
    x: usize,
    wanted: usize,
    attempts: usize,
    rng: &mut R,
) -> Result<Vec<Vec<Subspace>>> {
    let grass = Grassmannian::new(ctx, k)?;
    let mut found: Vec<Vec<Subspace>> = Vec::new();
    for _ in 0..attempts {
        if found.len() >= wanted {
            break;
        }
        let mut ys = alloc::vec![grass.unrank(rng.gen_range(0..grass.len()))];
        while ys.len() < x {
            match (0..64).find_map(|_| random_badly_meeting(ctx, &ys, k, rng)) {
                Some(m) => ys.push(m),
                None => break,
            }
        }
        if ys.len() == x && is_bad_configuration(ctx, &ys) && !found.contains(&ys) {
            found.push(ys);
        }
    }
    Ok(found)
}
