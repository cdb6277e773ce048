use alloc::vec;
use alloc::vec::Vec;

use super::{GeometryContext, Subspace};
use crate::algebra::Elem;
use crate::{Error, Result};

#[derive(Clone, Debug)]
struct Pattern {
    pivots: Vec<usize>,
    /// (row, column) of every free entry, row-major.
    free: Vec<(usize, usize)>,
    offset: u64,
    count: u64,
}

/// Ranking and enumeration of the `k`-subspaces of `F_q^n`.
///
/// Ids run over pivot patterns in decreasing lexicographic order of their
/// pivot columns, so that for `k = 1` subspace ids coincide with point ids;
/// inside a pattern the free entries, read row by row, are the base-`q` digits
/// of the id offset (first free entry most significant).
#[derive(Clone, Debug)]
pub struct Grassmannian {
    n: usize,
    k: usize,
    q: u64,
    patterns: Vec<Pattern>,
    by_mask: Vec<(u64, usize)>,
    total: u64,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..=n - (k - cur.len()) {
            cur.push(c);
            rec(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn pivot_mask(pivots: &[usize]) -> u64 {
    pivots.iter().fold(0, |m, &c| m | 1 << c)
}

impl Grassmannian {
    pub fn new(ctx: &GeometryContext, k: usize) -> Result<Self> {
        let n = ctx.n();
        if k > n {
            return Err(Error::DimensionOutOfRange { k, n });
        }
        let q = ctx.q() as u64;
        let mut patterns = Vec::new();
        let mut offset = 0u64;
        for pivots in combinations(n, k).into_iter().rev() {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &c)| (c + 1..n).filter(|j| !pivots.contains(j)).map(move |j| (r, j)))
                .collect();
            let count = q
                .checked_pow(free.len() as u32)
                .ok_or(Error::TooLarge(u64::MAX))?;
            patterns.push(Pattern { pivots, free, offset, count });
            offset = offset.checked_add(count).ok_or(Error::TooLarge(u64::MAX))?;
        }
        let mut by_mask: Vec<(u64, usize)> =
            patterns.iter().enumerate().map(|(i, p)| (pivot_mask(&p.pivots), i)).collect();
        by_mask.sort_unstable();
        Ok(Grassmannian { n, k, q, patterns, by_mask, total: offset })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of `k`-subspaces, `gaussian(n, k, q)`.
    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn pattern_count(&self) -> usize {
        self.patterns.len()
    }

    /// Id of a `k`-subspace.
    pub fn rank(&self, s: &Subspace) -> u64 {
        assert_eq!(s.dim(), self.k, "subspace has the wrong dimension");
        let pivots: Vec<usize> = s.pivots().collect();
        let mask = pivot_mask(&pivots);
        let slot = self.by_mask.binary_search_by_key(&mask, |&(m, _)| m).unwrap();
        let pattern = &self.patterns[self.by_mask[slot].1];
        let basis = s.basis();
        let value = pattern
            .free
            .iter()
            .fold(0u64, |acc, &(r, c)| acc * self.q + basis[r * self.n + c] as u64);
        pattern.offset + value
    }

    pub fn unrank(&self, id: u64) -> Subspace {
        assert!(id < self.total, "subspace id {id} out of range");
        let idx = self.patterns.partition_point(|p| p.offset <= id) - 1;
        let pattern = &self.patterns[idx];
        let mut s = self.base(pattern);
        let mut value = id - pattern.offset;
        let basis = s.basis_mut();
        for &(r, c) in pattern.free.iter().rev() {
            basis[r * self.n + c] = (value % self.q) as Elem;
            value /= self.q;
        }
        s
    }

    fn base(&self, pattern: &Pattern) -> Subspace {
        let mut basis = vec![0 as Elem; self.k * self.n];
        for (r, &c) in pattern.pivots.iter().enumerate() {
            basis[r * self.n + c] = 1;
        }
        Subspace::from_rref(self.n, self.k, basis)
    }

    /// Visits every subspace of one pivot pattern in id order.
    pub fn for_each_in_pattern(&self, pattern_idx: usize, mut f: impl FnMut(u64, &Subspace)) {
        let pattern = &self.patterns[pattern_idx];
        let mut s = self.base(pattern);
        let slots: Vec<usize> = pattern.free.iter().map(|&(r, c)| r * self.n + c).collect();
        for id in pattern.offset..pattern.offset + pattern.count {
            f(id, &s);
            // odometer: the last free entry is least significant
            let basis = s.basis_mut();
            for &slot in slots.iter().rev() {
                let next = basis[slot] as u64 + 1;
                if next < self.q {
                    basis[slot] = next as Elem;
                    break;
                }
                basis[slot] = 0;
            }
        }
    }

    /// Visits every `k`-subspace in id order without materializing them.
    pub fn for_each(&self, mut f: impl FnMut(u64, &Subspace)) {
        for idx in 0..self.patterns.len() {
            self.for_each_in_pattern(idx, &mut f);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Subspace> + '_ {
        (0..self.total).map(|id| self.unrank(id))
    }
}

impl GeometryContext {
    pub fn grassmannian(&self, k: usize) -> Result<Grassmannian> {
        Grassmannian::new(self, k)
    }

    /// All `k`-subspaces in id order.
    pub fn enumerate_subspaces(&self, k: usize) -> Result<Vec<Subspace>> {
        let g = self.grassmannian(k)?;
        let mut out = Vec::with_capacity(g.len() as usize);
        g.for_each(|_, s| out.push(s.clone()));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian;
    use num_bigint::BigInt;

    #[test]
    fn counts_match_gaussian() {
        for (n, q) in [(4usize, 2u64), (5, 2), (4, 3), (3, 4), (3, 5)] {
            let ctx = GeometryContext::with_order(n, q).unwrap();
            for k in 0..=n {
                let g = ctx.grassmannian(k).unwrap();
                assert_eq!(BigInt::from(g.len()), gaussian(n as i64, k as i64, q).unwrap());
            }
        }
        let ctx = GeometryContext::with_order(5, 3).unwrap();
        assert_eq!(ctx.enumerate_subspaces(5).unwrap().len(), 1);
        assert_eq!(ctx.enumerate_subspaces(6), Err(Error::DimensionOutOfRange { k: 6, n: 5 }));
    }

    #[test]
    fn rank_unrank_and_streaming_agree() {
        let ctx = GeometryContext::with_order(5, 3).unwrap();
        for k in 0..=5 {
            let g = ctx.grassmannian(k).unwrap();
            let mut seen = 0u64;
            g.for_each(|id, s| {
                assert_eq!(id, seen);
                assert_eq!(g.rank(s), id);
                assert_eq!(&g.unrank(id), s);
                // already canonical
                assert_eq!(&ctx.row_space(s.basis()), s);
                seen += 1;
            });
            assert_eq!(seen, g.len());
        }
    }

    #[test]
    fn all_distinct() {
        let ctx = GeometryContext::with_order(5, 2).unwrap();
        let mut lines = ctx.enumerate_subspaces(2).unwrap();
        assert_eq!(lines.len(), 155);
        lines.sort();
        lines.dedup();
        assert_eq!(lines.len(), 155);
    }
}
