use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{GeometryContext, Grassmannian, Subspace};
use crate::{Error, Result};

/// Materialized `k`-subspaces of a geometry, each with its point ids and a
/// point bitset. Everything downstream addresses subspaces by id.
#[derive(Clone, Debug)]
pub struct SubspaceIndex {
    ctx: Arc<GeometryContext>,
    grass: Grassmannian,
    subspaces: Vec<Subspace>,
    stride: usize,
    points: Vec<u32>,
    words: usize,
    sets: Vec<u64>,
}

/// Refuse to materialize more subspaces than this.
const MAX_SUBSPACES: u64 = 1 << 21;

impl SubspaceIndex {
    pub fn new(ctx: Arc<GeometryContext>, k: usize) -> Result<Self> {
        let grass = ctx.grassmannian(k)?;
        if grass.len() > MAX_SUBSPACES {
            return Err(Error::TooLarge(grass.len()));
        }
        let stride = ctx.points_in_dim(k) as usize;
        let words = ctx.point_count().div_ceil(64);
        let total = grass.len() as usize;
        let mut subspaces = Vec::with_capacity(total);
        let mut points = Vec::with_capacity(total * stride);
        let mut sets = alloc::vec![0u64; total * words];
        grass.for_each(|id, s| {
            let start = points.len();
            ctx.point_ids_into(s, &mut points);
            let set = &mut sets[id as usize * words..(id as usize + 1) * words];
            for &p in &points[start..] {
                set[p as usize / 64] |= 1 << (p % 64);
            }
            subspaces.push(s.clone());
        });
        Ok(SubspaceIndex { ctx, grass, subspaces, stride, points, words, sets })
    }

    /// Convenience: build the context for `F_q^n` and index its `k`-subspaces.
    pub fn build(n: usize, k: usize, q: u64) -> Result<Self> {
        Self::new(Arc::new(GeometryContext::with_order(n, q)?), k)
    }

    pub fn ctx(&self) -> &GeometryContext {
        &self.ctx
    }

    pub fn shared_ctx(&self) -> Arc<GeometryContext> {
        Arc::clone(&self.ctx)
    }

    pub fn k(&self) -> usize {
        self.grass.k()
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn q(&self) -> u32 {
        self.ctx.q()
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn subspace(&self, id: usize) -> &Subspace {
        &self.subspaces[id]
    }

    pub fn grassmannian(&self) -> &Grassmannian {
        &self.grass
    }

    /// Id of a `k`-subspace of this geometry.
    pub fn id_of(&self, s: &Subspace) -> Option<usize> {
        if s.dim() != self.k() || s.n() != self.n() {
            return None;
        }
        Some(self.grass.rank(s) as usize)
    }

    pub fn point_ids(&self, id: usize) -> &[u32] {
        &self.points[id * self.stride..(id + 1) * self.stride]
    }

    pub fn point_set(&self, id: usize) -> &[u64] {
        &self.sets[id * self.words..(id + 1) * self.words]
    }

    #[inline]
    pub fn contains_point(&self, id: usize, point: usize) -> bool {
        self.point_set(id)[point / 64] >> (point % 64) & 1 == 1
    }

    /// Number of points shared by two indexed subspaces.
    #[inline]
    pub fn common_points(&self, a: usize, b: usize) -> u64 {
        let (x, y) = (self.point_set(a), self.point_set(b));
        x.iter().zip(y).map(|(u, v)| (u & v).count_ones() as u64).sum()
    }

    /// `dim(A ∩ B)` from the shared point count.
    #[inline]
    pub fn intersect_dim(&self, a: usize, b: usize) -> usize {
        self.ctx.dim_of_point_count(self.common_points(a, b))
    }

    /// Ids of the subspaces through a point (the point pencil).
    pub fn pencil(&self, point: usize) -> Vec<usize> {
        (0..self.len()).filter(|&id| self.contains_point(id, point)).collect()
    }

    /// Ids of the subspaces contained in `big`.
    pub fn inside(&self, big: &Subspace) -> Vec<usize> {
        (0..self.len()).filter(|&id| self.ctx.contains(big, &self.subspaces[id])).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gauss;
    use crate::geometry::SpanPart;
    use num_traits::ToPrimitive;

    #[test]
    fn pencil_and_hyperplane_counts() {
        for (n, k, q) in [(4usize, 2usize, 2u64), (5, 2, 2), (4, 2, 3), (5, 3, 2)] {
            let idx = SubspaceIndex::build(n, k, q).unwrap();
            let through = gauss(n as i64 - 1, k as i64 - 1, q).to_usize().unwrap();
            for p in 0..idx.ctx().point_count() {
                assert_eq!(idx.pencil(p).len(), through);
            }
        }
    }

    #[test]
    fn hyperplanes_through_a_subspace() {
        // brute force: hyperplanes containing a fixed k-subspace number gaussm(n - k)
        for (n, k, q) in [(4usize, 2usize, 2u64), (5, 2, 3)] {
            let idx = SubspaceIndex::build(n, k, q).unwrap();
            let ctx = idx.ctx();
            let hyperplanes = ctx.enumerate_subspaces(n - 1).unwrap();
            let expected = ctx.points_in_dim(n - k) as usize;
            for s in idx.subspaces().iter().step_by(7) {
                let count = hyperplanes.iter().filter(|h| ctx.contains(h, s)).count();
                assert_eq!(count, expected);
            }
        }
    }

    #[test]
    fn bitset_and_rank_routes_agree() {
        let idx = SubspaceIndex::build(4, 2, 3).unwrap();
        let ctx = idx.ctx();
        for a in (0..idx.len()).step_by(5) {
            for b in (0..idx.len()).step_by(3) {
                let rank_route = ctx.intersect_dim(idx.subspace(a), idx.subspace(b)).unwrap();
                assert_eq!(idx.intersect_dim(a, b), rank_route);
                // modular law: dim(A ∩ B) + dim(A + B) = dim A + dim B
                let sum = ctx
                    .span(&[SpanPart::Subspace(idx.subspace(a)), SpanPart::Subspace(idx.subspace(b))])
                    .unwrap();
                assert_eq!(rank_route + sum.dim(), 4);
            }
        }
        assert_eq!(idx.id_of(idx.subspace(17)), Some(17));
    }
}
