use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::algebra::{gauss, Elem, FiniteField};
use crate::{Error, Result};

/// Upper limit on the number of projective points we are willing to index.
pub const MAX_POINTS: u64 = 1 << 22;

/// The projective geometry of `F_q^n`: field, dimension and the enumerated
/// points.
#[derive(Clone, Debug)]
pub struct GeometryContext {
    n: usize,
    field: FiniteField,
    points: Vec<Elem>,
    qpow: Vec<u64>,
    gm: Vec<u64>,
}

/// A 1-dimensional subspace, by id and normalized representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjectivePoint<'a> {
    pub id: usize,
    pub coords: &'a [Elem],
}

impl GeometryContext {
    pub fn new(n: usize, field: FiniteField) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let q = field.q() as u64;
        let count = gauss(n as i64, 1, q).to_u64().unwrap_or(u64::MAX);
        if count > MAX_POINTS {
            return Err(Error::TooLarge(count));
        }
        let qpow: Vec<u64> = (0..=n as u32).map(|j| q.pow(j)).collect();
        let gm: Vec<u64> = (0..=n).map(|d| (qpow[d] - 1) / (q - 1)).collect();
        let mut ctx = GeometryContext { n, field, points: Vec::new(), qpow, gm };
        let mut points = vec![0 as Elem; n * count as usize];
        for (id, chunk) in points.chunks_exact_mut(n).enumerate() {
            ctx.unrank_point(id as u64, chunk);
        }
        ctx.points = points;
        Ok(ctx)
    }

    /// Convenience constructor for `F_q^n` with the built-in field table.
    pub fn with_order(n: usize, q: u64) -> Result<Self> {
        Self::new(n, FiniteField::new(q)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn point_count(&self) -> usize {
        self.gm[self.n] as usize
    }

    /// `gaussm(d, q)` for `0 <= d <= n`, as a machine integer.
    pub fn points_in_dim(&self, d: usize) -> u64 {
        self.gm[d]
    }

    /// `q^j` for `0 <= j <= n`.
    pub fn q_pow(&self, j: usize) -> u64 {
        self.qpow[j]
    }

    /// Dimension of a subspace holding exactly `count` points.
    pub fn dim_of_point_count(&self, count: u64) -> usize {
        match self.gm.binary_search(&count) {
            Ok(d) => d,
            Err(_) => panic!("{count} is not the point count of a subspace"),
        }
    }

    /// All points in id order (lexicographic on normalized coordinates).
    pub fn enumerate_points(&self) -> impl ExactSizeIterator<Item = ProjectivePoint<'_>> + '_ {
        self.points
            .chunks_exact(self.n)
            .enumerate()
            .map(|(id, coords)| ProjectivePoint { id, coords })
    }

    pub fn point(&self, id: usize) -> ProjectivePoint<'_> {
        ProjectivePoint { id, coords: self.point_coords(id) }
    }

    pub fn point_coords(&self, id: usize) -> &[Elem] {
        &self.points[id * self.n..(id + 1) * self.n]
    }

    /// Id of an already normalized nonzero vector.
    #[inline]
    pub fn normalized_point_id(&self, v: &[Elem]) -> usize {
        let n = self.n;
        let lead = v.iter().position(|&c| c != 0).expect("zero vector is not a point");
        debug_assert_eq!(v[lead], 1);
        let q = self.field.q() as u64;
        let tail = v[lead + 1..].iter().fold(0u64, |acc, &c| acc * q + c as u64);
        (self.gm[n - 1 - lead] + tail) as usize
    }

    /// Id of the point spanned by a nonzero vector; `None` for the zero vector.
    pub fn point_id(&self, v: &[Elem]) -> Option<usize> {
        let mut w = v.to_vec();
        self.normalize(&mut w)?;
        Some(self.normalized_point_id(&w))
    }

    /// Scales `v` so its first nonzero entry is 1; `None` for the zero vector.
    pub fn normalize(&self, v: &mut [Elem]) -> Option<()> {
        let lead = *v.iter().find(|&&c| c != 0)?;
        if lead != 1 {
            let s = self.field.recip(lead);
            for c in v.iter_mut() {
                *c = self.field.mul(*c, s);
            }
        }
        Some(())
    }

    /// Standard dot product `sum x_i y_i`.
    pub fn dot(&self, x: &[Elem], y: &[Elem]) -> Elem {
        x.iter().zip(y).fold(0, |acc, (&a, &b)| self.field.add(acc, self.field.mul(a, b)))
    }

    fn unrank_point(&self, id: u64, out: &mut [Elem]) {
        let n = self.n;
        let q = self.field.q() as u64;
        // groups with a later leading position come first
        let lead = (0..n).find(|&j| id >= self.gm[n - 1 - j] && id < self.gm[n - j]).unwrap();
        let mut tail = id - self.gm[n - 1 - lead];
        out.iter_mut().for_each(|c| *c = 0);
        out[lead] = 1;
        for c in out[lead + 1..].iter_mut().rev() {
            *c = (tail % q) as Elem;
            tail /= q;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_counts() {
        assert_eq!(GeometryContext::with_order(3, 2).unwrap().point_count(), 7);
        assert_eq!(GeometryContext::with_order(4, 3).unwrap().point_count(), 40);
        for q in [2, 3, 4, 5, 7] {
            assert_eq!(GeometryContext::with_order(1, q).unwrap().point_count(), 1);
        }
        assert_eq!(GeometryContext::with_order(0, 2).unwrap_err(), Error::ZeroDimension);
    }

    #[test]
    fn points_are_sorted_normalized_and_ranked() {
        for (n, q) in [(3, 2), (4, 3), (3, 4), (2, 5), (3, 9)] {
            let ctx = GeometryContext::with_order(n, q).unwrap();
            let pts: Vec<_> = ctx.enumerate_points().collect();
            for w in pts.windows(2) {
                assert!(w[0].coords < w[1].coords);
            }
            for p in &pts {
                assert_eq!(p.coords.iter().find(|&&c| c != 0), Some(&1));
                assert_eq!(ctx.normalized_point_id(p.coords), p.id);
            }
        }
    }

    #[test]
    fn point_id_normalizes() {
        let ctx = GeometryContext::with_order(3, 5).unwrap();
        let id = ctx.point_id(&[0, 3, 1]).unwrap();
        // 3^{-1} = 2 in F_5, so (0, 3, 1) ~ (0, 1, 2)
        assert_eq!(ctx.point_coords(id), &[0, 1, 2]);
        assert_eq!(ctx.point_id(&[0, 0, 0]), None);
        assert_eq!(ctx.dim_of_point_count(31), 3);
    }
}
