use alloc::vec;
use alloc::vec::Vec;

use super::GeometryContext;
use crate::algebra::{Elem, FiniteField};
use crate::{Error, Result};

/// A subspace of `F_q^n`, held as its reduced row echelon basis (no zero
/// rows). Two `Subspace`s are equal iff they are the same subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    dim: usize,
    basis: Vec<Elem>,
}

/// Generators accepted by [`GeometryContext::span`].
#[derive(Clone, Copy, Debug)]
pub enum SpanPart<'a> {
    Point(usize),
    Subspace(&'a Subspace),
    Vector(&'a [Elem]),
}

impl Subspace {
    pub(crate) fn from_rref(n: usize, dim: usize, basis: Vec<Elem>) -> Self {
        debug_assert_eq!(basis.len(), n * dim);
        Subspace { n, dim, basis }
    }

    pub fn zero(n: usize) -> Self {
        Subspace { n, dim: 0, basis: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Flat row-major RREF basis, `dim * n` entries.
    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[Elem]> + '_ {
        // chunks_exact panics on a zero chunk size
        self.basis.chunks_exact(self.n.max(1)).take(self.dim)
    }

    /// Pivot column of each row.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows().map(|r| r.iter().position(|&c| c != 0).unwrap())
    }

    pub(crate) fn basis_mut(&mut self) -> &mut [Elem] {
        &mut self.basis
    }
}

/// Gauss-Jordan elimination on a `rows x cols` row-major matrix. The first
/// `rank` rows end up in reduced row echelon form; the rank is returned.
pub(crate) fn rref_in_place(field: &FiniteField, m: &mut [Elem], rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| m[r * cols + c] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                m.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let s = field.recip(m[rank * cols + c]);
        if s != 1 {
            for j in c..cols {
                m[rank * cols + j] = field.mul(m[rank * cols + j], s);
            }
        }
        for r in 0..rows {
            if r == rank {
                continue;
            }
            let factor = m[r * cols + c];
            if factor == 0 {
                continue;
            }
            let neg = field.neg(factor);
            for j in c..cols {
                let x = m[rank * cols + j];
                if x != 0 {
                    m[r * cols + j] = field.add(m[r * cols + j], field.mul(neg, x));
                }
            }
        }
        rank += 1;
    }
    rank
}

impl GeometryContext {
    /// The subspace spanned by arbitrary row vectors (flat, `n` per row).
    pub fn row_space(&self, rows: &[Elem]) -> Subspace {
        let n = self.n();
        let mut m = rows.to_vec();
        let count = m.len() / n;
        let rank = rref_in_place(self.field(), &mut m, count, n);
        m.truncate(rank * n);
        Subspace::from_rref(n, rank, m)
    }

    fn check_ambient(&self, s: &Subspace) -> Result<()> {
        if s.n != self.n() {
            return Err(Error::DimensionMismatch(s.n, self.n()));
        }
        Ok(())
    }

    /// Row space of all stacked generators, in RREF.
    pub fn span(&self, parts: &[SpanPart<'_>]) -> Result<Subspace> {
        let mut rows = Vec::new();
        for part in parts {
            match *part {
                SpanPart::Point(id) => rows.extend_from_slice(self.point_coords(id)),
                SpanPart::Subspace(s) => {
                    self.check_ambient(s)?;
                    rows.extend_from_slice(&s.basis);
                }
                SpanPart::Vector(v) => {
                    if v.len() != self.n() {
                        return Err(Error::DimensionMismatch(v.len(), self.n()));
                    }
                    rows.extend_from_slice(v);
                }
            }
        }
        Ok(self.row_space(&rows))
    }

    /// `dim(A ∩ B) = dim A + dim B - rank [A; B]`.
    pub fn intersect_dim(&self, a: &Subspace, b: &Subspace) -> Result<usize> {
        self.check_ambient(a)?;
        self.check_ambient(b)?;
        Ok(a.dim + b.dim - self.stacked_rank(&[a, b]))
    }

    pub(crate) fn stacked_rank(&self, parts: &[&Subspace]) -> usize {
        let n = self.n();
        let mut m: Vec<Elem> = parts.iter().flat_map(|s| s.basis.iter().copied()).collect();
        let rows = m.len() / n;
        rref_in_place(self.field(), &mut m, rows, n)
    }

    /// The annihilator of `s` under the standard dot product.
    pub fn dual_subspace(&self, s: &Subspace) -> Subspace {
        let n = self.n();
        let field = self.field();
        let pivots: Vec<usize> = s.pivots().collect();
        let mut rows = Vec::with_capacity((n - s.dim) * n);
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0 as Elem; n];
            v[free] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(s.basis[r * n + free]);
            }
            rows.extend_from_slice(&v);
        }
        self.row_space(&rows)
    }

    pub fn intersection(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        let joined = self.span(&[
            SpanPart::Subspace(&self.dual_subspace(a)),
            SpanPart::Subspace(&self.dual_subspace(b)),
        ])?;
        Ok(self.dual_subspace(&joined))
    }

    /// Whether `small ⊆ big`.
    pub fn contains(&self, big: &Subspace, small: &Subspace) -> bool {
        small.dim <= big.dim && self.stacked_rank(&[big, small]) == big.dim
    }

    pub fn contains_point(&self, s: &Subspace, point: usize) -> bool {
        let mut m = s.basis.clone();
        m.extend_from_slice(self.point_coords(point));
        rref_in_place(self.field(), &mut m, s.dim + 1, self.n()) == s.dim
    }

    /// Ids of the points of `s`, appended to `out`.
    ///
    /// Every normalized coefficient vector `c` gives the normalized vector
    /// `sum c_i row_i`: in RREF its leading entry sits under the pivot of the
    /// first nonzero `c_i` and equals `c_i = 1`.
    pub fn point_ids_into(&self, s: &Subspace, out: &mut Vec<u32>) {
        let n = self.n();
        let q = self.q() as u64;
        let field = self.field();
        let mut coeffs = vec![0 as Elem; s.dim];
        let mut v = vec![0 as Elem; n];
        for lead in 0..s.dim {
            coeffs.iter_mut().for_each(|c| *c = 0);
            coeffs[lead] = 1;
            let tails = q.pow((s.dim - lead - 1) as u32);
            for idx in 0..tails {
                let mut x = idx;
                for c in coeffs[lead + 1..].iter_mut().rev() {
                    *c = (x % q) as Elem;
                    x /= q;
                }
                v.iter_mut().for_each(|x| *x = 0);
                for (r, &c) in coeffs.iter().enumerate().skip(lead) {
                    if c == 0 {
                        continue;
                    }
                    let row = &s.basis[r * n..(r + 1) * n];
                    for (x, &y) in v.iter_mut().zip(row) {
                        if y != 0 {
                            *x = field.add(*x, field.mul(c, y));
                        }
                    }
                }
                out.push(self.normalized_point_id(&v) as u32);
            }
        }
    }

    pub fn point_ids(&self, s: &Subspace) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.points_in_dim(s.dim) as usize);
        self.point_ids_into(s, &mut out);
        out
    }
}
