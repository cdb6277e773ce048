//! The monomial group (coordinate permutations times diagonal scalings)
//! acting on subspace ids, and bitmask canonical forms under it.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Elem;
use crate::geometry::SubspaceIndex;
use crate::{Error, Result};

/// Largest group the exhaustive search will materialize.
pub const MAX_GROUP_ORDER: usize = 1 << 16;

/// In-place lexicographic successor; `false` after the last permutation.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Every monomial map as a permutation of subspace ids. The first scaling
/// entry is fixed to one since scalars act trivially.
#[derive(Clone, Debug)]
pub struct MonomialGroup {
    perms: Vec<Vec<u32>>,
}

impl MonomialGroup {
    pub fn new(index: &SubspaceIndex) -> Result<Self> {
        let ctx = index.ctx();
        let n = ctx.n();
        let field = ctx.field();
        let units: Vec<Elem> = field.elements().filter(|&a| a != 0).collect();
        let order = (1..=n).try_fold(1usize, |acc, i| acc.checked_mul(i)).and_then(|f| {
            (1..n).try_fold(f, |acc, _| acc.checked_mul(units.len()))
        });
        match order {
            Some(o) if o <= MAX_GROUP_ORDER => {}
            _ => return Err(Error::Unsupported(alloc::format!("monomial group of PG({}, {}) is too large", n - 1, ctx.q()))),
        }
        let mut perms = Vec::new();
        let mut sigma: Vec<usize> = (0..n).collect();
        let mut rows = Vec::new();
        loop {
            let mut digits = vec![0usize; n];
            loop {
                let scale: Vec<Elem> =
                    digits.iter().enumerate().map(|(i, &d)| if i == 0 { 1 } else { units[d] }).collect();
                let image: Vec<u32> = index
                    .subspaces()
                    .iter()
                    .map(|s| {
                        rows.clear();
                        for row in s.rows() {
                            let start = rows.len();
                            rows.resize(start + n, 0);
                            for (i, &v) in row.iter().enumerate() {
                                rows[start + sigma[i]] = field.mul(scale[i], v);
                            }
                        }
                        index.id_of(&ctx.row_space(&rows)).expect("monomial maps preserve dimension") as u32
                    })
                    .collect();
                perms.push(image);
                // odometer over the scalings of coordinates 1..n
                match (1..n).find(|&i| digits[i] + 1 < units.len()) {
                    Some(i) => {
                        digits[i] += 1;
                        digits[1..i].iter_mut().for_each(|d| *d = 0);
                    }
                    None => break,
                }
            }
            if !next_permutation(&mut sigma) {
                break;
            }
        }
        Ok(MonomialGroup { perms })
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn perms(&self) -> &[Vec<u32>] {
        &self.perms
    }
}

/// Byte-table action of a group on `u128` masks over at most 128 ids.
#[derive(Clone, Debug)]
pub struct MaskAction {
    chunks: usize,
    /// `tables[g * chunks + c][byte]` is the image of `byte << 8c` under `g`.
    tables: Vec<[u128; 256]>,
}

impl MaskAction {
    pub fn new(group: &MonomialGroup, len: usize) -> Result<Self> {
        if len > 128 {
            return Err(Error::Unsupported(alloc::format!("{len} subspaces do not fit a 128-bit mask")));
        }
        let chunks = len.div_ceil(8);
        let mut tables = Vec::with_capacity(group.order() * chunks);
        for perm in group.perms() {
            for c in 0..chunks {
                let mut table = [0u128; 256];
                for byte in 1..256usize {
                    let low = byte.trailing_zeros() as usize;
                    let id = 8 * c + low;
                    let bit = if id < len { 1u128 << perm[id] } else { 0 };
                    table[byte] = table[byte & (byte - 1)] | bit;
                }
                tables.push(table);
            }
        }
        Ok(MaskAction { chunks, tables })
    }

    pub fn order(&self) -> usize {
        self.tables.len() / self.chunks.max(1)
    }

    #[inline]
    pub fn apply(&self, g: usize, mask: u128) -> u128 {
        let tables = &self.tables[g * self.chunks..(g + 1) * self.chunks];
        tables.iter().enumerate().fold(0, |acc, (c, t)| acc | t[(mask >> (8 * c)) as usize & 0xff])
    }

    /// Whether `mask` is the least element of its orbit.
    #[inline]
    pub fn is_canonical(&self, mask: u128) -> bool {
        (0..self.order()).all(|g| self.apply(g, mask) >= mask)
    }

    /// The distinct images of `mask`, sorted.
    pub fn orbit(&self, mask: u128) -> Vec<u128> {
        let mut images: Vec<u128> = (0..self.order()).map(|g| self.apply(g, mask)).collect();
        images.sort_unstable();
        images.dedup();
        images
    }
}
