//! Points and subspaces of `F_q^n`.
//!
//! A subspace is stored by its reduced row echelon basis, which is unique, so
//! structural equality is subspace equality. Points get ids in lexicographic
//! order of their normalized coordinates (first nonzero entry equal to 1) and
//! `k`-subspaces get ids in the order of [`Grassmannian`]: pivot patterns in
//! decreasing lexicographic order, then the free entries counted in base `q`.

mod context;
mod grassmannian;
mod index;
mod subspace;

pub use context::{GeometryContext, ProjectivePoint, MAX_POINTS};
pub use grassmannian::Grassmannian;
pub use index::SubspaceIndex;
pub use subspace::{SpanPart, Subspace};
