//! Exact computation with even integral lattices.
//!
//! The crate provides ADE root lattices, the K3 lattice, discriminant
//! forms, root enumeration and Weyl involutions, overlattice calculus
//! inside the K3 lattice, and a symbolic simulator of the canonical
//! resolution of ADE plane-curve double covers. All arithmetic is exact
//! (unbounded integers and rationals); no floating point is used.

pub mod mat;
pub mod lattice;
pub mod roots;
pub mod disc;
pub mod isometry;
pub mod weyl;
pub mod ambient;
pub mod casebook;
pub mod poly;
pub mod resolution;

pub use lattice::{ade, hyperbolic_u, k3, rank_one, AdeType, Lattice, LatticeError};
