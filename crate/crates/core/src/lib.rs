//! Classification engine for real Bott manifolds.
//!
//! A Bott matrix is the adjacency matrix of an acyclic digraph. Two Bott
//! matrices are Bott equivalent when one is reachable from the other by
//! vertex relabeling, local complementation and slides. This crate provides
//! the matrix type, the three operations, canonical forms under isomorphism
//! and under Bott equivalence, the numerical invariants that are constant on
//! Bott classes, decomposition into indecomposable factors, and the mod 2
//! cohomology ring with its eigen-space structure.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod canon;
pub mod cohomology;
pub mod decompose;
mod error;
pub mod gf2;
pub mod invariants;
mod matrix;
mod ops;
mod perm;

pub use canon::{bott_canon, bott_equivalent, bott_orbit, iso_canon, BottClassRep, IsoCanonForm, Orbit, OrbitBudget};
pub use error::BottError;
pub use matrix::{BottMatrix, MAX_CANON_N, MAX_N};
pub use ops::is_bott;
pub use perm::Permutation;
