//! Exact combinatorics of semimatroids and their relatives.
//!
//! A semimatroid is a downward closed family of "central" subsets of a finite
//! ground set together with a rank function satisfying matroid-like axioms.
//! This crate computes its polynomial invariants (characteristic, Tutte,
//! Whitney numbers, broken-circuit counts) by several independent routes, and
//! connects them to assigning matroids, affine hyperplane arrangements over Q
//! and prime fields, and gain graphs.  All arithmetic is exact: big integers,
//! big rationals and prime fields only.

pub mod arrangement;
pub mod assigning;
pub mod bits;
pub mod convolution;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod json;
pub mod linalg;
pub mod matroid;
pub mod poly;
pub mod poset;
pub mod semimatroid;

pub use error::Error;

/// Hard cap on ground set size; bitmask representations assume this.
pub const MAX_GROUND: usize = 20;
/// Cap on ground set size for operations that enumerate all of 2^E.
pub const MAX_ENUM: usize = 16;
/// Budget for brute-force point or coloring enumeration over finite fields.
pub const MAX_POINTS: u64 = 10_000_000;
