//! Exact computation of the stable-pairs vertex of toric 3-folds.
//!
//! The crate is `no_std` and only needs `alloc`. Every number is exact:
//! big rationals, polynomials and rational functions in the equivariant
//! parameters `s1, s2, s3`, and truncated `q`-series over either.
//!
//! Layout follows the computation:
//!
//! * [`partitions`]: legs, cylinders, weight classes.
//! * [`boxconfig`]: labelled box configurations (the torus-fixed loci) and
//!   an independent brute-force submodule oracle.
//! * [`characters`]: torus characters, vertex and edge redistribution.
//! * [`localization`]: equivariant weights, vertex series, descendents.
//! * [`dt`]: 3-d partitions and the ideal-sheaf vertex.
//! * [`toric`]: toric graphs and global assembly.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod boxconfig;
pub mod characters;
pub mod dt;
mod error;
pub mod exec;
pub mod localization;
pub mod partitions;
pub mod toric;

pub use error::Error;

/// Result alias used across the crate.
pub type Result<T> = core::result::Result<T, Error>;
