//! Monte Carlo site percolation on Sierpinski-carpet lattices.
//!
//! The crate builds finite stages of Sierpinski carpets as site lattices
//! (two independent constructions that must agree), occupies sites at a
//! probability `p` with reproducible randomness, labels clusters under
//! nearest-neighbor (4-cell) or next-nearest-neighbor (8-cell) connectivity,
//! and estimates the critical occupation probability from the peak growth
//! rate of the modified second moment of the cluster-size distribution.
//!
//! On top of the simulation core there are analysis helpers (fractal
//! dimensionality, connectivity index, power-law and quadratic fits against
//! published reference tables), report builders, and SVG scatter plots.
//! The `carpet-perc` binary exposes all of it as a CLI.

pub mod analysis;
mod error;
pub mod estimator;
pub mod lattice;
pub mod percolation;
pub mod plot;
pub mod reference;
pub mod report;

pub use error::{Error, Result};
