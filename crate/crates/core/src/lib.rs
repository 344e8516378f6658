//! Sparse recovery for signals that are sparse in arbitrary, possibly
//! redundant, dictionaries.
//!
//! The centerpiece is [`recovery::sscosamp`], a CoSaMP variant that works in
//! signal space: every support decision is delegated to a pluggable
//! projection backend ([`projections::ProjectionBackend`]) that approximates
//! the best `k`-atom approximation of a signal-space vector. Baseline
//! coefficient-space algorithms (CoSaMP, OMP and basis pursuit on `A·D`),
//! restricted-isometry diagnostics and recovery metrics live alongside it.
//!
//! Conventions used throughout the crate:
//!
//! * all arithmetic is complex (`Complex64`); real data has zero imaginary parts,
//! * matrices are dense and stored column-major,
//! * support indices are zero-based.

pub mod analysis;
pub mod error;
pub mod linalg;
pub mod model;
pub mod projections;
pub mod recovery;

pub use error::{Error, Result};
pub use linalg::{Matrix, C64};
