//! One-dimensional finite-volume advection with WENO-Z and THINC candidate
//! reconstructions combined by boundary variation diminishing (BVD) selection.
//!
//! The pipeline per right-hand-side evaluation is: cell averages
//! ([`field`]) → candidate boundary values ([`reconstruct`]) → per-cell
//! selection and interface states ([`bvd`]) → Riemann fluxes and flux
//! differences ([`solver`]). [`experiments`] holds the benchmark profiles and
//! the measurement helpers.

pub mod bvd;
pub mod error;
pub mod experiments;
pub mod field;
pub mod reconstruct;
pub mod scheme;
pub mod solver;

pub use bvd::{CandidateSet, SelectionResult, Tag};
pub use error::{Error, Result};
pub use experiments::{Benchmark, Figure, Profile, RunResult};
pub use field::{CellField, Grid1D};
pub use reconstruct::{BoundaryPair, ThincParams};
pub use scheme::{Scheme, SchemeConfig};
pub use solver::{advect, FluxSpec, TimeConfig};
