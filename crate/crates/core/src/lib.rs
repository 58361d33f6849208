//! Planted clique generation and recovery by iterative degree thresholding.
//!
//! * [`graph`]: bit-packed graphs, vertex sets, `G(n, p, k, q)` sampling and
//!   file formats.
//! * [`analytics`]: survival rates, critical constants, parameter search and
//!   iteration schedules.
//! * [`solver`]: the three-phase recovery algorithm, its refined and dense
//!   variants, seed expansion, the top-degree baseline and amplification.
//! * [`harness`]: seeded Monte Carlo experiments and calibration reports.

pub mod analytics;
pub mod error;
pub mod graph;
pub mod harness;
pub mod rng;
pub mod solver;

pub use error::{Error, Result};
