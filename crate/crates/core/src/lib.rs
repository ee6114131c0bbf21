//! Computable Skorokhod topologies on spaces of cadlag paths.
//!
//! The crate represents finite-horizon cadlag paths exactly (piecewise
//! constant or piecewise linear pieces between ordered breakpoints) and
//! provides
//!
//! * [`metrics`]: uniform, J1 (absolute and log-slope penalty), M1,
//!   half-line and weak-product distances, each with a witness and an
//!   error bound, together with brute-force oracles;
//! * [`moduli`]: the moduli of continuity `omega`, `omega_prime`,
//!   `omega_double_prime` and the local oscillation `w_osc`;
//! * [`diagnostics`]: compactness, tightness, convergence and
//!   finite-dimensional-distribution reports over path ensembles;
//! * [`processes`]: seeded random-walk, Poisson and deterministic example
//!   families.

pub mod diagnostics;
mod error;
pub mod metrics;
pub mod moduli;
pub mod paths;
pub mod processes;

pub use error::{Error, Result};
pub use metrics::{DistanceReport, GroundMetric, Method, Penalty, Witness};
pub use paths::{CadlagPath, CompletedGraph, Jump, TimeChange};

/// Tolerance used to deduplicate breakpoints that differ by rounding only.
pub const TIME_TOL: f64 = 1e-9;
