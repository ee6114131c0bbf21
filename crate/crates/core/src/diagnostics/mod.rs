//! Numerical reports over ensembles and sequences of paths.
//!
//! Compactness and tightness are statements about infinite families and
//! limits; everything here is a finite-sample indication built from modulus
//! ladders, exceedance frequencies and distance tables.

mod compactness;
mod convergence;
mod fdd;
mod tightness;

use serde::{Deserialize, Serialize};

pub use compactness::{compactness_report, CompactnessReport, CompactnessRow};
pub use convergence::{convergence_report, ConvergenceReport, ConvergenceRow};
pub use fdd::{continuity_times, fdd_compare, kolmogorov_sf, ks_two_sample, FddRow, KsResult};
pub use tightness::{tightness_report, ExceedanceCell, TailRow, TightnessReport, Trend};

use crate::metrics::{
    j1_distance, m1_distance, uniform_distance, DistanceReport, GroundMetric, Penalty,
};
use crate::paths::CadlagPath;
use crate::{Error, Result};

/// Label attached to every verdict: the reports never prove a limit statement.
pub const VERDICT_LABEL: &str = "finite-sample indication";

/// A nonempty collection of paths sharing horizon and dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PathEnsemble {
    paths: Vec<CadlagPath>,
    label: Option<String>,
}

impl PathEnsemble {
    pub fn new(paths: Vec<CadlagPath>) -> Result<Self> {
        let first = paths
            .first()
            .ok_or_else(|| Error::Empty("ensemble has no paths".into()))?;
        for p in &paths[1..] {
            first.check_compatible(p)?;
        }
        Ok(PathEnsemble { paths, label: None })
    }

    pub fn labeled(paths: Vec<CadlagPath>, label: impl Into<String>) -> Result<Self> {
        let mut e = PathEnsemble::new(paths)?;
        e.label = Some(label.into());
        Ok(e)
    }

    pub fn paths(&self) -> &[CadlagPath] {
        &self.paths
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn horizon(&self) -> f64 {
        self.paths[0].horizon()
    }

    pub fn dim(&self) -> usize {
        self.paths[0].dim()
    }

    /// The scalar values `f(t)` of every member, in ensemble order.
    pub fn marginal(&self, t: f64) -> Result<Vec<f64>> {
        if self.dim() != 1 {
            return Err(Error::NotScalar(self.dim()));
        }
        self.paths.iter().map(|p| p.eval(t).map(|v| v[0])).collect()
    }
}

/// Topology whose compactness criterion a report follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    Uniform,
    J1,
    M1,
}

impl std::str::FromStr for Topology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Topology::Uniform),
            "j1" => Ok(Topology::J1),
            "m1" => Ok(Topology::M1),
            _ => Err(Error::InvalidParameter(format!("unknown topology {s:?}"))),
        }
    }
}

/// A distance selector for tables and the command line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "metric", rename_all = "snake_case")]
pub enum DistanceKind {
    Uniform,
    J1 { penalty: Penalty },
    M1 { resolution: usize },
}

impl DistanceKind {
    pub const M1_DEFAULT_RESOLUTION: usize = 2000;

    pub fn distance(&self, f: &CadlagPath, g: &CadlagPath) -> Result<DistanceReport> {
        let metric = GroundMetric::for_dim(f.dim());
        match *self {
            DistanceKind::Uniform => uniform_distance(f, g, &metric),
            DistanceKind::J1 { penalty } => j1_distance(f, g, penalty, &metric),
            DistanceKind::M1 { resolution } => m1_distance(f, g, resolution),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DistanceKind::Uniform => "uniform",
            DistanceKind::J1 {
                penalty: Penalty::Absolute,
            } => "j1",
            DistanceKind::J1 {
                penalty: Penalty::LogSlope,
            } => "j1_log",
            DistanceKind::M1 { .. } => "m1",
        }
    }
}

impl std::str::FromStr for DistanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(DistanceKind::Uniform),
            "j1" => Ok(DistanceKind::J1 {
                penalty: Penalty::Absolute,
            }),
            "j1_log" | "j1log" => Ok(DistanceKind::J1 {
                penalty: Penalty::LogSlope,
            }),
            "m1" => Ok(DistanceKind::M1 {
                resolution: DistanceKind::M1_DEFAULT_RESOLUTION,
            }),
            _ => Err(Error::InvalidParameter(format!("unknown metric {s:?}"))),
        }
    }
}

/// `sqrt(p (1 - p) / m)`.
pub fn standard_error(p: f64, m: usize) -> f64 {
    (p * (1.0 - p) / m as f64).sqrt()
}

fn check_ladder(deltas: &[f64]) -> Result<()> {
    if deltas.is_empty() {
        return Err(Error::Empty("delta ladder".into()));
    }
    if let Some(d) = deltas.iter().find(|d| !(**d > 0.0 && d.is_finite())) {
        return Err(Error::InvalidParameter(format!(
            "delta must be positive, got {d}"
        )));
    }
    Ok(())
}
