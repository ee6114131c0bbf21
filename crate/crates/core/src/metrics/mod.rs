//! Distances between cadlag paths.
//!
//! Every distance returns a [`DistanceReport`] carrying the value, the
//! object that attains it (a time change for J1, a vertex coupling for M1),
//! whether the computation is exact or discretized, and an error bound.

mod ground;
mod halfline;
mod j1;
mod j1_oracle;
pub mod m1;
mod product;
mod threshold;
mod uniform;

use serde::{Deserialize, Serialize};

pub use ground::GroundMetric;
pub use halfline::{halfline_distance, HalflineOptions};
pub use j1::{j1_distance, j1_distance_with, j1_objective, J1Options};
pub use j1_oracle::{j1_oracle, J1_ORACLE_MAX_JUMPS};
pub use m1::{m1_distance, m1_oracle, Coupling, M1_ORACLE_POINTS};
pub use product::{strong_product_j1, weak_product_j1};
pub use uniform::uniform_distance;

use crate::paths::TimeChange;

/// Version of the JSON layout of [`DistanceReport`].
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Penalty on the time change in the J1 objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Penalty {
    /// `sup |lambda - id|`: the classical, incomplete J1 metric.
    Absolute,
    /// `sup |log slope of lambda|`: the complete J1 metric.
    LogSlope,
}

impl Penalty {
    pub fn of(self, lambda: &TimeChange) -> f64 {
        match self {
            Penalty::Absolute => lambda.sup_deviation(),
            Penalty::LogSlope => lambda.log_slope_norm(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Discretized,
}

/// The object at which a distance is attained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    None,
    TimeChange {
        lambda: TimeChange,
    },
    /// One time change per coordinate (weak product topology).
    TimeChanges {
        lambdas: Vec<TimeChange>,
    },
    Coupling {
        coupling: Coupling,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub schema_version: u32,
    pub value: f64,
    pub witness: Witness,
    pub method: Method,
    pub error_bound: f64,
}

impl DistanceReport {
    pub(crate) fn exact(value: f64, witness: Witness) -> Self {
        DistanceReport {
            schema_version: REPORT_SCHEMA_VERSION,
            value,
            witness,
            method: Method::Exact,
            error_bound: 0.0,
        }
    }

    pub(crate) fn discretized(value: f64, witness: Witness, error_bound: f64) -> Self {
        DistanceReport {
            schema_version: REPORT_SCHEMA_VERSION,
            value,
            witness,
            method: Method::Discretized,
            error_bound,
        }
    }

    pub fn time_change(&self) -> Option<&TimeChange> {
        match &self.witness {
            Witness::TimeChange { lambda } => Some(lambda),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
