use rayon::prelude::*;

use super::j1::j1_distance;
use super::{DistanceReport, GroundMetric, Method, Penalty, Witness, REPORT_SCHEMA_VERSION};
use crate::paths::{CadlagPath, TimeChange};
use crate::{Error, Result};

/// J1 distance in the weak product topology: every coordinate gets its own
/// time change, and the distance is the largest coordinate distance.
pub fn weak_product_j1(
    f: &[CadlagPath],
    g: &[CadlagPath],
    penalty: Penalty,
) -> Result<DistanceReport> {
    if f.len() != g.len() {
        return Err(Error::DimensionMismatch(f.len(), g.len()));
    }
    if f.is_empty() {
        return Err(Error::Empty("weak product of zero coordinates".into()));
    }
    let reports: Vec<DistanceReport> = f
        .par_iter()
        .zip(g.par_iter())
        .map(|(a, b)| j1_distance(a, b, penalty, &GroundMetric::for_dim(a.dim())))
        .collect::<Result<_>>()?;
    let value = reports.iter().fold(0.0f64, |m, r| m.max(r.value));
    let error_bound = reports.iter().fold(0.0f64, |m, r| m.max(r.error_bound));
    let method = if reports.iter().all(|r| r.method == Method::Exact) {
        Method::Exact
    } else {
        Method::Discretized
    };
    let lambdas: Vec<TimeChange> = reports
        .into_iter()
        .map(|r| match r.witness {
            Witness::TimeChange { lambda } => lambda,
            _ => unreachable!("J1 reports carry a time change"),
        })
        .collect();
    Ok(DistanceReport {
        schema_version: REPORT_SCHEMA_VERSION,
        value,
        witness: Witness::TimeChanges { lambdas },
        method,
        error_bound,
    })
}

/// J1 distance of the stacked vector paths: one time change for all
/// coordinates, with `metric` on the value space.
pub fn strong_product_j1(
    f: &[CadlagPath],
    g: &[CadlagPath],
    penalty: Penalty,
    metric: &GroundMetric,
) -> Result<DistanceReport> {
    if f.len() != g.len() {
        return Err(Error::DimensionMismatch(f.len(), g.len()));
    }
    j1_distance(
        &CadlagPath::stack(f)?,
        &CadlagPath::stack(g)?,
        penalty,
        metric,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ind(a: f64) -> CadlagPath {
        CadlagPath::indicator(1.0, a, 1.0).unwrap()
    }

    #[test]
    fn single_coordinate_is_plain_j1() {
        let (f, g) = (ind(0.4), ind(0.5));
        let weak = weak_product_j1(&[f.clone()], &[g.clone()], Penalty::Absolute).unwrap();
        let plain = j1_distance(&f, &g, Penalty::Absolute, &GroundMetric::Abs).unwrap();
        assert_eq!(weak.value, plain.value);
    }

    #[test]
    fn staggered_jumps_separate_weak_and_strong() {
        for n in [3.0, 10.0, 50.0] {
            let f = [ind(0.5 - 1.0 / n), ind(0.5)];
            let g = [ind(0.5), ind(0.5)];
            let weak = weak_product_j1(&f, &g, Penalty::Absolute).unwrap();
            let strong =
                strong_product_j1(&f, &g, Penalty::Absolute, &GroundMetric::MaxNorm).unwrap();
            assert!((weak.value - 1.0 / n).abs() < 1e-12);
            assert!(strong.value > weak.value + 0.1, "n={n}: {}", strong.value);
        }
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(weak_product_j1(&[ind(0.5)], &[], Penalty::Absolute).is_err());
    }
}
