use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{DistanceKind, VERDICT_LABEL};
use crate::paths::CadlagPath;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub distance: f64,
    pub error_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub metric: String,
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `ln d` against `ln n` over the positive
    /// distances; `None` with fewer than two of them.
    pub fitted_rate: Option<f64>,
    /// Distances never increase beyond their error bounds.
    pub monotone: bool,
    pub verdict: String,
}

/// Distances `d(f_n, limit)` along a family, with an empirical rate.
pub fn convergence_report(
    family: &[(usize, CadlagPath)],
    limit: &CadlagPath,
    metric: DistanceKind,
) -> Result<ConvergenceReport> {
    if family.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "need at least 3 indices, got {}",
            family.len()
        )));
    }
    let rows: Vec<ConvergenceRow> = family
        .par_iter()
        .map(|(n, f)| {
            let r = metric.distance(f, limit)?;
            Ok(ConvergenceRow {
                n: *n,
                distance: r.value,
                error_bound: r.error_bound,
            })
        })
        .collect::<Result<_>>()?;
    let monotone = rows
        .windows(2)
        .all(|w| w[1].distance <= w[0].distance + w[0].error_bound + w[1].error_bound + 1e-12);
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.distance > 0.0 && r.n > 0)
        .map(|r| ((r.n as f64).ln(), r.distance.ln()))
        .collect();
    let fitted_rate = log_log_slope(&pts);
    let verdict = match (monotone, fitted_rate) {
        (true, Some(s)) if s < 0.0 => "distances decrease",
        (true, None) if rows.iter().all(|r| r.distance == 0.0) => "distances vanish",
        _ => "no decrease detected",
    };
    Ok(ConvergenceReport {
        metric: metric.name().into(),
        rows,
        fitted_rate,
        monotone,
        verdict: format!("{VERDICT_LABEL}: {verdict}"),
    })
}

fn log_log_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx)
}
