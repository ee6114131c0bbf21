use super::j1::j1_distance;
use super::{DistanceReport, GroundMetric, Penalty, Witness};
use crate::paths::CadlagPath;
use crate::{Error, Result};

/// Quadrature settings for [`halfline_distance`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalflineOptions {
    /// Spacing of the restriction horizons.
    pub step: f64,
    /// Shift applied to a horizon that lands on a jump time.
    pub shift: f64,
}

impl Default for HalflineOptions {
    fn default() -> Self {
        HalflineOptions {
            step: 1e-3,
            shift: 1e-7,
        }
    }
}

/// Distance on paths over the half line, approximated from paths given on
/// a long horizon `H`:
///
/// `sum_j exp(-u_j) min(1, d_J1(f|[0,u_j], g|[0,u_j])) du`, `u_j = j du <= H`.
///
/// A single restriction horizon is a poor yardstick when it sits on a jump;
/// the weighted average over horizons is not. Horizons that hit a jump of
/// either path are moved by `shift`, to the right unless that would leave
/// the horizon. The error bound covers the quadrature step and the
/// `exp(-H)` tail.
pub fn halfline_distance(
    f: &CadlagPath,
    g: &CadlagPath,
    penalty: Penalty,
    opts: &HalflineOptions,
) -> Result<DistanceReport> {
    f.check_compatible(g)?;
    if !(opts.step > 0.0 && opts.shift > 0.0) {
        return Err(Error::InvalidParameter(
            "quadrature step and shift must be positive".into(),
        ));
    }
    let horizon = f.horizon();
    let metric = GroundMetric::for_dim(f.dim());
    let mut jumps: Vec<f64> = f
        .jumps()
        .iter()
        .chain(g.jumps().iter())
        .map(|j| j.time)
        .collect();
    jumps.sort_by(f64::total_cmp);
    let hits = |u: f64| {
        let k = jumps.partition_point(|&t| t < u - opts.shift / 2.0);
        jumps
            .get(k)
            .is_some_and(|&t| (t - u).abs() < opts.shift / 2.0)
    };
    let count = (horizon / opts.step).floor() as usize;
    let mut total = 0.0;
    let mut error_bound = 0.0;
    for j in 1..=count {
        let mut u = j as f64 * opts.step;
        let shift = if u + 16.0 * opts.shift > horizon {
            -opts.shift
        } else {
            opts.shift
        };
        let mut tries = 0;
        while hits(u) {
            u += shift;
            tries += 1;
            if tries > 16 {
                return Err(Error::InvalidParameter(format!(
                    "cannot place a restriction horizon near {} away from jumps",
                    j as f64 * opts.step
                )));
            }
        }
        let d = j1_distance(&f.restrict(u)?, &g.restrict(u)?, penalty, &metric)?;
        let w = (-u).exp() * opts.step;
        total += w * d.value.min(1.0);
        error_bound += w * d.error_bound;
    }
    error_bound += opts.step + (-horizon).exp();
    Ok(DistanceReport::discretized(
        total,
        Witness::None,
        error_bound,
    ))
}
