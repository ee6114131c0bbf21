use super::{DistanceReport, GroundMetric, Witness};
use crate::paths::CadlagPath;
use crate::Result;

/// `sup_t d_E(f(t), g(t))`, exact for piecewise-linear paths.
///
/// Between consecutive merged breakpoints both paths are affine, so the
/// supremum is reached at a breakpoint value or at a left limit.
pub fn uniform_distance(
    f: &CadlagPath,
    g: &CadlagPath,
    metric: &GroundMetric,
) -> Result<DistanceReport> {
    f.check_compatible(g)?;
    metric.check_dim(f.dim())?;
    Ok(DistanceReport::exact(
        sup_distance(f, g, metric),
        Witness::None,
    ))
}

pub(crate) fn sup_distance(f: &CadlagPath, g: &CadlagPath, metric: &GroundMetric) -> f64 {
    let mut times: Vec<f64> = f
        .breakpoints()
        .iter()
        .chain(g.breakpoints())
        .copied()
        .collect();
    times.push(f.horizon());
    times.sort_by(f64::total_cmp);
    times.dedup();
    let mut best: f64 = 0.0;
    for &t in &times {
        best = best.max(metric.distance(&f.value_unchecked(t), &g.value_unchecked(t)));
        if t > 0.0 {
            best =
                best.max(metric.distance(&f.left_limit_unchecked(t), &g.left_limit_unchecked(t)));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_indicators_are_at_distance_one() {
        let abs = GroundMetric::Abs;
        for (x, y) in [(0.1, 0.2), (0.3, 0.9), (0.5, 0.50001)] {
            let f = CadlagPath::indicator(1.0, x, 1.0).unwrap();
            let g = CadlagPath::indicator(1.0, y, 1.0).unwrap();
            assert_eq!(uniform_distance(&f, &g, &abs).unwrap().value, 1.0);
        }
    }

    #[test]
    fn self_distance_is_zero() {
        let f =
            CadlagPath::piecewise_linear(1.0, &[0.0, 0.4, 1.0], &[0.0, 2.0, -1.0], &[(0.4, 1.0)])
                .unwrap();
        assert_eq!(
            uniform_distance(&f, &f, &GroundMetric::Abs).unwrap().value,
            0.0
        );
    }

    #[test]
    fn indicator_against_null() {
        let f = CadlagPath::indicator(1.0, 0.5, 1.0).unwrap();
        let z = CadlagPath::constant(1.0, 0.0).unwrap();
        assert_eq!(
            uniform_distance(&f, &z, &GroundMetric::Abs).unwrap().value,
            1.0
        );
    }

    #[test]
    fn linear_crossing_uses_endpoints() {
        let f = CadlagPath::piecewise_linear(1.0, &[0.0, 1.0], &[0.0, 1.0], &[]).unwrap();
        let g = CadlagPath::piecewise_linear(1.0, &[0.0, 1.0], &[1.0, 0.0], &[]).unwrap();
        assert_eq!(
            uniform_distance(&f, &g, &GroundMetric::Abs).unwrap().value,
            1.0
        );
    }

    #[test]
    fn mismatches_are_errors() {
        let f = CadlagPath::constant(1.0, 0.0).unwrap();
        let g = CadlagPath::constant(2.0, 0.0).unwrap();
        assert!(uniform_distance(&f, &g, &GroundMetric::Abs).is_err());
        let v = CadlagPath::stack(&[f.clone(), f.clone()]).unwrap();
        assert!(uniform_distance(&f, &v, &GroundMetric::Abs).is_err());
        assert!(uniform_distance(&v, &v, &GroundMetric::Abs).is_err());
        assert_eq!(
            uniform_distance(&v, &v, &GroundMetric::MaxNorm)
                .unwrap()
                .value,
            0.0
        );
    }
}
