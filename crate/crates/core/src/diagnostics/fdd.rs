use serde::{Deserialize, Serialize};

use super::PathEnsemble;
use crate::{Error, Result};

/// Half-width of the jump-detection window, relative to the horizon.
pub const JUMP_WINDOW: f64 = 1e-6;

/// Grid times at which fewer than a `threshold` fraction of the ensemble
/// jumps within `±JUMP_WINDOW · T`. Time 0 is always kept; the horizon is
/// kept only if it passes.
pub fn continuity_times(ensemble: &PathEnsemble, grid: &[f64], threshold: f64) -> Result<Vec<f64>> {
    let horizon = ensemble.horizon();
    if let Some(t) = grid.iter().find(|t| !(**t >= 0.0 && **t <= horizon)) {
        return Err(Error::OutOfDomain {
            t: *t,
            domain: format!("[0, {horizon}]"),
        });
    }
    let tau = JUMP_WINDOW * horizon;
    let jump_times: Vec<Vec<f64>> = ensemble
        .paths()
        .iter()
        .map(|p| p.jumps().into_iter().map(|j| j.time).collect())
        .collect();
    let m = ensemble.len() as f64;
    Ok(grid
        .iter()
        .copied()
        .filter(|&t| {
            if t == 0.0 {
                return true;
            }
            let hits = jump_times
                .iter()
                .filter(|js| js.iter().any(|&s| (s - t).abs() <= tau))
                .count();
            (hits as f64 / m) < threshold
        })
        .collect())
}

/// Two-sample Kolmogorov–Smirnov statistic with its asymptotic p-value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
}

/// `sup_x |F_a(x) - F_b(x)|` over the two empirical distribution functions.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Empty("KS sample".into()));
    }
    if a.iter().chain(b).any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("KS samples must be finite".into()));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] == x {
            i += 1;
        }
        while j < b.len() && b[j] == x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let ne = na * nb / (na + nb);
    let sq = ne.sqrt();
    Ok(KsResult {
        statistic: d,
        p_value: kolmogorov_sf((sq + 0.12 + 0.11 / sq) * d),
    })
}

/// `P[K > x]` for the Kolmogorov distribution.
pub fn kolmogorov_sf(x: f64) -> f64 {
    if x < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * x * x).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FddRow {
    /// Position of the ensemble in the input list.
    pub ensemble: usize,
    pub t: f64,
    pub statistic: f64,
    pub p_value: f64,
}

/// Compares one-dimensional marginals of each ensemble with the reference
/// at every time in `times`.
pub fn fdd_compare(
    ensembles: &[PathEnsemble],
    reference: &PathEnsemble,
    times: &[f64],
) -> Result<Vec<FddRow>> {
    let mut rows = Vec::new();
    for &t in times {
        let r = reference.marginal(t)?;
        for (k, e) in ensembles.iter().enumerate() {
            let ks = ks_two_sample(&e.marginal(t)?, &r)?;
            rows.push(FddRow {
                ensemble: k,
                t,
                statistic: ks.statistic,
                p_value: ks.p_value,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::CadlagPath;
    use crate::processes::{ensemble, ProcessSpec};
    use proptest::prelude::*;

    #[test]
    fn common_jump_time_is_excluded() {
        let e = PathEnsemble::new(vec![CadlagPath::indicator(1.0, 0.5, 1.0).unwrap(); 4]).unwrap();
        let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
        assert_eq!(
            continuity_times(&e, &grid, 0.05).unwrap(),
            vec![0.0, 0.25, 0.75, 1.0]
        );
        let c = PathEnsemble::new(vec![CadlagPath::constant(1.0, 2.0).unwrap()]).unwrap();
        assert_eq!(continuity_times(&c, &grid, 0.05).unwrap(), grid.to_vec());
        assert!(continuity_times(&c, &[1.5], 0.05).is_err());
    }

    #[test]
    fn poisson_jump_times_are_atomless() {
        let e = ensemble(
            &ProcessSpec::Poisson {
                rate: 2.0,
                horizon: 1.0,
            },
            500,
            3,
        )
        .unwrap();
        let grid: Vec<f64> = (0..=100).map(|k| k as f64 / 100.0).collect();
        assert_eq!(continuity_times(&e, &grid, 0.05).unwrap(), grid);
    }

    #[test]
    fn ks_extremes() {
        let a: Vec<f64> = (0..100).map(|k| k as f64).collect();
        assert_eq!(ks_two_sample(&a, &a).unwrap().statistic, 0.0);
        assert!(ks_two_sample(&a, &a).unwrap().p_value > 0.99);
        let r = ks_two_sample(&[0.0; 10], &[1.0; 10]).unwrap();
        assert_eq!(r.statistic, 1.0);
        assert!(r.p_value < 1e-3);
        assert!(ks_two_sample(&[], &a).is_err());
    }

    #[test]
    fn shifted_constants_are_told_apart() {
        let e =
            |v: f64| PathEnsemble::new(vec![CadlagPath::constant(1.0, v).unwrap(); 20]).unwrap();
        let rows = fdd_compare(&[e(0.0), e(1.0)], &e(0.0), &[0.0, 0.5]).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.statistic).collect::<Vec<_>>(),
            vec![0.0, 1.0, 0.0, 1.0]
        );
    }

    #[test]
    fn kolmogorov_tail_reference_values() {
        // known quantiles: P[K > 1.3581] = 0.05, P[K > 1.6276] = 0.01
        assert!((kolmogorov_sf(1.3581) - 0.05).abs() < 1e-4);
        assert!((kolmogorov_sf(1.6276) - 0.01).abs() < 1e-4);
    }

    fn brute_ks(a: &[f64], b: &[f64]) -> f64 {
        let cdf = |s: &[f64], x: f64| s.iter().filter(|&&v| v <= x).count() as f64 / s.len() as f64;
        a.iter()
            .chain(b)
            .map(|&x| (cdf(a, x) - cdf(b, x)).abs())
            .fold(0.0, f64::max)
    }

    proptest! {
        #[test]
        fn ks_matches_brute_force(
            a in prop::collection::vec(-5i32..5, 1..30),
            b in prop::collection::vec(-5i32..5, 1..30),
        ) {
            let a: Vec<f64> = a.into_iter().map(f64::from).collect();
            let b: Vec<f64> = b.into_iter().map(f64::from).collect();
            let r = ks_two_sample(&a, &b).unwrap();
            prop_assert!((r.statistic - brute_ks(&a, &b)).abs() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&r.statistic) && (0.0..=1.0).contains(&r.p_value));
        }
    }
}
