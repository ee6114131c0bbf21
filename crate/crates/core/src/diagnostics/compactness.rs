use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_ladder, PathEnsemble, Topology};
use crate::moduli::{endpoint_oscillations, omega, omega_double_prime, omega_prime};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompactnessRow {
    pub delta: f64,
    /// Supremum over the ensemble of the topology's modulus.
    pub sup_modulus: f64,
    /// M1 only: supremum of `|f(delta) - f(0)|`.
    pub sup_start_oscillation: Option<f64>,
    /// M1 only: supremum of `|f(T-) - f(T - delta)|`.
    pub sup_end_oscillation: Option<f64>,
}

/// Sup norm and modulus ladder of a finite ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompactnessReport {
    pub topology: Topology,
    pub modulus: String,
    pub sup_norm: f64,
    pub rows: Vec<CompactnessRow>,
}

/// Evaluates the quantities of the compactness criterion of `topology`:
/// `omega` for the uniform topology, `omega_prime` for J1, and
/// `omega_double_prime` with both endpoint oscillations for M1.
pub fn compactness_report(
    ensemble: &PathEnsemble,
    deltas: &[f64],
    topology: Topology,
) -> Result<CompactnessReport> {
    check_ladder(deltas)?;
    let sup_norm = ensemble
        .paths()
        .iter()
        .map(|p| p.sup_norm())
        .fold(0.0, f64::max);
    let rows = deltas
        .iter()
        .map(|&delta| {
            let per_path: Vec<(f64, f64, f64)> = ensemble
                .paths()
                .par_iter()
                .map(|f| -> Result<_> {
                    Ok(match topology {
                        Topology::Uniform => (omega(f, delta)?, 0.0, 0.0),
                        Topology::J1 => (omega_prime(f, delta)?, 0.0, 0.0),
                        Topology::M1 => {
                            let (a, b) = endpoint_oscillations(f, delta)?;
                            (omega_double_prime(f, delta)?, a, b)
                        }
                    })
                })
                .collect::<Result<_>>()?;
            let sup = |k: fn(&(f64, f64, f64)) -> f64| per_path.iter().map(k).fold(0.0, f64::max);
            let m1 = topology == Topology::M1;
            Ok(CompactnessRow {
                delta,
                sup_modulus: sup(|r| r.0),
                sup_start_oscillation: m1.then(|| sup(|r| r.1)),
                sup_end_oscillation: m1.then(|| sup(|r| r.2)),
            })
        })
        .collect::<Result<_>>()?;
    let modulus = match topology {
        Topology::Uniform => "omega",
        Topology::J1 => "omega_prime",
        Topology::M1 => "omega_double_prime",
    };
    Ok(CompactnessReport {
        topology,
        modulus: modulus.into(),
        sup_norm,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::CadlagPath;
    use crate::processes::{example_family, FamilyName};

    fn family(name: FamilyName, ns: std::ops::RangeInclusive<usize>) -> PathEnsemble {
        PathEnsemble::new(ns.map(|n| example_family(name, n).unwrap().path).collect()).unwrap()
    }

    #[test]
    fn shifted_indicators_have_zero_cadlag_modulus() {
        let k = family(FamilyName::J1Shift, 3..=50);
        let r = compactness_report(&k, &[0.15, 0.1, 0.05, 0.01], Topology::J1).unwrap();
        assert_eq!(r.sup_norm, 1.0);
        assert!(r.rows.iter().all(|row| row.sup_modulus == 0.0));
        assert!(r.rows[0].sup_start_oscillation.is_none());
    }

    #[test]
    fn spikes_pin_the_m1_modulus() {
        let k = family(FamilyName::Spike, 3..=200);
        let r = compactness_report(&k, &[0.2, 0.1, 0.05, 0.01], Topology::M1).unwrap();
        assert!(r.rows.iter().all(|row| row.sup_modulus == 1.0));
    }

    #[test]
    fn continuous_singleton_ladder_decreases_to_zero() {
        let f =
            CadlagPath::piecewise_linear(1.0, &[0.0, 0.3, 1.0], &[0.0, 1.0, -1.0], &[]).unwrap();
        let k = PathEnsemble::new(vec![f]).unwrap();
        let deltas = [0.1, 0.01, 0.001, 0.0001];
        let r = compactness_report(&k, &deltas, Topology::Uniform).unwrap();
        for w in r.rows.windows(2) {
            assert!(w[1].sup_modulus <= w[0].sup_modulus);
        }
        assert!(r.rows[3].sup_modulus < 1e-3);
    }
}
