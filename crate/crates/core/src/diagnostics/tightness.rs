use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_ladder, standard_error, PathEnsemble, Topology, VERDICT_LABEL};
use crate::moduli::{endpoint_oscillations, omega, omega_double_prime, omega_prime};
use crate::{Error, Result};

/// `P̂[‖X_n‖ ≥ c]` for one ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailRow {
    pub n: usize,
    pub c: f64,
    pub frequency: f64,
    pub std_error: f64,
}

/// `P̂[quantity_delta(X_n) ≥ eps]` for one ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExceedanceCell {
    pub n: usize,
    pub quantity: String,
    pub delta: f64,
    pub eps: f64,
    pub frequency: f64,
    pub std_error: f64,
}

/// Whether the exceedance frequencies of one `(n, quantity, eps)` line fall
/// as `delta` shrinks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trend {
    pub n: usize,
    pub quantity: String,
    pub eps: f64,
    pub decreasing: bool,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightnessReport {
    pub topology: Topology,
    pub replicas: Vec<usize>,
    pub tails: Vec<TailRow>,
    pub cells: Vec<ExceedanceCell>,
    pub trends: Vec<Trend>,
}

impl TightnessReport {
    /// The cells of one line, ordered by decreasing `delta`.
    pub fn line(&self, n: usize, quantity: &str, eps: f64) -> Vec<&ExceedanceCell> {
        let mut v: Vec<&ExceedanceCell> = self
            .cells
            .iter()
            .filter(|c| c.n == n && c.quantity == quantity && c.eps == eps)
            .collect();
        v.sort_by(|a, b| b.delta.total_cmp(&a.delta));
        v
    }

    /// CSV with header `n,quantity,delta,eps,frequency,std_error`; sup-norm
    /// tail rows use the quantity `sup_norm` and put `c` in the `eps` column.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,quantity,delta,eps,frequency,std_error\n");
        for t in &self.tails {
            out.push_str(&format!(
                "{},sup_norm,,{},{},{}\n",
                t.n, t.c, t.frequency, t.std_error
            ));
        }
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                c.n, c.quantity, c.delta, c.eps, c.frequency, c.std_error
            ));
        }
        out
    }
}

/// Empirical version of the tightness criteria.
///
/// For each ensemble `X_n` of `sequence` (tagged by its index `n`) this
/// tabulates the sup-norm tail over `thresholds` and, over the `(delta,
/// eps)` grid, the frequency of `omega_prime_delta ≥ eps` (J1) or of
/// `omega_double_prime_delta ≥ eps` and of both endpoint oscillations
/// `≥ eps` (M1). Every frequency comes with its binomial standard error.
pub fn tightness_report(
    sequence: &[(usize, PathEnsemble)],
    deltas: &[f64],
    eps: &[f64],
    thresholds: &[f64],
    topology: Topology,
) -> Result<TightnessReport> {
    if sequence.is_empty() {
        return Err(Error::Empty("no ensembles".into()));
    }
    if eps.is_empty() {
        return Err(Error::Empty("eps list".into()));
    }
    check_ladder(deltas)?;
    let mut ladder = deltas.to_vec();
    ladder.sort_by(|a, b| b.total_cmp(a));
    ladder.dedup();

    let mut tails = Vec::new();
    let mut cells = Vec::new();
    let mut trends = Vec::new();
    for (n, ensemble) in sequence {
        let m = ensemble.len();
        let freq = |count: usize| count as f64 / m as f64;
        let norms: Vec<f64> = ensemble.paths().iter().map(|p| p.sup_norm()).collect();
        for &c in thresholds {
            let p = freq(norms.iter().filter(|&&x| x >= c).count());
            tails.push(TailRow {
                n: *n,
                c,
                frequency: p,
                std_error: standard_error(p, m),
            });
        }
        // quantity name -> per delta -> per path
        let mut table: Vec<(&'static str, Vec<Vec<f64>>)> = Vec::new();
        for &delta in &ladder {
            let per_path: Vec<Vec<f64>> = ensemble
                .paths()
                .par_iter()
                .map(|f| -> Result<Vec<f64>> {
                    Ok(match topology {
                        Topology::Uniform => vec![omega(f, delta)?],
                        Topology::J1 => vec![omega_prime(f, delta)?],
                        Topology::M1 => {
                            let (a, b) = endpoint_oscillations(f, delta)?;
                            vec![omega_double_prime(f, delta)?, a, b]
                        }
                    })
                })
                .collect::<Result<_>>()?;
            let names: &[&'static str] = match topology {
                Topology::Uniform => &["omega"],
                Topology::J1 => &["omega_prime"],
                Topology::M1 => &["omega_double_prime", "start_oscillation", "end_oscillation"],
            };
            for (k, name) in names.iter().enumerate() {
                let column: Vec<f64> = per_path.iter().map(|v| v[k]).collect();
                match table.iter_mut().find(|(q, _)| q == name) {
                    Some((_, cols)) => cols.push(column),
                    None => table.push((name, vec![column])),
                }
            }
        }
        for (quantity, columns) in &table {
            for &e in eps {
                let line: Vec<f64> = columns
                    .iter()
                    .map(|col| freq(col.iter().filter(|&&x| x >= e).count()))
                    .collect();
                for (&delta, &p) in ladder.iter().zip(&line) {
                    cells.push(ExceedanceCell {
                        n: *n,
                        quantity: quantity.to_string(),
                        delta,
                        eps: e,
                        frequency: p,
                        std_error: standard_error(p, m),
                    });
                }
                let last = *line.last().expect("ladder is nonempty");
                let decreasing =
                    line.windows(2).all(|w| w[1] <= w[0]) && (last < line[0] || last == 0.0);
                let verdict = if decreasing {
                    "decreasing toward 0"
                } else {
                    "not decreasing"
                };
                trends.push(Trend {
                    n: *n,
                    quantity: quantity.to_string(),
                    eps: e,
                    decreasing,
                    verdict: format!("{VERDICT_LABEL}: {verdict}"),
                });
            }
        }
    }
    Ok(TightnessReport {
        topology,
        replicas: sequence.iter().map(|(_, e)| e.len()).collect(),
        tails,
        cells,
        trends,
    })
}
