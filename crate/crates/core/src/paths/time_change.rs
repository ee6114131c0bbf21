use serde::{Deserialize, Serialize};

use crate::{Error, Result, TIME_TOL};

/// A strictly increasing piecewise-linear bijection of `[0, T]`.
///
/// Nodes `(s_k, u_k)` satisfy `(s_0, u_0) = (0, 0)`, `(s_r, u_r) = (T, T)` and
/// are strictly increasing in both coordinates; `lambda(s)` interpolates
/// linearly between them. Interior nodes that do not change the slope are
/// removed on construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TimeChangeRepr", into = "TimeChangeRepr")]
pub struct TimeChange {
    horizon: f64,
    nodes: Vec<(f64, f64)>,
}

#[derive(Serialize, Deserialize)]
struct TimeChangeRepr {
    horizon: f64,
    nodes: Vec<[f64; 2]>,
}

impl TryFrom<TimeChangeRepr> for TimeChange {
    type Error = Error;

    fn try_from(r: TimeChangeRepr) -> Result<Self> {
        TimeChange::new(
            r.horizon,
            r.nodes.into_iter().map(|[s, u]| (s, u)).collect(),
        )
    }
}

impl From<TimeChange> for TimeChangeRepr {
    fn from(l: TimeChange) -> Self {
        TimeChangeRepr {
            horizon: l.horizon,
            nodes: l.nodes.into_iter().map(|(s, u)| [s, u]).collect(),
        }
    }
}

impl TimeChange {
    /// Validates and normalizes a node list.
    pub fn new(horizon: f64, mut nodes: Vec<(f64, f64)>) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::InvalidTimeChange(format!(
                "horizon must be positive, got {horizon}"
            )));
        }
        if nodes.len() < 2 {
            return Err(Error::InvalidTimeChange(
                "need at least the two end nodes".into(),
            ));
        }
        let first = nodes[0];
        let last = *nodes.last().unwrap();
        if first.0.abs() > TIME_TOL || first.1.abs() > TIME_TOL {
            return Err(Error::InvalidTimeChange(format!(
                "must start at (0, 0), got {first:?}"
            )));
        }
        if (last.0 - horizon).abs() > TIME_TOL || (last.1 - horizon).abs() > TIME_TOL {
            return Err(Error::InvalidTimeChange(format!(
                "must end at (T, T), got {last:?}"
            )));
        }
        nodes[0] = (0.0, 0.0);
        let r = nodes.len() - 1;
        nodes[r] = (horizon, horizon);
        for w in nodes.windows(2) {
            if !(w[1].0 > w[0].0 && w[1].1 > w[0].1) {
                return Err(Error::InvalidTimeChange(format!(
                    "nodes must be strictly increasing in both coordinates: {:?} then {:?}",
                    w[0], w[1]
                )));
            }
        }
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(nodes.len());
        for (k, &node) in nodes.iter().enumerate() {
            if k > 0 && k < r {
                let prev = *out.last().unwrap();
                let next = nodes[k + 1];
                let a = (node.1 - prev.1) / (node.0 - prev.0);
                let b = (next.1 - node.1) / (next.0 - node.0);
                if (a - b).abs() <= 1e-12 * a.max(b) {
                    continue;
                }
            }
            out.push(node);
        }
        Ok(TimeChange {
            horizon,
            nodes: out,
        })
    }

    pub fn identity(horizon: f64) -> Self {
        TimeChange {
            horizon,
            nodes: vec![(0.0, 0.0), (horizon, horizon)],
        }
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn nodes(&self) -> &[(f64, f64)] {
        &self.nodes
    }

    pub fn is_identity(&self) -> bool {
        self.nodes.len() == 2
    }

    /// `lambda(s)`; exact at nodes.
    pub fn eval(&self, s: f64) -> f64 {
        let s = s.clamp(0.0, self.horizon);
        let k = self
            .nodes
            .partition_point(|n| n.0 <= s)
            .clamp(1, self.nodes.len() - 1);
        let (s0, u0) = self.nodes[k - 1];
        let (s1, u1) = self.nodes[k];
        if s == s0 {
            u0
        } else if s == s1 {
            u1
        } else {
            lerp(s0, u0, s1, u1, s)
        }
    }

    /// `lambda^{-1}(u)`; exact at nodes.
    pub fn eval_inverse(&self, u: f64) -> f64 {
        let u = u.clamp(0.0, self.horizon);
        let k = self
            .nodes
            .partition_point(|n| n.1 <= u)
            .clamp(1, self.nodes.len() - 1);
        let (s0, u0) = self.nodes[k - 1];
        let (s1, u1) = self.nodes[k];
        if u == u0 {
            s0
        } else if u == u1 {
            s1
        } else {
            lerp(u0, s0, u1, s1, u)
        }
    }

    pub fn inverse(&self) -> TimeChange {
        TimeChange {
            horizon: self.horizon,
            nodes: self.nodes.iter().map(|&(s, u)| (u, s)).collect(),
        }
    }

    /// The composition `self ∘ inner`, i.e. `s -> self(inner(s))`.
    pub fn compose(&self, inner: &TimeChange) -> Result<TimeChange> {
        if self.horizon != inner.horizon {
            return Err(Error::HorizonMismatch(self.horizon, inner.horizon));
        }
        let mut pts: Vec<(f64, f64)> = inner.nodes.iter().map(|&(s, u)| (s, u)).collect();
        for &(s, _) in &self.nodes[1..self.nodes.len() - 1] {
            pts.push((inner.eval_inverse(s), s));
        }
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        pts.dedup_by(|b, a| b.0 - a.0 < TIME_TOL || b.1 - a.1 < TIME_TOL);
        let nodes = pts.into_iter().map(|(s, v)| (s, self.eval(v))).collect();
        TimeChange::new(self.horizon, nodes)
    }

    /// `sup_s |lambda(s) - s|`, attained at a node.
    pub fn sup_deviation(&self) -> f64 {
        self.nodes
            .iter()
            .fold(0.0, |m, &(s, u)| m.max((u - s).abs()))
    }

    /// `sup_{s != t} |log((lambda(t) - lambda(s)) / (t - s))|`, which for a
    /// piecewise-linear bijection is the largest `|log slope|` of a piece.
    pub fn log_slope_norm(&self) -> f64 {
        self.nodes
            .windows(2)
            .fold(0.0, |m, w| m.max(log_slope(w[0], w[1]).abs()))
    }
}

pub(crate) fn log_slope(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((b.1 - a.1) / (b.0 - a.0)).ln()
}

/// Linear interpolation through `(x0, y0)` and `(x1, y1)` at `x`.
#[inline]
pub(crate) fn lerp(x0: f64, y0: f64, x1: f64, y1: f64, x: f64) -> f64 {
    y0 + (x - x0) * ((y1 - y0) / (x1 - x0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn incompleteness(n: i32) -> TimeChange {
        let a = 2f64.powi(-n);
        TimeChange::new(1.0, vec![(0.0, 0.0), (a, a / 2.0), (1.0, 1.0)]).unwrap()
    }

    #[test]
    fn identity_norms_vanish() {
        let id = TimeChange::identity(1.0);
        assert_eq!(id.sup_deviation(), 0.0);
        assert_eq!(id.log_slope_norm(), 0.0);
        assert_eq!(
            TimeChange::new(1.0, vec![(0.0, 0.0), (0.5, 0.5), (1.0, 1.0)]).unwrap(),
            id
        );
    }

    #[test]
    fn incompleteness_time_change_norms() {
        for n in 1..=12 {
            let l = incompleteness(n);
            assert_eq!(l.sup_deviation(), 2f64.powi(-(n + 1)));
            assert!((l.log_slope_norm() - 2f64.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn sup_deviation_at_interior_node() {
        for n in 3..20 {
            let l = TimeChange::new(
                1.0,
                vec![(0.0, 0.0), (0.5, 0.5 - 1.0 / n as f64), (1.0, 1.0)],
            )
            .unwrap();
            assert!((l.sup_deviation() - 1.0 / n as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn log_slope_norm_matches_chord_brute_force() {
        // slopes 1/3 on [0, 0.75] and 3 on [0.75, 1]
        let l = TimeChange::new(1.0, vec![(0.0, 0.0), (0.75, 0.25), (1.0, 1.0)]).unwrap();
        assert!((l.log_slope_norm() - 3f64.ln()).abs() < 1e-12);
        let grid: Vec<f64> = (0..=400).map(|k| k as f64 / 400.0).collect();
        let mut brute: f64 = 0.0;
        for (i, &s) in grid.iter().enumerate() {
            for &t in &grid[i + 1..] {
                brute = brute.max(((l.eval(t) - l.eval(s)) / (t - s)).ln().abs());
            }
        }
        assert!((brute - 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn rejects_non_monotone_nodes() {
        assert!(
            TimeChange::new(1.0, vec![(0.0, 0.0), (0.5, 0.6), (0.4, 0.7), (1.0, 1.0)]).is_err()
        );
        assert!(TimeChange::new(1.0, vec![(0.0, 0.0), (0.5, 0.0), (1.0, 1.0)]).is_err());
        assert!(TimeChange::new(1.0, vec![(0.0, 0.1), (1.0, 1.0)]).is_err());
    }

    #[test]
    fn inverse_and_composition() {
        let l = incompleteness(3);
        let inv = l.inverse();
        let id = l.compose(&inv).unwrap();
        assert!(id.sup_deviation() < 1e-15);
        for k in 0..=20 {
            let s = k as f64 / 20.0;
            assert!((inv.eval(l.eval(s)) - s).abs() < 1e-15);
            assert!((l.eval_inverse(s) - inv.eval(s)).abs() < 1e-15);
        }
        assert!((inv.log_slope_norm() - l.log_slope_norm()).abs() < 1e-15);
        let m = TimeChange::new(1.0, vec![(0.0, 0.0), (0.3, 0.6), (1.0, 1.0)]).unwrap();
        let c = l.compose(&m).unwrap();
        for k in 0..=50 {
            let s = k as f64 / 50.0;
            assert!((c.eval(s) - l.eval(m.eval(s))).abs() < 1e-14);
        }
    }

    #[test]
    fn json_round_trip() {
        let l = incompleteness(4);
        let s = serde_json::to_string(&l).unwrap();
        let back: TimeChange = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
    }
}
