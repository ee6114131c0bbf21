//! Moduli of continuity for cadlag paths.
//!
//! * [`omega`]: the uniform modulus `sup_{|t-s|<delta} |f(t)-f(s)|`;
//! * [`omega_prime`]: the cadlag modulus, the smallest achievable largest
//!   oscillation over partitions whose intervals `[t_{i-1}, t_i)` are all
//!   longer than `delta`;
//! * [`w_osc`] and [`omega_double_prime`]: how far a middle value strays
//!   from the range spanned by two flanking values inside a window;
//! * [`endpoint_oscillations`]: the two boundary terms `|f(delta)-f(0)|`
//!   and `|f(T-)-f(T-delta)|`.
//!
//! Vector paths are measured with the Euclidean norm in `omega` and
//! `omega_prime`; the remaining functionals need scalar paths.

use serde::{Deserialize, Serialize};

use crate::metrics::GroundMetric;
use crate::paths::CadlagPath;
use crate::{Error, Result, TIME_TOL};

/// Which modulus a [`ModulusCurve`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulusKind {
    Omega,
    OmegaPrime,
    OmegaDoublePrime,
}

impl ModulusKind {
    pub fn eval(self, f: &CadlagPath, delta: f64) -> Result<f64> {
        match self {
            ModulusKind::Omega => omega(f, delta),
            ModulusKind::OmegaPrime => omega_prime(f, delta),
            ModulusKind::OmegaDoublePrime => omega_double_prime(f, delta),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModulusKind::Omega => "omega",
            ModulusKind::OmegaPrime => "omega_prime",
            ModulusKind::OmegaDoublePrime => "omega_double_prime",
        }
    }
}

/// A modulus evaluated along a ladder of `delta` values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModulusCurve {
    pub kind: ModulusKind,
    pub deltas: Vec<f64>,
    pub values: Vec<f64>,
}

impl ModulusCurve {
    pub fn new(f: &CadlagPath, kind: ModulusKind, deltas: &[f64]) -> Result<Self> {
        let values = deltas
            .iter()
            .map(|&d| kind.eval(f, d))
            .collect::<Result<_>>()?;
        Ok(ModulusCurve {
            kind,
            deltas: deltas.to_vec(),
            values,
        })
    }

    /// Whether larger `delta` never gives a smaller value.
    pub fn is_monotone(&self) -> bool {
        let mut pts: Vec<(f64, f64)> = self
            .deltas
            .iter()
            .copied()
            .zip(self.values.iter().copied())
            .collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        pts.windows(2).all(|w| w[0].1 <= w[1].1 + 1e-12)
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "delta must be positive, got {delta}"
        )));
    }
    Ok(())
}

/// `sup_{|t-s| < delta} d(f(t), f(s))`.
///
/// On each pair of pieces the distance is convex in `(s, t)`, so the
/// supremum is reached at breakpoints or at distance exactly `delta` from
/// one, approached from the side that keeps `|t - s| < delta`.
pub fn omega(f: &CadlagPath, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    let metric = GroundMetric::for_dim(f.dim());
    let horizon = f.horizon();
    let bps = f.breakpoints();
    let mut pts: Vec<f64> = bps.to_vec();
    pts.push(horizon);
    let mut best: f64 = 0.0;
    // values reachable at x: f(x) from the right, f(x-) from the left
    let sides = |x: f64| -> (Vec<f64>, Option<Vec<f64>>) {
        let right = f.value_unchecked(x);
        let left = (x > 0.0).then(|| f.left_limit_unchecked(x));
        (right, left)
    };
    // gaps within rounding of delta count as exactly delta, and shifted
    // points within rounding of a breakpoint are that breakpoint
    let tol = 1e-12 * horizon.max(delta);
    let snap = |x: f64| -> f64 {
        let k = pts.partition_point(|&b| b < x - tol);
        match pts.get(k) {
            Some(&b) if (b - x).abs() <= tol => b,
            _ => x,
        }
    };
    let mut pair = |s: f64, t: f64| {
        if !(0.0 <= s && s <= t && t <= horizon) {
            return;
        }
        let gap = if (t - s - delta).abs() <= tol {
            delta
        } else {
            t - s
        };
        let (sr, sl) = sides(s);
        let (tr, tl) = sides(t);
        if gap <= delta {
            best = best.max(metric.distance(&sr, &tr));
            if let Some(tl) = &tl {
                if gap > 0.0 {
                    best = best.max(metric.distance(&sr, tl));
                }
            }
            if let (Some(sl), Some(tl)) = (&sl, &tl) {
                best = best.max(metric.distance(sl, tl));
            }
        }
        if gap < delta {
            if let Some(sl) = &sl {
                best = best.max(metric.distance(sl, &tr));
            }
        }
    };
    for (i, &s) in pts.iter().enumerate() {
        for &t in &pts[i..] {
            if t - s > delta + tol {
                break;
            }
            pair(s, t);
        }
        pair(s, snap(s + delta));
        pair(snap(s - delta), s);
    }
    Ok(best)
}

/// The cadlag modulus `inf_{partitions} max_i osc(f, [t_{i-1}, t_i))` over
/// partitions of `[0, T]` with every `t_i - t_{i-1} > delta`.
///
/// Exact for scalar step paths. Other paths restrict the partition points
/// to jump times and the dyadic grid `k T / 2^j` with the coarsest pitch
/// not above `delta / 4`, which gives an upper bound. Smaller `delta` only
/// refines the grid, so ladders stay monotone.
pub fn omega_prime(f: &CadlagPath, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    if delta >= f.horizon() {
        return Err(Error::InvalidParameter(format!(
            "delta = {delta} leaves no admissible partition of [0, {}]",
            f.horizon()
        )));
    }
    if f.is_scalar() && f.is_step() && f.n_segments() <= 3000 {
        return Ok(omega_prime_step(f, delta));
    }
    let mut pitch = f.horizon();
    while pitch > delta / 4.0 {
        pitch /= 2.0;
    }
    Ok(omega_prime_grid(f, delta, pitch))
}

/// Step paths: the answer is the value range of some run of consecutive
/// stretches, so a feasibility test is binary searched over those ranges.
fn omega_prime_step(f: &CadlagPath, delta: f64) -> f64 {
    let horizon = f.horizon();
    let body = if f.has_terminal_jump() {
        f.n_segments() - 1
    } else {
        f.n_segments()
    };
    let v: Vec<f64> = (0..body).map(|i| f.segment_left(i)[0]).collect();
    let a: Vec<f64> = (0..body).map(|i| f.segment_start(i)).collect();
    let mut ranges = vec![0.0];
    for k in 0..body {
        let (mut lo, mut hi) = (v[k], v[k]);
        for &x in &v[k + 1..] {
            lo = lo.min(x);
            hi = hi.max(x);
            ranges.push(hi - lo);
        }
    }
    ranges.sort_by(f64::total_cmp);
    ranges.dedup();
    let feasible = |r: f64| -> bool {
        // earliest start of an interval whose first stretch is k
        let mut start = vec![f64::INFINITY; body];
        start[0] = 0.0;
        for k in 0..body {
            let l0 = start[k];
            if !l0.is_finite() {
                continue;
            }
            let (mut lo, mut hi) = (v[k], v[k]);
            for l in k..body {
                lo = lo.min(v[l]);
                hi = hi.max(v[l]);
                if hi - lo > r {
                    break;
                }
                if l == body - 1 && horizon - l0 > delta {
                    return true;
                }
                // cut inside stretch l, right after the mesh bound
                if l > k && l0 + delta >= a[l] && l0 + delta < f.segment_end(l) {
                    start[l] = start[l].min(l0 + delta);
                }
                // cut at the jump ending stretch l
                if l + 1 < body && a[l + 1] > l0 + delta {
                    start[l + 1] = start[l + 1].min(a[l + 1]);
                }
            }
        }
        false
    };
    let k = ranges.partition_point(|&r| !feasible(r));
    ranges[k.min(ranges.len() - 1)]
}

/// Partition search restricted to candidate points: jump times, the grid
/// `k * pitch`, and the endpoints.
fn omega_prime_grid(f: &CadlagPath, delta: f64, pitch: f64) -> f64 {
    let horizon = f.horizon();
    let metric = GroundMetric::for_dim(f.dim());
    let mut cands: Vec<f64> = f
        .jumps()
        .iter()
        .map(|j| j.time)
        .filter(|&t| t < horizon)
        .collect();
    let steps = (horizon / pitch).floor() as usize;
    cands.extend(
        (0..=steps)
            .map(|k| k as f64 * pitch)
            .filter(|&t| t < horizon),
    );
    cands.push(0.0);
    cands.push(horizon);
    cands.sort_by(f64::total_cmp);
    cands.dedup_by(|b, a| *b - *a < TIME_TOL);
    *cands.last_mut().unwrap() = horizon;
    // values met on the way: f(b-) and f(b) at every breakpoint
    let mut events: Vec<(f64, Vec<f64>)> = Vec::new();
    for &b in &f.breakpoints()[1..] {
        events.push((b, f.left_limit_unchecked(b)));
        events.push((b, f.value_unchecked(b)));
    }
    let m = cands.len();
    let mut best = vec![f64::INFINITY; m];
    best[0] = 0.0;
    for i in 0..m {
        if !best[i].is_finite() {
            continue;
        }
        let ci = cands[i];
        let mut set = Hull::new(f.value_unchecked(ci));
        let mut e = events.partition_point(|ev| ev.0 <= ci);
        for j in i + 1..m {
            let cj = cands[j];
            while e < events.len() && events[e].0 < cj {
                set.add(&events[e].1, &metric);
                e += 1;
            }
            if cj - ci > delta {
                let d = set.diameter_with(&f.left_limit_unchecked(cj), &metric);
                best[j] = best[j].min(best[i].max(d));
            }
            if set.diam >= best[m - 1] {
                break;
            }
        }
    }
    best[m - 1]
}

/// Running diameter of a set of values: a min/max pair for scalars, the
/// full list otherwise.
enum HullSet {
    Scalar(f64, f64),
    Points(Vec<Vec<f64>>),
}

struct Hull {
    set: HullSet,
    diam: f64,
}

impl Hull {
    fn new(x: Vec<f64>) -> Self {
        let set = if x.len() == 1 {
            HullSet::Scalar(x[0], x[0])
        } else {
            HullSet::Points(vec![x])
        };
        Hull { set, diam: 0.0 }
    }

    fn diameter_with(&self, x: &[f64], metric: &GroundMetric) -> f64 {
        match &self.set {
            HullSet::Scalar(lo, hi) => self.diam.max(x[0] - lo).max(hi - x[0]),
            HullSet::Points(pts) => pts
                .iter()
                .fold(self.diam, |d, y| d.max(metric.distance(x, y))),
        }
    }

    fn add(&mut self, x: &[f64], metric: &GroundMetric) {
        self.diam = self.diameter_with(x, metric);
        match &mut self.set {
            HullSet::Scalar(lo, hi) => {
                *lo = lo.min(x[0]);
                *hi = hi.max(x[0]);
            }
            HullSet::Points(pts) => pts.push(x.to_vec()),
        }
    }
}

/// Values met in order across a window: `f(L)` (or `f(L-), f(L)` when the
/// window reaches just left of `L`), both sides of every breakpoint inside,
/// then `f(R-)` (followed by `f(R)` when the window reaches just right of `R`).
fn window_values(f: &CadlagPath, l: f64, r: f64, reach_left: bool, reach_right: bool) -> Vec<f64> {
    let mut out = Vec::new();
    if reach_left && l > 0.0 {
        out.push(f.left_value(l));
    }
    out.push(f.value(l));
    let bps = f.breakpoints();
    let from = bps.partition_point(|&b| b <= l);
    for &b in &bps[from..] {
        if b >= r {
            break;
        }
        out.push(f.left_value(b));
        out.push(f.value(b));
    }
    if r > l {
        out.push(f.left_value(r));
        if reach_right {
            out.push(f.value(r));
        }
    }
    out
}

/// `max_{i<j<k} d(v_j, [v_i, v_k])` over an ordered value sequence.
fn middle_excursion(v: &[f64]) -> f64 {
    let n = v.len();
    if n < 3 {
        return 0.0;
    }
    let mut suf_min = vec![f64::INFINITY; n + 1];
    let mut suf_max = vec![f64::NEG_INFINITY; n + 1];
    for k in (0..n).rev() {
        suf_min[k] = suf_min[k + 1].min(v[k]);
        suf_max[k] = suf_max[k + 1].max(v[k]);
    }
    let (mut pre_min, mut pre_max) = (v[0], v[0]);
    let mut best: f64 = 0.0;
    for j in 1..n - 1 {
        let above = v[j] - pre_min.max(suf_min[j + 1]);
        let below = pre_max.min(suf_max[j + 1]) - v[j];
        best = best.max(above).max(below);
        pre_min = pre_min.min(v[j]);
        pre_max = pre_max.max(v[j]);
    }
    best
}

fn check_scalar(f: &CadlagPath) -> Result<()> {
    if !f.is_scalar() {
        return Err(Error::NotScalar(f.dim()));
    }
    Ok(())
}

/// `w(f, t, delta)`: the largest distance from `f(t2)` to the interval
/// between `f(t1)` and `f(t3)` over `t1 < t2 < t3` in
/// `[max(0, t - delta), min(t + delta, T))`.
pub fn w_osc(f: &CadlagPath, t: f64, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    check_scalar(f)?;
    if !(0.0..=f.horizon()).contains(&t) {
        return Err(Error::OutOfDomain {
            t,
            domain: format!("[0, {}]", f.horizon()),
        });
    }
    let l = (t - delta).max(0.0);
    let r = (t + delta).min(f.horizon());
    Ok(middle_excursion(&window_values(f, l, r, false, false)))
}

/// `sup_t w(f, t, delta)`.
///
/// Windows of length `2 delta` only change their content when an end
/// crosses a breakpoint, so it suffices to look at windows starting just
/// before a breakpoint or ending just after one.
pub fn omega_double_prime(f: &CadlagPath, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    check_scalar(f)?;
    let horizon = f.horizon();
    let width = 2.0 * delta;
    let mut best = middle_excursion(&window_values(f, 0.0, width.min(horizon), false, false));
    best = best.max(middle_excursion(&window_values(
        f,
        (horizon - width).max(0.0),
        horizon,
        false,
        false,
    )));
    let bps = f.breakpoints();
    let tol = 1e-12 * horizon.max(delta);
    let snap = |x: f64| -> f64 {
        let k = bps.partition_point(|&b| b < x - tol);
        match bps.get(k) {
            Some(&b) if (b - x).abs() <= tol => b,
            _ if (horizon - x).abs() <= tol => horizon,
            _ => x,
        }
    };
    for &b in &bps[1..] {
        if b >= horizon {
            continue;
        }
        best = best.max(middle_excursion(&window_values(
            f,
            b,
            snap((b + width).min(horizon)),
            true,
            false,
        )));
        if b - width >= -tol {
            best = best.max(middle_excursion(&window_values(
                f,
                snap((b - width).max(0.0)),
                b,
                false,
                true,
            )));
        }
    }
    Ok(best)
}

/// `(|f(delta) - f(0)|, |f(T-) - f(T - delta)|)`.
pub fn endpoint_oscillations(f: &CadlagPath, delta: f64) -> Result<(f64, f64)> {
    check_delta(delta)?;
    check_scalar(f)?;
    let horizon = f.horizon();
    if delta >= horizon {
        return Err(Error::InvalidParameter(format!(
            "delta = {delta} must be below the horizon {horizon}"
        )));
    }
    let start = (f.value(delta) - f.value(0.0)).abs();
    let end = (f.left_value(horizon) - f.value(horizon - delta)).abs();
    Ok((start, end))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ind(a: f64) -> CadlagPath {
        CadlagPath::indicator(1.0, a, 1.0).unwrap()
    }

    fn spike(n: f64) -> CadlagPath {
        CadlagPath::indicator(1.0, 0.5, 0.5 + 1.0 / n).unwrap()
    }

    fn identity() -> CadlagPath {
        CadlagPath::piecewise_linear(1.0, &[0.0, 1.0], &[0.0, 1.0], &[]).unwrap()
    }

    #[test]
    fn omega_examples() {
        assert!((omega(&identity(), 0.1).unwrap() - 0.1).abs() < 1e-15);
        assert_eq!(
            omega(&CadlagPath::constant(1.0, 3.0).unwrap(), 0.2).unwrap(),
            0.0
        );
        for d in [0.5, 1e-3, 1e-6] {
            assert_eq!(omega(&ind(0.5), d).unwrap(), 1.0);
        }
        assert!(omega(&identity(), 0.0).is_err());
    }

    #[test]
    fn omega_respects_the_strict_window() {
        // values 0, 1, 0 on [0,.4), [.4,.6), [.6,1]
        let f = CadlagPath::step(1.0, &[0.0, 0.4, 0.6], &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(omega(&f, 0.1).unwrap(), 1.0);
        let g = CadlagPath::step(1.0, &[0.0, 0.4, 0.6], &[0.0, 1.0, 3.0]).unwrap();
        // reaching from 0 to 3 needs |t - s| > 0.2
        assert_eq!(omega(&g, 0.2).unwrap(), 2.0);
        assert_eq!(omega(&g, 0.2 + 1e-9).unwrap(), 3.0);
    }

    #[test]
    fn omega_prime_examples() {
        assert_eq!(omega_prime(&ind(0.5), 0.3).unwrap(), 0.0);
        assert_eq!(omega_prime(&ind(0.5), 0.5).unwrap(), 1.0);
        assert!(omega_prime(&ind(0.5), 1.0).is_err());
        let stair = CadlagPath::step(1.0, &[0.0, 0.4, 0.5], &[0.0, 0.5, 1.0]).unwrap();
        assert_eq!(omega_prime(&stair, 0.09).unwrap(), 0.0);
        assert_eq!(omega_prime(&stair, 0.1).unwrap(), 0.5);
        // jump at the horizon is free
        let last = CadlagPath::step(1.0, &[0.0, 1.0], &[0.0, 1.0]).unwrap();
        assert_eq!(omega_prime(&last, 0.9).unwrap(), 0.0);
    }

    #[test]
    fn omega_prime_grid_matches_exact_on_steps() {
        let f = CadlagPath::step(
            1.0,
            &[0.0, 0.13, 0.2, 0.55, 0.61, 0.9],
            &[0.0, 1.0, -1.0, 2.0, 0.5, 1.5],
        )
        .unwrap();
        for d in [0.03, 0.06, 0.1, 0.2, 0.3, 0.5] {
            let exact = omega_prime_step(&f, d);
            let grid = omega_prime_grid(&f, d, d / 64.0);
            assert!(grid >= exact - 1e-12, "delta={d}: {grid} < {exact}");
        }
    }

    #[test]
    fn omega_prime_of_continuous_path_is_bounded_by_omega() {
        let f =
            CadlagPath::piecewise_linear(1.0, &[0.0, 0.3, 0.5, 1.0], &[0.0, 1.0, -0.5, 0.2], &[])
                .unwrap();
        for d in [0.05, 0.1, 0.2, 0.4] {
            assert!(omega_prime(&f, d).unwrap() <= omega(&f, 2.0 * d).unwrap() + 1e-12);
        }
    }

    #[test]
    fn w_osc_examples() {
        assert_eq!(w_osc(&identity(), 0.5, 0.2).unwrap(), 0.0);
        assert_eq!(w_osc(&spike(20.0), 0.5, 0.1).unwrap(), 1.0);
        assert_eq!(
            w_osc(&CadlagPath::constant(1.0, 1.0).unwrap(), 0.3, 0.1).unwrap(),
            0.0
        );
        // window [0.4, 0.5) does not see the spike starting at 0.5
        assert_eq!(w_osc(&spike(20.0), 0.45, 0.05).unwrap(), 0.0);
    }

    #[test]
    fn omega_double_prime_examples() {
        assert_eq!(omega_double_prime(&ind(0.5), 0.2).unwrap(), 0.0);
        let stair = CadlagPath::step(1.0, &[0.0, 0.45, 0.5], &[0.0, 0.5, 1.0]).unwrap();
        assert_eq!(omega_double_prime(&stair, 0.1).unwrap(), 0.0);
        for n in [11.0, 100.0, 1000.0] {
            assert_eq!(omega_double_prime(&spike(n), 0.05).unwrap(), 1.0);
        }
        // windows of length 0.1 cannot hold both flanks of a spike of width 0.1
        assert_eq!(omega_double_prime(&spike(10.0), 0.05).unwrap(), 0.0);
    }

    #[test]
    fn double_prime_is_bounded_by_prime_at_twice_delta() {
        let f = CadlagPath::step(1.0, &[0.0, 0.4, 0.6], &[0.0, 1.0, 0.0]).unwrap();
        // a bump narrower than the partition mesh
        assert_eq!(omega_prime(&f, 0.15).unwrap(), 0.0);
        assert_eq!(omega_double_prime(&f, 0.15).unwrap(), 1.0);
        assert!(omega_double_prime(&f, 0.15).unwrap() <= omega_prime(&f, 0.3).unwrap());
    }

    #[test]
    fn endpoint_examples() {
        assert_eq!(endpoint_oscillations(&ind(0.5), 0.1).unwrap(), (0.0, 0.0));
        let early = CadlagPath::step(1.0, &[0.0, 0.05], &[0.0, 2.0]).unwrap();
        assert_eq!(endpoint_oscillations(&early, 0.1).unwrap().0, 2.0);
        assert_eq!(
            endpoint_oscillations(&CadlagPath::constant(1.0, 1.0).unwrap(), 0.3).unwrap(),
            (0.0, 0.0)
        );
        let late = CadlagPath::step(1.0, &[0.0, 0.95], &[0.0, 2.0]).unwrap();
        assert_eq!(endpoint_oscillations(&late, 0.1).unwrap().1, 2.0);
    }

    #[test]
    fn ladders_are_monotone() {
        let f = CadlagPath::step(
            1.0,
            &[0.0, 0.13, 0.2, 0.55, 0.61, 0.9],
            &[0.0, 1.0, -1.0, 2.0, 0.5, 1.5],
        )
        .unwrap();
        let deltas = [0.4, 0.2, 0.1, 0.05, 0.02, 0.01];
        for kind in [
            ModulusKind::Omega,
            ModulusKind::OmegaPrime,
            ModulusKind::OmegaDoublePrime,
        ] {
            assert!(
                ModulusCurve::new(&f, kind, &deltas).unwrap().is_monotone(),
                "{kind:?}"
            );
        }
    }
}
