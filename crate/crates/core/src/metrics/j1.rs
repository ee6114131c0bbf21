use super::threshold::{minimize_sum, sorted_unique};
use super::uniform::sup_distance;
use super::{DistanceReport, GroundMetric, Penalty, Witness};
use crate::paths::{apply_time_change, lerp, log_slope, CadlagPath, TimeChange};
use crate::Result;

/// Tuning knobs for [`j1_distance_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct J1Options {
    /// Grid size per unit horizon for the discretized search used on paths
    /// with linear pieces.
    pub resolution: usize,
    /// Largest number of jump-matching anchors the exact step algorithm
    /// accepts before switching to the discretized search.
    pub max_anchors: usize,
}

impl Default for J1Options {
    fn default() -> Self {
        J1Options {
            resolution: 200,
            max_anchors: 2500,
        }
    }
}

/// `sup |f∘lambda - g| + penalty(lambda)`, evaluated exactly.
pub fn j1_objective(
    f: &CadlagPath,
    g: &CadlagPath,
    lambda: &TimeChange,
    penalty: Penalty,
    metric: &GroundMetric,
) -> Result<f64> {
    f.check_compatible(g)?;
    metric.check_dim(f.dim())?;
    let composed = apply_time_change(f, lambda)?;
    Ok(sup_distance(&composed, g, metric) + penalty.of(lambda))
}

/// The Skorokhod J1 distance `inf_lambda { sup |f∘lambda - g| + penalty(lambda) }`.
///
/// Exact for step paths; paths with linear pieces use a discretized search
/// whose report carries a nonzero error bound.
pub fn j1_distance(
    f: &CadlagPath,
    g: &CadlagPath,
    penalty: Penalty,
    metric: &GroundMetric,
) -> Result<DistanceReport> {
    j1_distance_with(f, g, penalty, metric, &J1Options::default())
}

pub fn j1_distance_with(
    f: &CadlagPath,
    g: &CadlagPath,
    penalty: Penalty,
    metric: &GroundMetric,
    opts: &J1Options,
) -> Result<DistanceReport> {
    f.check_compatible(g)?;
    metric.check_dim(f.dim())?;
    let identity = sup_distance(f, g, metric);
    if identity == 0.0 {
        return Ok(DistanceReport::exact(
            0.0,
            Witness::TimeChange {
                lambda: TimeChange::identity(f.horizon()),
            },
        ));
    }
    if f.is_step() && g.is_step() {
        if let Some(r) = exact_step(f, g, penalty, metric, identity, opts.max_anchors)? {
            return Ok(r);
        }
    }
    discretized(f, g, penalty, metric, identity, opts.resolution.max(2))
}

/// Lower bound on the penalty of any time change with `lambda(s) = u`.
fn anchor_penalty_bound(penalty: Penalty, horizon: f64, s: f64, u: f64) -> f64 {
    match penalty {
        Penalty::Absolute => (u - s).abs(),
        Penalty::LogSlope => log_slope((0.0, 0.0), (s, u))
            .abs()
            .max(log_slope((s, u), (horizon, horizon)).abs()),
    }
}

fn edge_penalty(penalty: Penalty, p: (f64, f64), q: (f64, f64)) -> f64 {
    match penalty {
        Penalty::Absolute => (p.1 - p.0).abs().max((q.1 - q.0).abs()),
        Penalty::LogSlope => log_slope(p, q).abs(),
    }
}

/// `sup_{s in [p.0, q.0)} d(f(lambda(s)), g(s))` for the linear map sending
/// `p` to `q`, plus `d(f(T), g(T))` when `q` is the terminal corner.
fn edge_cost(
    f: &CadlagPath,
    g: &CadlagPath,
    metric: &GroundMetric,
    p: (f64, f64),
    q: (f64, f64),
) -> f64 {
    let horizon = f.horizon();
    let tol = 1e-12 * horizon;
    let (sp, up) = p;
    let (sq, uq) = q;
    let fb = f.breakpoints();
    let gb = g.breakpoints();
    let mut fi = f.segment_at(up);
    let mut gi = g.segment_at(sp);
    let mut cost: f64 = 0.0;
    let mut prev = sp;
    loop {
        let tf = match fb.get(fi + 1) {
            Some(&a) if a < uq => lerp(up, sp, uq, sq, a),
            _ => f64::INFINITY,
        };
        let tg = match gb.get(gi + 1) {
            Some(&b) if b < sq => b,
            _ => f64::INFINITY,
        };
        let t = tf.min(tg);
        if t >= sq - tol {
            break;
        }
        if t - prev > tol {
            cost = cost.max(metric.distance(f.segment_left(fi), g.segment_left(gi)));
        }
        if tf == t {
            fi += 1;
        } else {
            gi += 1;
        }
        prev = t;
    }
    if sq - prev > tol {
        cost = cost.max(metric.distance(f.segment_left(fi), g.segment_left(gi)));
    }
    if sq == horizon {
        let fl = f.n_segments() - 1;
        let gl = g.n_segments() - 1;
        cost = cost.max(metric.distance(f.segment_left(fl), g.segment_left(gl)));
    }
    cost
}

struct Edge {
    from: usize,
    cost: f64,
    penalty: f64,
}

/// Bottleneck path through the anchor DAG using only edges with penalty at
/// most `alpha`; returns the sink value and predecessor links.
fn bottleneck(edges: &[Vec<Edge>], alpha: f64) -> (f64, Vec<usize>) {
    let n = edges.len();
    let mut dp = vec![f64::INFINITY; n];
    let mut pred = vec![usize::MAX; n];
    dp[0] = 0.0;
    for q in 1..n {
        for e in &edges[q] {
            if e.penalty <= alpha && dp[e.from].is_finite() {
                let v = dp[e.from].max(e.cost);
                if v < dp[q] {
                    dp[q] = v;
                    pred[q] = e.from;
                }
            }
        }
    }
    (dp[n - 1], pred)
}

/// Exact J1 for step paths.
///
/// Between jumps both paths are constant, so the objective of a piecewise
/// linear time change only depends on which jumps it aligns. Nodes of the
/// search graph are the pairs (jump of `g`, jump of `f`) that the time
/// change may align, edges are linear pieces between them, and for every
/// candidate penalty level `alpha` a bottleneck pass finds the smallest
/// achievable uniform part. The minimum of `alpha + U(alpha)` over the
/// candidate levels is the distance.
fn exact_step(
    f: &CadlagPath,
    g: &CadlagPath,
    penalty: Penalty,
    metric: &GroundMetric,
    identity: f64,
    max_anchors: usize,
) -> Result<Option<DistanceReport>> {
    let horizon = f.horizon();
    let fa = f.interior_jump_times();
    let gb = g.interior_jump_times();
    let mut nodes: Vec<(f64, f64)> = vec![(0.0, 0.0)];
    for &b in &gb {
        for &a in &fa {
            if anchor_penalty_bound(penalty, horizon, b, a) < identity {
                nodes.push((b, a));
                if nodes.len() > max_anchors + 1 {
                    return Ok(None);
                }
            }
        }
    }
    nodes.push((horizon, horizon));
    let n = nodes.len();
    let sink = n - 1;
    let mut edges: Vec<Vec<Edge>> = (0..n).map(|_| Vec::new()).collect();
    let mut levels = vec![0.0];
    for q in 1..n {
        let nq = nodes[q];
        for p in 0..q {
            let np = nodes[p];
            if !(np.0 < nq.0 && np.1 < nq.1) {
                continue;
            }
            let direct = p == 0 && q == sink;
            let pen = edge_penalty(penalty, np, nq);
            if pen >= identity && !direct {
                continue;
            }
            let cost = edge_cost(f, g, metric, np, nq);
            if cost >= identity && !direct {
                continue;
            }
            levels.push(pen);
            edges[q].push(Edge {
                from: p,
                cost,
                penalty: pen,
            });
        }
    }
    let levels = sorted_unique(levels);
    let (k, _, _) = minimize_sum(&levels, |k| bottleneck(&edges, levels[k]).0);
    let (_, pred) = bottleneck(&edges, levels[k]);
    let mut chain = vec![sink];
    while *chain.last().unwrap() != 0 {
        chain.push(pred[*chain.last().unwrap()]);
    }
    chain.reverse();
    let mut uniform_part: f64 = 0.0;
    let mut penalty_part: f64 = 0.0;
    for w in chain.windows(2) {
        let e = edges[w[1]]
            .iter()
            .find(|e| e.from == w[0])
            .expect("edge on chain");
        uniform_part = uniform_part.max(e.cost);
        penalty_part = penalty_part.max(e.penalty);
    }
    let value = uniform_part + penalty_part;
    if value >= identity {
        return Ok(Some(DistanceReport::exact(
            identity,
            Witness::TimeChange {
                lambda: TimeChange::identity(horizon),
            },
        )));
    }
    let lambda = TimeChange::new(horizon, chain.iter().map(|&i| nodes[i]).collect())?;
    Ok(Some(DistanceReport::exact(
        value,
        Witness::TimeChange { lambda },
    )))
}

/// `(time, value)` samples along a path: segment ends, grid points inside
/// linear pieces, and both sides of every jump. Also returns the largest
/// value step between consecutive samples of the same linear piece.
fn samples(p: &CadlagPath, pitch: f64, metric: &GroundMetric) -> (Vec<(f64, Vec<f64>)>, f64) {
    let mut out: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut step: f64 = 0.0;
    let push = |out: &mut Vec<(f64, Vec<f64>)>, t: f64, v: Vec<f64>| {
        if out.last().is_some_and(|(lt, lv)| *lt == t && *lv == v) {
            return;
        }
        out.push((t, v));
    };
    for i in 0..p.n_segments() {
        let s = p.segment_start(i);
        let e = p.segment_end(i);
        let l = p.segment_left(i).to_vec();
        if s == p.horizon() {
            push(&mut out, s, l);
            continue;
        }
        push(&mut out, s, l.clone());
        if !p.segment_is_constant(i) {
            let k = ((e - s) / pitch).ceil().max(1.0) as usize;
            let mut prev = l;
            for j in 1..k {
                let t = s + (e - s) * j as f64 / k as f64;
                let v = p.value_unchecked(t);
                step = step.max(metric.distance(&prev, &v));
                push(&mut out, t, v.clone());
                prev = v;
            }
            step = step.max(metric.distance(&prev, p.segment_right(i)));
        }
        push(&mut out, e, p.segment_right(i).to_vec());
    }
    (out, step)
}

/// Discretized J1 for paths with linear pieces.
///
/// Samples of both paths are coupled monotonically under the constraint
/// `|s - u| <= alpha`; the bottleneck value gap of the best coupling plus
/// the penalty bound implied by `alpha` approximates the distance from
/// below, and the time change read off the optimal coupling gives an
/// exactly evaluated upper bound. The report carries the upper bound and
/// the gap between the two as error bound.
fn discretized(
    f: &CadlagPath,
    g: &CadlagPath,
    penalty: Penalty,
    metric: &GroundMetric,
    identity: f64,
    resolution: usize,
) -> Result<DistanceReport> {
    let horizon = f.horizon();
    let pitch = horizon / resolution as f64;
    let (gs, g_step) = samples(g, pitch, metric);
    let (fs, f_step) = samples(f, pitch, metric);
    let (ni, nj) = (gs.len(), fs.len());
    let mut cost = vec![0.0; ni * nj];
    for i in 0..ni {
        for j in 0..nj {
            cost[i * nj + j] = metric.distance(&gs[i].1, &fs[j].1);
        }
    }
    let coupling = |alpha: f64| -> (f64, Vec<f64>) {
        let mut dp = vec![f64::INFINITY; ni * nj];
        for i in 0..ni {
            for j in 0..nj {
                if (gs[i].0 - fs[j].0).abs() > alpha + 1e-12 * horizon {
                    continue;
                }
                let here = cost[i * nj + j];
                let before = if i == 0 && j == 0 {
                    0.0
                } else {
                    let mut m = f64::INFINITY;
                    if i > 0 && j > 0 {
                        m = m.min(dp[(i - 1) * nj + j - 1]);
                    }
                    if i > 0 {
                        m = m.min(dp[(i - 1) * nj + j]);
                    }
                    if j > 0 {
                        m = m.min(dp[i * nj + j - 1]);
                    }
                    m
                };
                dp[i * nj + j] = here.max(before);
            }
        }
        (dp[ni * nj - 1], dp)
    };
    let steps = ((identity.min(horizon) / pitch).ceil() as usize).max(1);
    let alphas: Vec<f64> = (0..=steps).map(|k| k as f64 * pitch).collect();
    let bound = |alpha: f64| match penalty {
        Penalty::Absolute => alpha,
        Penalty::LogSlope => (alpha / horizon).ln_1p(),
    };
    let cands: Vec<f64> = alphas.iter().map(|&a| bound(a)).collect();
    let (k, lower, _) = minimize_sum(&cands, |k| coupling(alphas[k]).0);
    let (_, dp) = coupling(alphas[k]);

    // walk the optimal coupling back from the terminal cell
    let mut pairs = vec![(ni - 1, nj - 1)];
    let (mut i, mut j) = (ni - 1, nj - 1);
    while i > 0 || j > 0 {
        let mut best = (f64::INFINITY, 0, 0);
        for (di, dj) in [(1, 1), (1, 0), (0, 1)] {
            if i >= di && j >= dj {
                let v = dp[(i - di) * nj + j - dj];
                if v < best.0 {
                    best = (v, i - di, j - dj);
                }
            }
        }
        i = best.1;
        j = best.2;
        pairs.push((i, j));
    }
    pairs.reverse();
    let tol = 1e-9 * horizon;
    let mut nodes = vec![(0.0, 0.0)];
    for &(i, j) in &pairs {
        let (s, u) = (gs[i].0, fs[j].0);
        let last = *nodes.last().unwrap();
        if s > last.0 + tol && u > last.1 + tol && s < horizon - tol && u < horizon - tol {
            nodes.push((s, u));
        }
    }
    nodes.push((horizon, horizon));
    let lambda = TimeChange::new(horizon, nodes)?;
    let at_witness = j1_objective(f, g, &lambda, penalty, metric)?;
    let (value, lambda) = if at_witness < identity {
        (at_witness, lambda)
    } else {
        (identity, TimeChange::identity(horizon))
    };
    let slack = match penalty {
        Penalty::Absolute => pitch,
        Penalty::LogSlope => pitch / horizon.min(1.0),
    };
    let error_bound = (value - lower).max(0.0) + f_step + g_step + slack;
    Ok(DistanceReport::discretized(
        value,
        Witness::TimeChange { lambda },
        error_bound,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ind(a: f64) -> CadlagPath {
        CadlagPath::indicator(1.0, a, 1.0).unwrap()
    }

    #[test]
    fn shift_family_is_one_over_n() {
        for n in 3..=50 {
            let r = j1_distance(
                &ind(0.5 - 1.0 / n as f64),
                &ind(0.5),
                Penalty::Absolute,
                &GroundMetric::Abs,
            )
            .unwrap();
            assert!(
                (r.value - 1.0 / n as f64).abs() < 1e-12,
                "n={n}: {}",
                r.value
            );
            assert_eq!(r.error_bound, 0.0);
        }
    }

    #[test]
    fn self_distance_is_zero_with_identity_witness() {
        let f = CadlagPath::step(1.0, &[0.0, 0.2, 0.7], &[1.0, 3.0, -1.0]).unwrap();
        let r = j1_distance(&f, &f, Penalty::Absolute, &GroundMetric::Abs).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.time_change().unwrap().is_identity());
    }

    #[test]
    fn witness_reproduces_value() {
        let f = CadlagPath::step(1.0, &[0.0, 0.2, 0.45, 0.7], &[1.0, 3.0, -1.0, 0.0]).unwrap();
        let g = CadlagPath::step(1.0, &[0.0, 0.25, 0.5, 0.72], &[1.2, 2.9, -0.5, 0.1]).unwrap();
        for pen in [Penalty::Absolute, Penalty::LogSlope] {
            let r = j1_distance(&f, &g, pen, &GroundMetric::Abs).unwrap();
            let again =
                j1_objective(&f, &g, r.time_change().unwrap(), pen, &GroundMetric::Abs).unwrap();
            assert!(
                (again - r.value).abs() < 1e-12,
                "{pen:?}: {again} vs {}",
                r.value
            );
        }
        // aligning all three jumps: shifts of at most 0.05, value gap 0.5
        let r = j1_distance(&f, &g, Penalty::Absolute, &GroundMetric::Abs).unwrap();
        assert!((r.value - 0.55).abs() < 1e-12, "{}", r.value);
        let r = j1_distance(&f, &g, Penalty::LogSlope, &GroundMetric::Abs).unwrap();
        assert!(r.value <= 0.5 + 0.8f64.ln().abs() + 1e-12, "{}", r.value);
        {}
    }

    #[test]
    fn continuous_paths_use_the_grid() {
        let f = CadlagPath::piecewise_linear(1.0, &[0.0, 0.4, 1.0], &[0.0, 1.0, 0.0], &[]).unwrap();
        let g = CadlagPath::piecewise_linear(1.0, &[0.0, 0.5, 1.0], &[0.0, 1.0, 0.0], &[]).unwrap();
        let r = j1_distance(&f, &g, Penalty::Absolute, &GroundMetric::Abs).unwrap();
        assert_eq!(r.method, super::super::Method::Discretized);
        // lambda through (0.5, 0.4) costs 0.1 and matches exactly
        assert!(
            r.value - r.error_bound <= 0.1 && 0.1 <= r.value + 1e-12,
            "{} +- {}",
            r.value,
            r.error_bound
        );
        assert!(
            r.value < 0.11 && r.error_bound < 0.05,
            "{} +- {}",
            r.value,
            r.error_bound
        );
        let again = j1_objective(
            &f,
            &g,
            r.time_change().unwrap(),
            Penalty::Absolute,
            &GroundMetric::Abs,
        )
        .unwrap();
        assert!((again - r.value).abs() < 1e-12);
    }

    #[test]
    fn mixed_jump_and_slope() {
        let f =
            CadlagPath::piecewise_linear(1.0, &[0.0, 0.3, 1.0], &[0.0, 1.0, 1.0], &[(0.3, 0.0)])
                .unwrap();
        let g =
            CadlagPath::piecewise_linear(1.0, &[0.0, 0.35, 1.0], &[0.0, 1.0, 1.0], &[(0.35, 0.0)])
                .unwrap();
        let r = j1_distance(&f, &g, Penalty::Absolute, &GroundMetric::Abs).unwrap();
        assert!(r.value <= 0.05 + 1e-9, "{}", r.value);
    }
}
