//! Cadlag paths, time changes and completed graphs.

mod graph;
mod json;
mod path;
mod time_change;

pub use graph::CompletedGraph;
pub use json::PathJson;
pub use path::{CadlagPath, Jump};
pub use time_change::TimeChange;

pub(crate) use time_change::{lerp, log_slope};

use crate::{Error, Result, TIME_TOL};

/// `f(t)` for `t` in `[0, T]`.
pub fn eval(path: &CadlagPath, t: f64) -> Result<Vec<f64>> {
    path.eval(t)
}

/// `f(t-)` for `t` in `(0, T]`.
pub fn left_limit(path: &CadlagPath, t: f64) -> Result<Vec<f64>> {
    path.left_limit(t)
}

/// The jumps of `path` as `(time, f(t-), f(t))` in increasing time order.
pub fn jumps(path: &CadlagPath) -> Vec<Jump> {
    path.jumps()
}

pub fn completed_graph(path: &CadlagPath) -> Result<CompletedGraph> {
    CompletedGraph::new(path)
}

pub fn restrict(path: &CadlagPath, horizon: f64) -> Result<CadlagPath> {
    path.restrict(horizon)
}

pub fn sup_deviation(lambda: &TimeChange) -> f64 {
    lambda.sup_deviation()
}

pub fn log_slope_norm(lambda: &TimeChange) -> f64 {
    lambda.log_slope_norm()
}

/// The exact representation of `f ∘ lambda`.
///
/// Breakpoints of the result are the preimages of the breakpoints of `f`
/// together with the nodes of `lambda`; on each resulting piece both maps
/// are affine, so the composition stays piecewise linear.
pub fn apply_time_change(path: &CadlagPath, lambda: &TimeChange) -> Result<CadlagPath> {
    let horizon = path.horizon();
    if lambda.horizon() != horizon {
        return Err(Error::HorizonMismatch(horizon, lambda.horizon()));
    }
    if lambda.is_identity() {
        return Ok(path.clone());
    }
    // (s, lambda(s)) events; breakpoints of f keep their exact image
    let mut events: Vec<(f64, f64)> = Vec::with_capacity(path.n_segments() + lambda.nodes().len());
    for &t in path.breakpoints() {
        events.push((lambda.eval_inverse(t), t));
    }
    let nodes = lambda.nodes();
    let mut from_path = vec![true; events.len()];
    for &(s, u) in &nodes[1..nodes.len() - 1] {
        events.push((s, u));
        from_path.push(false);
    }
    let mut order: Vec<usize> = (0..events.len()).collect();
    order.sort_by(|&a, &b| {
        events[a]
            .0
            .total_cmp(&events[b].0)
            .then(from_path[b].cmp(&from_path[a]))
    });
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(events.len());
    for k in order {
        let e = events[k];
        match merged.last() {
            Some(last) if e.0 - last.0 < TIME_TOL => {}
            _ => merged.push(e),
        }
    }
    let dim = path.dim();
    let terminal = path.has_terminal_jump();
    let mut starts = Vec::with_capacity(merged.len());
    let mut lefts = Vec::with_capacity(merged.len() * dim);
    let mut rights = Vec::with_capacity(merged.len() * dim);
    for (k, &(s, u)) in merged.iter().enumerate() {
        if s == horizon && !terminal {
            continue;
        }
        starts.push(s);
        lefts.extend(path.value_unchecked(u));
        if s == horizon {
            rights.extend(path.value_unchecked(u));
        } else {
            let u_end = merged.get(k + 1).map_or(horizon, |e| e.1);
            rights.extend(path.left_limit_unchecked(u_end));
        }
    }
    CadlagPath::from_segments(horizon, dim, starts, lefts, rights)
}
