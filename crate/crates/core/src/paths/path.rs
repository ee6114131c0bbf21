use crate::{Error, Result, TIME_TOL};

/// A jump of a path: the time, the left limit `f(t-)` and the value `f(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jump {
    pub time: f64,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

/// A cadlag path on `[0, T]` with values in `R^k`.
///
/// The path is stored as segments `[t_i, t_{i+1})` starting at strictly
/// increasing breakpoints `0 = t_0 < t_1 < ... < t_m <= T`. Each segment
/// keeps the value at its start (`left`) and the left limit at its end
/// (`right`); the path is linear in between, constant when both agree.
/// The last segment is closed at `T` unless `t_m = T`, in which case the
/// last segment is a single point carrying `f(T)` after a jump at the
/// horizon.
///
/// Values are laid out flat, `dim` entries per segment.
#[derive(Debug, Clone, PartialEq)]
pub struct CadlagPath {
    horizon: f64,
    dim: usize,
    starts: Vec<f64>,
    lefts: Vec<f64>,
    rights: Vec<f64>,
}

impl CadlagPath {
    /// Builds a path from raw segment data and normalizes it.
    ///
    /// `lefts` and `rights` hold `dim` values per segment. Breakpoints closer
    /// than [`TIME_TOL`] are merged, adjacent constant segments with equal
    /// values are fused and a terminal point segment without a jump is
    /// dropped.
    pub fn from_segments(
        horizon: f64,
        dim: usize,
        starts: Vec<f64>,
        lefts: Vec<f64>,
        rights: Vec<f64>,
    ) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::InvalidPath(format!(
                "horizon must be positive and finite, got {horizon}"
            )));
        }
        if dim == 0 {
            return Err(Error::InvalidPath(
                "value dimension must be at least 1".into(),
            ));
        }
        if starts.is_empty() {
            return Err(Error::InvalidPath(
                "a path needs at least one segment".into(),
            ));
        }
        if lefts.len() != starts.len() * dim || rights.len() != starts.len() * dim {
            return Err(Error::InvalidPath(format!(
                "expected {} values per side for {} segments of dimension {dim}",
                starts.len() * dim,
                starts.len()
            )));
        }
        if let Some(v) = lefts.iter().chain(rights.iter()).find(|v| !v.is_finite()) {
            return Err(Error::InvalidPath(format!("non-finite value {v}")));
        }
        if starts[0].abs() > TIME_TOL {
            return Err(Error::InvalidPath(format!(
                "first breakpoint must be 0, got {}",
                starts[0]
            )));
        }
        for w in starts.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidPath(format!(
                    "breakpoints must be strictly increasing: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        let last = *starts.last().unwrap();
        if !last.is_finite() || last > horizon + TIME_TOL {
            return Err(Error::InvalidPath(format!(
                "breakpoint {last} beyond horizon {horizon}"
            )));
        }
        let mut path = CadlagPath {
            horizon,
            dim,
            starts,
            lefts,
            rights,
        };
        path.starts[0] = 0.0;
        path.normalize();
        Ok(path)
    }

    /// Scalar step path: `values[i]` holds on `[times[i], times[i+1])`, the
    /// last value up to and including the horizon (or only at the horizon
    /// when the last time equals it).
    pub fn step(horizon: f64, times: &[f64], values: &[f64]) -> Result<Self> {
        Self::step_vector(horizon, 1, times, values)
    }

    /// Step path with values in `R^dim`, `dim` entries per time.
    pub fn step_vector(horizon: f64, dim: usize, times: &[f64], values: &[f64]) -> Result<Self> {
        if dim == 0 || values.len() != times.len() * dim {
            return Err(Error::InvalidPath(format!(
                "step path needs {} values for {} times",
                times.len() * dim.max(1),
                times.len()
            )));
        }
        Self::from_segments(
            horizon,
            dim,
            times.to_vec(),
            values.to_vec(),
            values.to_vec(),
        )
    }

    /// Scalar piecewise-linear path through `(times[i], values[i])`.
    ///
    /// `times` must start at 0 and end at the horizon. Each entry of `jumps`
    /// is a `(t, left)` pair declaring a discontinuity at node `t`, where the
    /// path arrives at `left` and then takes the node value.
    pub fn piecewise_linear(
        horizon: f64,
        times: &[f64],
        values: &[f64],
        jumps: &[(f64, f64)],
    ) -> Result<Self> {
        let jumps: Vec<(f64, Vec<f64>)> = jumps.iter().map(|&(t, l)| (t, vec![l])).collect();
        Self::piecewise_linear_vector(horizon, 1, times, values, &jumps)
    }

    pub(crate) fn piecewise_linear_vector(
        horizon: f64,
        dim: usize,
        times: &[f64],
        values: &[f64],
        jumps: &[(f64, Vec<f64>)],
    ) -> Result<Self> {
        let n = times.len();
        if n < 2 {
            return Err(Error::InvalidPath(
                "piecewise-linear path needs at least two nodes".into(),
            ));
        }
        if values.len() != n * dim {
            return Err(Error::InvalidPath(format!(
                "expected {} node values, got {}",
                n * dim,
                values.len()
            )));
        }
        if (times[n - 1] - horizon).abs() > TIME_TOL {
            return Err(Error::InvalidPath(format!(
                "last node {} must equal the horizon {horizon}",
                times[n - 1]
            )));
        }
        let mut left_at: Vec<Option<&[f64]>> = vec![None; n];
        for (t, left) in jumps {
            if left.len() != dim {
                return Err(Error::InvalidPath(format!(
                    "jump at {t} has dimension {}",
                    left.len()
                )));
            }
            let idx = times
                .iter()
                .position(|x| x == t)
                .ok_or_else(|| Error::InvalidPath(format!("jump time {t} is not a node")))?;
            if idx == 0 {
                return Err(Error::InvalidPath("a path cannot jump at time 0".into()));
            }
            left_at[idx] = Some(left.as_slice());
        }
        let node = |i: usize| &values[i * dim..(i + 1) * dim];
        let mut starts = Vec::with_capacity(n);
        let mut lefts = Vec::with_capacity(n * dim);
        let mut rights = Vec::with_capacity(n * dim);
        for i in 0..n - 1 {
            starts.push(times[i]);
            lefts.extend_from_slice(node(i));
            rights.extend_from_slice(left_at[i + 1].unwrap_or(node(i + 1)));
        }
        if left_at[n - 1].is_some() {
            starts.push(times[n - 1]);
            lefts.extend_from_slice(node(n - 1));
            rights.extend_from_slice(node(n - 1));
        }
        Self::from_segments(horizon, dim, starts, lefts, rights)
    }

    /// The constant scalar path.
    pub fn constant(horizon: f64, value: f64) -> Result<Self> {
        Self::step(horizon, &[0.0], &[value])
    }

    /// The scalar indicator of `[a, b)` on `[0, T]`.
    ///
    /// An interval reaching the horizon (`b >= T`) includes it, so
    /// `indicator(1.0, 0.5, 1.0)` equals 1 at `t = 1` and has no jump there.
    pub fn indicator(horizon: f64, a: f64, b: f64) -> Result<Self> {
        if !(a < b) {
            return Err(Error::InvalidPath(format!(
                "empty indicator interval [{a}, {b})"
            )));
        }
        let a = a.max(0.0);
        let mut times = Vec::new();
        let mut values = Vec::new();
        if a > 0.0 {
            times.extend([0.0, a.min(horizon)]);
            values.extend([0.0, 1.0]);
        } else {
            times.push(0.0);
            values.push(1.0);
        }
        if b < horizon {
            times.push(b);
            values.push(0.0);
        }
        if a > horizon {
            return Self::constant(horizon, 0.0);
        }
        Self::step(horizon, &times, &values)
    }

    /// Stacks scalar or vector paths sharing a horizon into one path whose
    /// values are the concatenation of the components.
    pub fn stack(components: &[CadlagPath]) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::Empty("no components to stack".into()))?;
        let horizon = first.horizon;
        for c in components {
            if c.horizon != horizon {
                return Err(Error::HorizonMismatch(horizon, c.horizon));
            }
        }
        let mut times: Vec<f64> = components
            .iter()
            .flat_map(|c| c.starts.iter().copied())
            .collect();
        times.sort_by(f64::total_cmp);
        times.dedup();
        let dim: usize = components.iter().map(|c| c.dim).sum();
        let mut lefts = Vec::with_capacity(times.len() * dim);
        let mut rights = Vec::with_capacity(times.len() * dim);
        for (k, &t) in times.iter().enumerate() {
            let end = times.get(k + 1).copied().unwrap_or(horizon);
            for c in components {
                lefts.extend(c.value_unchecked(t));
                if t == horizon {
                    rights.extend(c.value_unchecked(t));
                } else {
                    rights.extend(c.left_limit_unchecked(end));
                }
            }
        }
        Self::from_segments(horizon, dim, times, lefts, rights)
    }

    /// The `c`-th coordinate as a scalar path.
    pub fn component(&self, c: usize) -> Result<Self> {
        if c >= self.dim {
            return Err(Error::InvalidParameter(format!(
                "component {c} of a {}-dimensional path",
                self.dim
            )));
        }
        let pick = |v: &[f64]| v.chunks(self.dim).map(|x| x[c]).collect::<Vec<_>>();
        Self::from_segments(
            self.horizon,
            1,
            self.starts.clone(),
            pick(&self.lefts),
            pick(&self.rights),
        )
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_scalar(&self) -> bool {
        self.dim == 1
    }

    /// Segment start times (the breakpoints).
    pub fn breakpoints(&self) -> &[f64] {
        &self.starts
    }

    pub fn n_segments(&self) -> usize {
        self.starts.len()
    }

    pub fn segment_start(&self, i: usize) -> f64 {
        self.starts[i]
    }

    /// End of segment `i`: the next breakpoint, or the horizon.
    pub fn segment_end(&self, i: usize) -> f64 {
        self.starts.get(i + 1).copied().unwrap_or(self.horizon)
    }

    /// Value at the start of segment `i`.
    pub fn segment_left(&self, i: usize) -> &[f64] {
        &self.lefts[i * self.dim..(i + 1) * self.dim]
    }

    /// Left limit at the end of segment `i`.
    pub fn segment_right(&self, i: usize) -> &[f64] {
        &self.rights[i * self.dim..(i + 1) * self.dim]
    }

    pub fn segment_is_constant(&self, i: usize) -> bool {
        self.segment_left(i) == self.segment_right(i)
    }

    /// Whether the last segment is the single point `{T}` after a jump at the horizon.
    pub fn has_terminal_jump(&self) -> bool {
        *self.starts.last().unwrap() == self.horizon
    }

    /// True when every segment is constant.
    pub fn is_step(&self) -> bool {
        (0..self.n_segments()).all(|i| self.segment_is_constant(i))
    }

    /// True when the path has no jumps.
    pub fn is_continuous(&self) -> bool {
        (1..self.n_segments()).all(|i| self.segment_right(i - 1) == self.segment_left(i))
    }

    /// Index of the segment holding `f(t)`: the last breakpoint `<= t`.
    pub(crate) fn segment_at(&self, t: f64) -> usize {
        self.starts.partition_point(|&s| s <= t).saturating_sub(1)
    }

    /// Index of the segment holding `f(t-)`: the last breakpoint `< t`.
    pub(crate) fn segment_before(&self, t: f64) -> usize {
        self.starts.partition_point(|&s| s < t).saturating_sub(1)
    }

    fn interpolate_into(&self, i: usize, t: f64, out: &mut Vec<f64>) {
        let l = self.segment_left(i);
        let r = self.segment_right(i);
        let s = self.starts[i];
        let e = self.segment_end(i);
        if t <= s || l == r {
            out.extend_from_slice(l);
        } else if t >= e {
            out.extend_from_slice(r);
        } else {
            let w = (t - s) / (e - s);
            out.extend(l.iter().zip(r).map(|(a, b)| a + (b - a) * w));
        }
    }

    fn interpolate_scalar(&self, i: usize, t: f64) -> f64 {
        let l = self.lefts[i * self.dim];
        let r = self.rights[i * self.dim];
        let s = self.starts[i];
        let e = self.segment_end(i);
        if t <= s || l == r {
            l
        } else if t >= e {
            r
        } else {
            l + (r - l) * ((t - s) / (e - s))
        }
    }

    fn check_closed(&self, t: f64) -> Result<()> {
        if t.is_nan() || t < 0.0 || t > self.horizon {
            return Err(Error::OutOfDomain {
                t,
                domain: format!("[0, {}]", self.horizon),
            });
        }
        Ok(())
    }

    /// The right-continuous value `f(t)` for `t` in `[0, T]`.
    pub fn eval(&self, t: f64) -> Result<Vec<f64>> {
        self.check_closed(t)?;
        Ok(self.value_unchecked(t))
    }

    /// The left limit `f(t-)` for `t` in `(0, T]`.
    pub fn left_limit(&self, t: f64) -> Result<Vec<f64>> {
        if t.is_nan() || t <= 0.0 || t > self.horizon {
            return Err(Error::OutOfDomain {
                t,
                domain: format!("(0, {}]", self.horizon),
            });
        }
        Ok(self.left_limit_unchecked(t))
    }

    pub(crate) fn value_unchecked(&self, t: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.dim);
        self.interpolate_into(self.segment_at(t), t, &mut out);
        out
    }

    pub(crate) fn left_limit_unchecked(&self, t: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.dim);
        self.interpolate_into(self.segment_before(t), t, &mut out);
        out
    }

    /// `f(t)` for a scalar path; `t` is clamped to `[0, T]`.
    pub fn value(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, self.horizon);
        self.interpolate_scalar(self.segment_at(t), t)
    }

    /// `f(t-)` for a scalar path; at `t = 0` this returns `f(0)`.
    pub fn left_value(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, self.horizon);
        if t == 0.0 {
            return self.lefts[0];
        }
        self.interpolate_scalar(self.segment_before(t), t)
    }

    /// All discontinuities in increasing time order, including one at the horizon.
    pub fn jumps(&self) -> Vec<Jump> {
        (1..self.n_segments())
            .filter(|&i| self.segment_right(i - 1) != self.segment_left(i))
            .map(|i| Jump {
                time: self.starts[i],
                left: self.segment_right(i - 1).to_vec(),
                right: self.segment_left(i).to_vec(),
            })
            .collect()
    }

    /// Jump times strictly inside `(0, T)`.
    pub fn interior_jump_times(&self) -> Vec<f64> {
        (1..self.n_segments())
            .filter(|&i| {
                self.starts[i] < self.horizon && self.segment_right(i - 1) != self.segment_left(i)
            })
            .map(|i| self.starts[i])
            .collect()
    }

    /// The restriction to `[0, T']`, with value `f(T')` at the new horizon.
    pub fn restrict(&self, new_horizon: f64) -> Result<Self> {
        if !(new_horizon > 0.0 && new_horizon <= self.horizon) {
            return Err(Error::OutOfDomain {
                t: new_horizon,
                domain: format!("(0, {}]", self.horizon),
            });
        }
        if new_horizon == self.horizon {
            return Ok(self.clone());
        }
        let k = self.segment_before(new_horizon);
        let mut starts = self.starts[..=k].to_vec();
        let mut lefts = self.lefts[..(k + 1) * self.dim].to_vec();
        let mut rights = self.rights[..k * self.dim].to_vec();
        rights.extend(self.left_limit_unchecked(new_horizon));
        let at = self.value_unchecked(new_horizon);
        if at.as_slice() != &rights[k * self.dim..] {
            starts.push(new_horizon);
            lefts.extend_from_slice(&at);
            rights.extend_from_slice(&at);
        }
        Self::from_segments(new_horizon, self.dim, starts, lefts, rights)
    }

    /// `max_t max_c |f_c(t)|`.
    pub fn sup_norm(&self) -> f64 {
        self.lefts
            .iter()
            .chain(&self.rights)
            .fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Shared horizon and dimension check used by binary operations.
    pub(crate) fn check_compatible(&self, other: &CadlagPath) -> Result<()> {
        if self.horizon != other.horizon {
            return Err(Error::HorizonMismatch(self.horizon, other.horizon));
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    fn normalize(&mut self) {
        let d = self.dim;
        let t_end = self.horizon;
        for s in self.starts.iter_mut() {
            if (*s - t_end).abs() <= TIME_TOL {
                *s = t_end;
            }
        }
        let n = self.starts.len();
        let mut starts: Vec<f64> = Vec::with_capacity(n);
        let mut lefts: Vec<f64> = Vec::with_capacity(n * d);
        let mut rights: Vec<f64> = Vec::with_capacity(n * d);
        for i in 0..n {
            let s = self.starts[i];
            let l = &self.lefts[i * d..(i + 1) * d];
            let r = &self.rights[i * d..(i + 1) * d];
            let end = self.starts.get(i + 1).copied().unwrap_or(t_end);
            // a segment shorter than the tolerance is absorbed by its successor
            if end - s < TIME_TOL && i + 1 < n {
                if starts.is_empty() || self.starts[i + 1] < t_end {
                    self.starts[i + 1] = s;
                }
                continue;
            }
            starts.push(s);
            lefts.extend_from_slice(l);
            if s == t_end {
                rights.extend_from_slice(l);
            } else {
                rights.extend_from_slice(r);
            }
        }
        // drop a terminal point that carries no jump
        let m = starts.len();
        if m >= 2
            && starts[m - 1] == t_end
            && lefts[(m - 1) * d..] == rights[(m - 2) * d..(m - 1) * d]
        {
            starts.pop();
            lefts.truncate((m - 1) * d);
            rights.truncate((m - 1) * d);
        }
        // fuse equal adjacent constants
        let mut out_s: Vec<f64> = Vec::with_capacity(starts.len());
        let mut out_l: Vec<f64> = Vec::with_capacity(lefts.len());
        let mut out_r: Vec<f64> = Vec::with_capacity(rights.len());
        for i in 0..starts.len() {
            let l = &lefts[i * d..(i + 1) * d];
            let r = &rights[i * d..(i + 1) * d];
            if let Some(&prev_start) = out_s.last() {
                let k = out_s.len() - 1;
                let pl = &out_l[k * d..(k + 1) * d];
                let pr = &out_r[k * d..(k + 1) * d];
                let prev_const = pl == pr;
                if prev_const && l == r && pl == l && starts[i] < t_end && prev_start < t_end {
                    continue;
                }
            }
            out_s.push(starts[i]);
            out_l.extend_from_slice(l);
            out_r.extend_from_slice(r);
        }
        self.starts = out_s;
        self.lefts = out_l;
        self.rights = out_r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_step() -> CadlagPath {
        CadlagPath::indicator(1.0, 0.5, 1.0).unwrap()
    }

    #[test]
    fn eval_respects_right_continuity() {
        let f = half_step();
        assert_eq!(f.eval(0.5).unwrap(), vec![1.0]);
        assert_eq!(f.eval(0.499).unwrap(), vec![0.0]);
        assert_eq!(f.eval(1.0).unwrap(), vec![1.0]);
        let id = CadlagPath::piecewise_linear(1.0, &[0.0, 1.0], &[0.0, 1.0], &[]).unwrap();
        assert_eq!(id.eval(0.3).unwrap(), vec![0.3]);
    }

    #[test]
    fn eval_rejects_times_outside_horizon() {
        let f = half_step();
        assert!(matches!(f.eval(-0.1), Err(Error::OutOfDomain { .. })));
        assert!(matches!(f.eval(1.5), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn left_limits() {
        let f = half_step();
        assert_eq!(f.left_limit(0.5).unwrap(), vec![0.0]);
        assert_eq!(f.left_limit(0.75).unwrap(), vec![1.0]);
        assert_eq!(f.left_limit(1.0).unwrap(), vec![1.0]);
        assert!(f.left_limit(0.0).is_err());
    }

    #[test]
    fn jumps_are_listed_in_order() {
        let f = half_step();
        assert_eq!(
            f.jumps(),
            vec![Jump {
                time: 0.5,
                left: vec![0.0],
                right: vec![1.0]
            }]
        );
        let id = CadlagPath::piecewise_linear(1.0, &[0.0, 1.0], &[0.0, 1.0], &[]).unwrap();
        assert!(id.jumps().is_empty());
        let n = 10.0;
        let stair = CadlagPath::step(1.0, &[0.0, 0.5 - 1.0 / n, 0.5], &[0.0, 0.5, 1.0]).unwrap();
        let js = stair.jumps();
        assert_eq!(js.len(), 2);
        assert!(js
            .iter()
            .all(|j| (j.right[0] - j.left[0] - 0.5).abs() < 1e-15));
    }

    #[test]
    fn normalization_fuses_and_drops() {
        let f = CadlagPath::step(1.0, &[0.0, 0.3, 0.6, 1.0], &[1.0, 1.0, 2.0, 2.0]).unwrap();
        assert_eq!(f.breakpoints(), &[0.0, 0.6]);
        let g = CadlagPath::step(1.0, &[0.0, 0.5, 0.5 + 1e-12], &[0.0, 3.0, 1.0]).unwrap();
        assert_eq!(g.breakpoints(), &[0.0, 0.5]);
        assert_eq!(g.value(0.7), 1.0);
    }

    #[test]
    fn terminal_jump_is_kept() {
        let f = CadlagPath::step(1.0, &[0.0, 1.0], &[0.0, 1.0]).unwrap();
        assert!(f.has_terminal_jump());
        assert_eq!(f.left_limit(1.0).unwrap(), vec![0.0]);
        assert_eq!(f.eval(1.0).unwrap(), vec![1.0]);
        assert_eq!(f.jumps().len(), 1);
        assert!(f.interior_jump_times().is_empty());
    }

    #[test]
    fn restriction_cases() {
        let f = half_step();
        assert_eq!(f.restrict(1.0).unwrap(), f);
        // the endpoint pathology: the jump lands on the new horizon
        let g = CadlagPath::indicator(2.0, 1.0, f64::INFINITY).unwrap();
        let r = g.restrict(1.0).unwrap();
        assert!(r.has_terminal_jump());
        assert_eq!(r.left_limit(1.0).unwrap(), vec![0.0]);
        assert_eq!(r.eval(1.0).unwrap(), vec![1.0]);
        let h = CadlagPath::indicator(2.0, 1.0 + 1.0 / 7.0, f64::INFINITY).unwrap();
        assert_eq!(
            h.restrict(1.0).unwrap(),
            CadlagPath::constant(1.0, 0.0).unwrap()
        );
        assert!(f.restrict(0.0).is_err());
        assert!(f.restrict(1.5).is_err());
    }

    #[test]
    fn restriction_of_linear_segment_interpolates() {
        let f = CadlagPath::piecewise_linear(2.0, &[0.0, 2.0], &[0.0, 2.0], &[]).unwrap();
        let r = f.restrict(0.5).unwrap();
        assert_eq!(r.eval(0.5).unwrap(), vec![0.5]);
        assert!(r.is_continuous());
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(CadlagPath::step(1.0, &[0.1], &[1.0]).is_err());
        assert!(CadlagPath::step(1.0, &[0.0, 0.5, 0.4], &[1.0, 2.0, 3.0]).is_err());
        assert!(CadlagPath::step(1.0, &[0.0, 1.5], &[1.0, 2.0]).is_err());
        assert!(CadlagPath::step(0.0, &[0.0], &[1.0]).is_err());
        assert!(CadlagPath::step(1.0, &[0.0], &[f64::NAN]).is_err());
        assert!(CadlagPath::piecewise_linear(1.0, &[0.0, 0.5], &[0.0, 1.0], &[]).is_err());
        assert!(
            CadlagPath::piecewise_linear(1.0, &[0.0, 1.0], &[0.0, 1.0], &[(0.3, 1.0)]).is_err()
        );
    }

    #[test]
    fn stack_and_component_round_trip() {
        let a = CadlagPath::indicator(1.0, 0.3, 1.0).unwrap();
        let b = CadlagPath::indicator(1.0, 0.5, 1.0).unwrap();
        let v = CadlagPath::stack(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(v.dim(), 2);
        assert_eq!(v.eval(0.4).unwrap(), vec![1.0, 0.0]);
        assert_eq!(v.component(0).unwrap(), a);
        assert_eq!(v.component(1).unwrap(), b);
        assert_eq!(v.jumps().len(), 2);
    }
}
