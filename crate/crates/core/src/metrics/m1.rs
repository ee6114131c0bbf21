//! The M1 distance between completed graphs.
//!
//! A coupling of two completed graphs traverses both in graph order; its
//! cost is the largest time gap plus the largest value gap between
//! simultaneously visited points. The distance is the infimum over
//! couplings.
//!
//! For graphs built from horizontal and vertical segments (step paths) the
//! infimum is computed exactly: feasibility of a pair of gap bounds
//! `(alpha, beta)` is decided on the free-space diagram of the two
//! polylines, and the optimal pair lies among finitely many critical
//! values. Other paths are densified and coupled vertex by vertex.

use serde::{Deserialize, Serialize};

use super::threshold::{minimize_sum, sorted_unique};
use super::{DistanceReport, Witness};
use crate::paths::{CadlagPath, CompletedGraph};
use crate::{Error, Result};

/// Points per graph used by [`m1_oracle`]; graphs with more vertices are rejected.
pub const M1_ORACLE_POINTS: usize = 20;

type Point = (f64, f64);

/// A monotone coupling, listed as simultaneously visited points
/// `[t_f, z_f, t_g, z_g]`. Between consecutive entries both graphs move
/// linearly, so the gaps along the way never exceed those at the entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coupling {
    pub pairs: Vec<[f64; 4]>,
}

impl Coupling {
    pub fn time_gap(&self) -> f64 {
        self.pairs
            .iter()
            .fold(0.0, |m, p| m.max((p[0] - p[2]).abs()))
    }

    pub fn value_gap(&self) -> f64 {
        self.pairs
            .iter()
            .fold(0.0, |m, p| m.max((p[1] - p[3]).abs()))
    }

    /// Time gap plus value gap: the M1 objective at this coupling.
    pub fn objective(&self) -> f64 {
        self.time_gap() + self.value_gap()
    }
}

/// M1 distance between two scalar paths.
///
/// Exact when both completed graphs consist of horizontal and vertical
/// segments; otherwise both graphs are densified to at least `resolution`
/// points and the reported value is the optimum over vertex couplings, an
/// upper bound that exceeds the true distance by at most `error_bound`.
pub fn m1_distance(f: &CadlagPath, g: &CadlagPath, resolution: usize) -> Result<DistanceReport> {
    f.check_compatible(g)?;
    let gf = CompletedGraph::new(f)?;
    let gg = CompletedGraph::new(g)?;
    let (p, q) = (gf.vertices(), gg.vertices());
    if axis_aligned(p) && axis_aligned(q) {
        let (value, coupling) = exact_axis_aligned(p, q);
        return Ok(DistanceReport::exact(value, Witness::Coupling { coupling }));
    }
    let p = gf.densify(resolution);
    let q = gg.densify(resolution);
    let (value, cells) = discrete_m1(&p, &q);
    let coupling = Coupling {
        pairs: cells
            .iter()
            .map(|&(i, j)| [p[i].0, p[i].1, q[j].0, q[j].1])
            .collect(),
    };
    let bound = max_step(&p) + max_step(&q);
    Ok(DistanceReport::discretized(
        value,
        Witness::Coupling { coupling },
        bound,
    ))
}

/// Brute-force M1 on small graphs: both completed graphs are densified to
/// [`M1_ORACLE_POINTS`] points and every monotone vertex coupling is
/// accounted for through the Pareto frontier of (time gap, value gap).
pub fn m1_oracle(f: &CadlagPath, g: &CadlagPath) -> Result<DistanceReport> {
    f.check_compatible(g)?;
    let gf = CompletedGraph::new(f)?;
    let gg = CompletedGraph::new(g)?;
    if gf.vertices().len() > M1_ORACLE_POINTS || gg.vertices().len() > M1_ORACLE_POINTS {
        return Err(Error::SizeLimit(format!(
            "graphs with {} and {} vertices exceed the oracle limit of {M1_ORACLE_POINTS}",
            gf.vertices().len(),
            gg.vertices().len()
        )));
    }
    let p = gf.densify(M1_ORACLE_POINTS);
    let q = gg.densify(M1_ORACLE_POINTS);
    let value = pareto_m1(&p, &q);
    Ok(DistanceReport::discretized(
        value,
        Witness::None,
        max_step(&p) + max_step(&q),
    ))
}

fn axis_aligned(v: &[Point]) -> bool {
    v.windows(2).all(|w| w[0].0 == w[1].0 || w[0].1 == w[1].1)
}

/// Largest `|dt| + |dz|` between consecutive vertices.
fn max_step(v: &[Point]) -> f64 {
    v.windows(2).fold(0.0, |m, w| {
        m.max((w[1].0 - w[0].0).abs() + (w[1].1 - w[0].1).abs())
    })
}

/// Optimal vertex coupling of two polylines: minimizes the largest time
/// gap plus the largest value gap over monotone couplings of their vertex
/// sequences. Returns the value and the coupled index pairs.
pub fn discrete_m1(p: &[Point], q: &[Point]) -> (f64, Vec<(usize, usize)>) {
    let (ni, nj) = (p.len(), q.len());
    let dt: Vec<f64> = (0..ni * nj)
        .map(|k| (p[k / nj].0 - q[k % nj].0).abs())
        .collect();
    let dz: Vec<f64> = (0..ni * nj)
        .map(|k| (p[k / nj].1 - q[k % nj].1).abs())
        .collect();
    let bottleneck = |alpha: f64| -> Vec<f64> {
        let mut dp = vec![f64::INFINITY; ni * nj];
        for i in 0..ni {
            for j in 0..nj {
                let k = i * nj + j;
                if dt[k] > alpha {
                    continue;
                }
                let before = if i == 0 && j == 0 {
                    0.0
                } else {
                    let mut m = f64::INFINITY;
                    if i > 0 && j > 0 {
                        m = m.min(dp[k - nj - 1]);
                    }
                    if i > 0 {
                        m = m.min(dp[k - nj]);
                    }
                    if j > 0 {
                        m = m.min(dp[k - 1]);
                    }
                    m
                };
                dp[k] = dz[k].max(before);
            }
        }
        dp
    };
    let alphas = sorted_unique(dt.clone());
    let (k, value, _) = minimize_sum(&alphas, |k| bottleneck(alphas[k])[ni * nj - 1]);
    let dp = bottleneck(alphas[k]);
    let mut cells = vec![(ni - 1, nj - 1)];
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
        cells.push((i, j));
    }
    cells.reverse();
    (value, cells)
}

/// Same optimum as [`discrete_m1`], computed by carrying the full Pareto
/// frontier of (time gap, value gap) over all monotone couplings.
pub fn pareto_m1(p: &[Point], q: &[Point]) -> f64 {
    let (ni, nj) = (p.len(), q.len());
    let mut fronts: Vec<Vec<(f64, f64)>> = vec![Vec::new(); ni * nj];
    for i in 0..ni {
        for j in 0..nj {
            let here = ((p[i].0 - q[j].0).abs(), (p[i].1 - q[j].1).abs());
            let mut cand: Vec<(f64, f64)> = Vec::new();
            if i == 0 && j == 0 {
                cand.push(here);
            }
            let preds = [
                (i > 0 && j > 0, (i.wrapping_sub(1), j.wrapping_sub(1))),
                (i > 0, (i.wrapping_sub(1), j)),
                (j > 0, (i, j.wrapping_sub(1))),
            ];
            for (ok, (pi, pj)) in preds {
                if ok {
                    cand.extend(
                        fronts[pi * nj + pj]
                            .iter()
                            .map(|&(a, b)| (a.max(here.0), b.max(here.1))),
                    );
                }
            }
            fronts[i * nj + j] = pareto(cand);
        }
    }
    fronts[ni * nj - 1]
        .iter()
        .map(|&(a, b)| a + b)
        .fold(f64::INFINITY, f64::min)
}

fn pareto(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut out: Vec<(f64, f64)> = Vec::new();
    for p in pts {
        if out.last().is_none_or(|l| p.1 < l.1) {
            out.push(p);
        }
    }
    out
}

type Interval = Option<(f64, f64)>;

/// `{phi in [0, 1] : |a - phi e| <= r}`.
fn solve(a: f64, e: f64, r: f64) -> Interval {
    if e == 0.0 {
        return if a.abs() <= r { Some((0.0, 1.0)) } else { None };
    }
    let (x, y) = ((a - r) / e, (a + r) / e);
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    let (lo, hi) = (lo.max(0.0), hi.min(1.0));
    (lo <= hi).then_some((lo, hi))
}

fn meet(x: Interval, y: Interval) -> Interval {
    let (a, b) = (x?, y?);
    let (lo, hi) = (a.0.max(b.0), a.1.min(b.1));
    (lo <= hi).then_some((lo, hi))
}

/// Free-space reachability for the gap bounds `(alpha, beta)`.
struct FreeSpace {
    n: usize,
    m: usize,
    /// reachable part of the edge `x = i`, `y in [j, j + 1]`; index `i * m + j`
    left: Vec<Interval>,
    /// reachable part of the edge `y = j`, `x in [i, i + 1]`; index `i * (m + 1) + j`
    bottom: Vec<Interval>,
    feasible: bool,
}

impl FreeSpace {
    fn new(p: &[Point], q: &[Point], alpha: f64, beta: f64) -> Self {
        let (n, m) = (p.len() - 1, q.len() - 1);
        // vertex p[i] against segment q[j] -> q[j+1]
        let vs = |i: usize, j: usize| -> Interval {
            let (a0, a1) = (p[i].0 - q[j].0, p[i].1 - q[j].1);
            let (e0, e1) = (q[j + 1].0 - q[j].0, q[j + 1].1 - q[j].1);
            meet(solve(a0, e0, alpha), solve(a1, e1, beta))
        };
        // segment p[i] -> p[i+1] against vertex q[j]
        let sv = |i: usize, j: usize| -> Interval {
            let (a0, a1) = (p[i].0 - q[j].0, p[i].1 - q[j].1);
            let (d0, d1) = (p[i + 1].0 - p[i].0, p[i + 1].1 - p[i].1);
            meet(solve(a0, -d0, alpha), solve(a1, -d1, beta))
        };
        let mut left: Vec<Interval> = vec![None; (n + 1) * m];
        let mut bottom: Vec<Interval> = vec![None; n * (m + 1)];
        let start = (p[0].0 - q[0].0).abs() <= alpha && (p[0].1 - q[0].1).abs() <= beta;
        if !start {
            return FreeSpace {
                n,
                m,
                left,
                bottom,
                feasible: false,
            };
        }
        let mut open = true;
        for j in 0..m {
            left[j] = if open {
                vs(0, j).filter(|iv| iv.0 == 0.0)
            } else {
                None
            };
            open = left[j].is_some_and(|iv| iv.1 == 1.0);
        }
        let mut open = true;
        for i in 0..n {
            bottom[i * (m + 1)] = if open {
                sv(i, 0).filter(|iv| iv.0 == 0.0)
            } else {
                None
            };
            open = bottom[i * (m + 1)].is_some_and(|iv| iv.1 == 1.0);
        }
        for i in 0..n {
            for j in 0..m {
                let l = left[i * m + j];
                let b = bottom[i * (m + 1) + j];
                left[(i + 1) * m + j] = match (b, l) {
                    (Some(_), _) => vs(i + 1, j),
                    (None, Some(l)) => meet(vs(i + 1, j), Some((l.0, 1.0))),
                    (None, None) => None,
                };
                bottom[i * (m + 1) + j + 1] = match (l, b) {
                    (Some(_), _) => sv(i, j + 1),
                    (None, Some(b)) => meet(sv(i, j + 1), Some((b.0, 1.0))),
                    (None, None) => None,
                };
            }
        }
        let feasible = left[n * m + m - 1].is_some_and(|iv| iv.1 == 1.0)
            || bottom[(n - 1) * (m + 1) + m].is_some_and(|iv| iv.1 == 1.0);
        FreeSpace {
            n,
            m,
            left,
            bottom,
            feasible,
        }
    }

    /// A monotone path through the free space from `(0, 0)` to `(n, m)`,
    /// as a list of parameter points.
    fn path(&self) -> Vec<(f64, f64)> {
        let mut pts = vec![(self.n as f64, self.m as f64)];
        // the current point lies on the top or right edge of cell (i, j)
        let (mut i, mut j) = (self.n - 1, self.m - 1);
        let (mut fx, mut fy) = (1.0, 1.0);
        loop {
            let l = self.left[i * self.m + j];
            let b = self.bottom[i * (self.m + 1) + j];
            match (l, b) {
                (Some(l), _) if l.0 <= fy => {
                    fy = fy.min(l.1);
                    pts.push((i as f64, j as f64 + fy));
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    fx = 1.0;
                }
                (_, Some(b)) if b.0 <= fx => {
                    fx = fx.min(b.1);
                    pts.push((i as f64 + fx, j as f64));
                    if j == 0 {
                        break;
                    }
                    j -= 1;
                    fy = 1.0;
                }
                _ => unreachable!("free-space path lost at cell ({i}, {j})"),
            }
        }
        // the boundary edges below the last point are free from the origin on
        if pts.last() != Some(&(0.0, 0.0)) {
            pts.push((0.0, 0.0));
        }
        pts.reverse();
        pts
    }
}

fn point_at(v: &[Point], x: f64) -> Point {
    let k = (x.floor() as usize).min(v.len() - 2);
    let r = x - k as f64;
    if r == 0.0 {
        return v[k];
    }
    if r == 1.0 {
        return v[k + 1];
    }
    (
        v[k].0 + (v[k + 1].0 - v[k].0) * r,
        v[k].1 + (v[k + 1].1 - v[k].1) * r,
    )
}

/// Exact M1 for polylines with horizontal and vertical segments only.
///
/// For such polylines the two gap constraints act on separate coordinates,
/// so feasibility can only change at time gaps between vertices, at value
/// gaps between vertices, and at half value gaps between two vertices of
/// the same polyline (where a vertical segment must serve both). The
/// optimal pair of bounds is searched over these candidates.
fn exact_axis_aligned(p: &[Point], q: &[Point]) -> (f64, Coupling) {
    if p.len() < 2 || q.len() < 2 {
        // a degenerate graph has a single point; pad it so the diagram has a cell
        let pad = |v: &[Point]| {
            if v.len() < 2 {
                vec![v[0], v[0]]
            } else {
                v.to_vec()
            }
        };
        return exact_axis_aligned(&pad(p), &pad(q));
    }
    let mut alphas = vec![0.0];
    let mut betas = vec![0.0];
    for a in p {
        for b in q {
            alphas.push((a.0 - b.0).abs());
            betas.push((a.1 - b.1).abs());
        }
    }
    for v in [p, q] {
        for k in 0..v.len() {
            for l in k + 1..v.len() {
                betas.push((v[k].1 - v[l].1).abs() / 2.0);
            }
        }
    }
    let alphas = sorted_unique(alphas);
    let betas = sorted_unique(betas);
    // a tiny slack absorbs rounding in the interval endpoints
    let scale = p
        .iter()
        .chain(q)
        .fold(1.0f64, |m, v| m.max(v.0.abs()).max(v.1.abs()));
    let slack = 1e-12 * scale;
    let decide = |a: f64, b: f64| FreeSpace::new(p, q, a + slack, b + slack);
    let min_beta = |a: f64| -> f64 {
        if !decide(a, *betas.last().unwrap()).feasible {
            return f64::INFINITY;
        }
        let k = betas.partition_point(|&b| !decide(a, b).feasible);
        betas[k]
    };
    let (k, value, beta) = minimize_sum(&alphas, |k| min_beta(alphas[k]));
    let fs = decide(alphas[k], beta);
    let pairs = fs
        .path()
        .into_iter()
        .map(|(x, y)| {
            let a = point_at(p, x);
            let b = point_at(q, y);
            [a.0, a.1, b.0, b.1]
        })
        .collect();
    (value, Coupling { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn staircase(n: f64) -> CadlagPath {
        CadlagPath::step(1.0, &[0.0, 0.5 - 1.0 / n, 0.5], &[0.0, 0.5, 1.0]).unwrap()
    }

    fn ind(a: f64) -> CadlagPath {
        CadlagPath::indicator(1.0, a, 1.0).unwrap()
    }

    #[test]
    fn staircase_converges_at_rate_one_over_n() {
        for n in [3.0, 5.0, 10.0, 40.0] {
            let r = m1_distance(&staircase(n), &ind(0.5), 2000).unwrap();
            assert!((r.value - 1.0 / n).abs() < 1e-12, "n={n}: {}", r.value);
            let Witness::Coupling { coupling } = &r.witness else {
                panic!()
            };
            assert!(
                (coupling.objective() - r.value).abs() < 1e-9,
                "{} vs {}",
                coupling.objective(),
                r.value
            );
        }
    }

    #[test]
    fn shifted_jump_costs_the_shift() {
        for n in [3.0, 7.0, 20.0] {
            let r = m1_distance(&ind(0.5 - 1.0 / n), &ind(0.5), 100).unwrap();
            assert!((r.value - 1.0 / n).abs() < 1e-12);
        }
    }

    #[test]
    fn identical_paths_are_at_distance_zero() {
        let f = CadlagPath::step(1.0, &[0.0, 0.3, 0.6], &[1.0, -1.0, 0.5]).unwrap();
        assert_eq!(m1_distance(&f, &f, 100).unwrap().value, 0.0);
        let l = CadlagPath::piecewise_linear(1.0, &[0.0, 0.5, 1.0], &[0.0, 1.0, 0.0], &[]).unwrap();
        assert_eq!(m1_distance(&l, &l, 100).unwrap().value, 0.0);
        assert_eq!(m1_oracle(&f, &f).unwrap().value, 0.0);
    }

    #[test]
    fn pareto_and_threshold_agree() {
        let p = [
            (0.0, 0.0),
            (0.3, 0.0),
            (0.3, 1.0),
            (0.6, 1.0),
            (0.6, 0.2),
            (1.0, 0.2),
        ];
        let q = [(0.0, 0.1), (0.45, 0.1), (0.45, 0.9), (1.0, 0.9)];
        let (v, cells) = discrete_m1(&p, &q);
        assert_eq!(v, pareto_m1(&p, &q));
        assert_eq!(cells.first(), Some(&(0, 0)));
        assert_eq!(cells.last(), Some(&(p.len() - 1, q.len() - 1)));
    }

    #[test]
    fn non_scalar_is_rejected() {
        let f = CadlagPath::stack(&[ind(0.5), ind(0.5)]).unwrap();
        assert!(matches!(m1_distance(&f, &f, 10), Err(Error::NotScalar(2))));
    }

    #[test]
    fn oracle_rejects_large_graphs() {
        let times: Vec<f64> = (0..15).map(|k| k as f64 / 15.0).collect();
        let vals: Vec<f64> = (0..15).map(|k| (k % 2) as f64).collect();
        let f = CadlagPath::step(1.0, &times, &vals).unwrap();
        assert!(matches!(m1_oracle(&f, &f), Err(Error::SizeLimit(_))));
    }
}
