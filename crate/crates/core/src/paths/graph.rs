use super::CadlagPath;
use crate::{Error, Result};

/// The completed graph of a scalar path: its graph together with the
/// vertical segments joining `f(t-)` to `f(t)` at every jump, stored as a
/// polyline whose vertices follow the graph order.
#[derive(Debug, Clone, PartialEq)]
pub struct CompletedGraph {
    horizon: f64,
    vertices: Vec<(f64, f64)>,
}

impl CompletedGraph {
    pub fn new(path: &CadlagPath) -> Result<Self> {
        if !path.is_scalar() {
            return Err(Error::NotScalar(path.dim()));
        }
        let mut vertices: Vec<(f64, f64)> = vec![(0.0, path.segment_left(0)[0])];
        let push = |v: (f64, f64), vs: &mut Vec<(f64, f64)>| {
            if vs.last() != Some(&v) {
                vs.push(v);
            }
        };
        let n = path.n_segments();
        for i in 0..n {
            if i > 0 {
                push(
                    (path.segment_start(i), path.segment_left(i)[0]),
                    &mut vertices,
                );
            }
            let end = path.segment_end(i);
            if path.segment_start(i) < end {
                push((end, path.segment_right(i)[0]), &mut vertices);
            }
        }
        Ok(CompletedGraph {
            horizon: path.horizon(),
            vertices,
        })
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    /// Vertical segments `(t, from, to)`, one per jump.
    pub fn vertical_segments(&self) -> Vec<(f64, f64, f64)> {
        self.vertices
            .windows(2)
            .filter(|w| w[0].0 == w[1].0)
            .map(|w| (w[0].0, w[0].1, w[1].1))
            .collect()
    }

    /// Checks the graph order: times nondecreasing, and at a repeated time
    /// the distance from the first vertex there (the left limit) nondecreasing.
    pub fn is_ordered(&self) -> bool {
        let mut anchor = self.vertices[0];
        for w in self.vertices.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b.0 < a.0 {
                return false;
            }
            if b.0 > a.0 {
                anchor = b;
                continue;
            }
            if (b.1 - anchor.1).abs() < (a.1 - anchor.1).abs() {
                return false;
            }
        }
        true
    }

    /// Rebuilds the path by reading left limits and right values off the polyline.
    pub fn to_path(&self) -> Result<CadlagPath> {
        // group vertices by time: the first z at a time is f(t-), the last is f(t)
        let mut groups: Vec<(f64, f64, f64)> = Vec::new();
        for &(t, z) in &self.vertices {
            match groups.last_mut() {
                Some(g) if g.0 == t => g.2 = z,
                _ => groups.push((t, z, z)),
            }
        }
        let mut starts = Vec::new();
        let mut lefts = Vec::new();
        let mut rights = Vec::new();
        for k in 0..groups.len() {
            let (t, _, right) = groups[k];
            match groups.get(k + 1) {
                Some(&(_, next_left, _)) => {
                    starts.push(t);
                    lefts.push(right);
                    rights.push(next_left);
                }
                None if groups.len() == 1 || t == self.horizon && groups[k].1 != right => {
                    starts.push(t);
                    lefts.push(right);
                    rights.push(right);
                }
                None => {}
            }
        }
        CadlagPath::from_segments(self.horizon, 1, starts, lefts, rights)
    }

    /// Euclidean length of the polyline in the `(t, z)` plane.
    pub fn length(&self) -> f64 {
        self.vertices.windows(2).map(|w| dist(w[0], w[1])).sum()
    }

    /// Refines the polyline to at least `resolution` points by uniform
    /// arc-length fill, keeping every original vertex.
    pub fn densify(&self, resolution: usize) -> Vec<(f64, f64)> {
        let total = self.length();
        if self.vertices.len() >= resolution || total == 0.0 || resolution < 2 {
            return self.vertices.clone();
        }
        let pitch = total / (resolution - 1) as f64;
        let mut out = Vec::with_capacity(resolution + self.vertices.len());
        out.push(self.vertices[0]);
        for w in self.vertices.windows(2) {
            let (a, b) = (w[0], w[1]);
            let pieces = (dist(a, b) / pitch).ceil().max(1.0) as usize;
            for k in 1..pieces {
                let r = k as f64 / pieces as f64;
                out.push((a.0 + (b.0 - a.0) * r, a.1 + (b.1 - a.1) * r));
            }
            out.push(b);
        }
        out
    }
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}
