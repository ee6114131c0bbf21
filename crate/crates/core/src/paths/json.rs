use serde::{Deserialize, Serialize};

use super::CadlagPath;
use crate::{Error, Result};

/// On-disk form of a path.
///
/// `"step"`: `values[i]` holds on `[times[i], times[i+1])`.
/// `"pl"`: `values` are node values joined linearly; `times` runs from 0 to
/// the horizon, and `jumps` lists nodes where the path arrives at `left`
/// before taking the node value. Scalar values are plain numbers, vector
/// values are arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathJson {
    pub horizon: f64,
    pub kind: PathKind,
    pub times: Vec<f64>,
    pub values: Vec<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub jumps: Vec<JumpJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathKind {
    Step,
    Pl,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Scalar(f64),
    Vector(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JumpJson {
    pub t: f64,
    pub left: Value,
}

impl Value {
    fn from_slice(v: &[f64]) -> Self {
        if v.len() == 1 {
            Value::Scalar(v[0])
        } else {
            Value::Vector(v.to_vec())
        }
    }

    fn as_slice(&self) -> &[f64] {
        match self {
            Value::Scalar(x) => std::slice::from_ref(x),
            Value::Vector(v) => v,
        }
    }
}

impl From<&CadlagPath> for PathJson {
    fn from(p: &CadlagPath) -> Self {
        let n = p.n_segments();
        if p.is_step() {
            return PathJson {
                horizon: p.horizon(),
                kind: PathKind::Step,
                times: p.breakpoints().to_vec(),
                values: (0..n)
                    .map(|i| Value::from_slice(p.segment_left(i)))
                    .collect(),
                jumps: Vec::new(),
            };
        }
        let body = if p.has_terminal_jump() { n - 1 } else { n };
        let mut times: Vec<f64> = p.breakpoints()[..body].to_vec();
        let mut values: Vec<Value> = (0..body)
            .map(|i| Value::from_slice(p.segment_left(i)))
            .collect();
        let mut jumps: Vec<JumpJson> = (1..body)
            .filter(|&i| p.segment_right(i - 1) != p.segment_left(i))
            .map(|i| JumpJson {
                t: p.segment_start(i),
                left: Value::from_slice(p.segment_right(i - 1)),
            })
            .collect();
        times.push(p.horizon());
        if p.has_terminal_jump() {
            values.push(Value::from_slice(p.segment_left(n - 1)));
            jumps.push(JumpJson {
                t: p.horizon(),
                left: Value::from_slice(p.segment_right(n - 2)),
            });
        } else {
            values.push(Value::from_slice(p.segment_right(n - 1)));
        }
        PathJson {
            horizon: p.horizon(),
            kind: PathKind::Pl,
            times,
            values,
            jumps,
        }
    }
}

impl TryFrom<PathJson> for CadlagPath {
    type Error = Error;

    fn try_from(j: PathJson) -> Result<Self> {
        let dim = j
            .values
            .first()
            .map(|v| v.as_slice().len())
            .ok_or_else(|| Error::InvalidPath("path has no values".into()))?;
        if j.times.len() != j.values.len() {
            return Err(Error::InvalidPath(format!(
                "{} times but {} values",
                j.times.len(),
                j.values.len()
            )));
        }
        let mut flat = Vec::with_capacity(j.values.len() * dim);
        for v in &j.values {
            if v.as_slice().len() != dim {
                return Err(Error::InvalidPath(
                    "values have inconsistent dimensions".into(),
                ));
            }
            flat.extend_from_slice(v.as_slice());
        }
        match j.kind {
            PathKind::Step => {
                if !j.jumps.is_empty() {
                    return Err(Error::InvalidPath(
                        "step paths do not take a jumps list".into(),
                    ));
                }
                CadlagPath::step_vector(j.horizon, dim, &j.times, &flat)
            }
            PathKind::Pl => {
                let jumps: Vec<(f64, Vec<f64>)> = j
                    .jumps
                    .iter()
                    .map(|jj| (jj.t, jj.left.as_slice().to_vec()))
                    .collect();
                CadlagPath::piecewise_linear_vector(j.horizon, dim, &j.times, &flat, &jumps)
            }
        }
    }
}

impl CadlagPath {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PathJson::from(self)).expect("path serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: PathJson =
            serde_json::from_str(s).map_err(|e| Error::Serialization(e.to_string()))?;
        CadlagPath::try_from(j)
    }
}
