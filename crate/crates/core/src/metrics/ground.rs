use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

type DistanceFn = dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync;

/// Metric on the value space.
#[derive(Clone, Default)]
pub enum GroundMetric {
    /// `|x - y|` on the real line.
    #[default]
    Abs,
    Euclidean,
    /// `max_i |x_i - y_i|`.
    MaxNorm,
    /// A caller-supplied metric; it must be symmetric, nonnegative, zero on
    /// the diagonal and satisfy the triangle inequality.
    Custom(Arc<DistanceFn>),
}

impl fmt::Debug for GroundMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundMetric::Abs => write!(f, "Abs"),
            GroundMetric::Euclidean => write!(f, "Euclidean"),
            GroundMetric::MaxNorm => write!(f, "MaxNorm"),
            GroundMetric::Custom(_) => write!(f, "Custom"),
        }
    }
}

impl GroundMetric {
    pub fn custom<F>(f: F) -> Self
    where
        F: Fn(&[f64], &[f64]) -> f64 + Send + Sync + 'static,
    {
        GroundMetric::Custom(Arc::new(f))
    }

    #[inline]
    pub fn distance(&self, x: &[f64], y: &[f64]) -> f64 {
        match self {
            GroundMetric::Abs => (x[0] - y[0]).abs(),
            GroundMetric::Euclidean => x
                .iter()
                .zip(y)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt(),
            GroundMetric::MaxNorm => x.iter().zip(y).fold(0.0, |m, (a, b)| m.max((a - b).abs())),
            GroundMetric::Custom(f) => f(x, y),
        }
    }

    /// The natural default for a value dimension: `Abs` on the line,
    /// `Euclidean` otherwise.
    pub fn for_dim(dim: usize) -> Self {
        if dim == 1 {
            GroundMetric::Abs
        } else {
            GroundMetric::Euclidean
        }
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if matches!(self, GroundMetric::Abs) && dim != 1 {
            return Err(Error::InvalidParameter(format!(
                "the absolute-value metric needs scalar paths, got dimension {dim}"
            )));
        }
        Ok(())
    }
}
