//! Seeded random paths and deterministic example families.
//!
//! Randomness comes from ChaCha8 keyed by `(seed, stream)`: replica `k` of
//! an ensemble always reads stream `k`, so results do not depend on thread
//! count or scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagnostics::PathEnsemble;
use crate::paths::{CadlagPath, TimeChange};
use crate::{Error, Result};

/// The generator behind every random path: ChaCha8 seeded with `seed`,
/// positioned on stream `stream`.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Rescaled simple random walk `S_k / sqrt(N)` on `[0, 1]`.
///
/// The interpolated version joins the points `(k/N, S_k/sqrt(N))` linearly;
/// the step version holds `S_k / sqrt(N)` on `[k/N, (k+1)/N)` and takes
/// `S_N / sqrt(N)` at time 1.
pub fn donsker_path(n: usize, seed: u64, interpolated: bool) -> Result<CadlagPath> {
    donsker_replica(n, seed, 0, interpolated)
}

pub fn donsker_replica(n: usize, seed: u64, stream: u64, interpolated: bool) -> Result<CadlagPath> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "the walk needs at least one step".into(),
        ));
    }
    let mut r = rng(seed, stream);
    let scale = 1.0 / (n as f64).sqrt();
    let mut values = Vec::with_capacity(n + 1);
    let mut s: i64 = 0;
    values.push(0.0);
    for _ in 0..n {
        s += if r.random::<bool>() { 1 } else { -1 };
        values.push(s as f64 * scale);
    }
    let times: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
    if interpolated {
        CadlagPath::piecewise_linear(1.0, &times, &values, &[])
    } else {
        CadlagPath::step(1.0, &times, &values)
    }
}

/// Unit-jump counting path with exponential inter-arrival times.
pub fn poisson_path(rate: f64, horizon: f64, seed: u64) -> Result<CadlagPath> {
    poisson_replica(rate, horizon, seed, 0)
}

pub fn poisson_replica(rate: f64, horizon: f64, seed: u64, stream: u64) -> Result<CadlagPath> {
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "rate must be positive, got {rate}"
        )));
    }
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "horizon must be positive, got {horizon}"
        )));
    }
    let exp = Exp::new(rate).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut r = rng(seed, stream);
    let mut times = vec![0.0];
    let mut t = 0.0;
    loop {
        t += exp.sample(&mut r);
        if t > horizon {
            break;
        }
        times.push(t);
    }
    let values: Vec<f64> = (0..times.len()).map(|k| k as f64).collect();
    CadlagPath::step(horizon, &times, &values)
}

/// Gaussian random walk with `N(0, 1/N)` increments joined linearly: a
/// Brownian path sampled exactly at the times `k/N`.
pub fn brownian_replica(n: usize, seed: u64, stream: u64) -> Result<CadlagPath> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "the walk needs at least one step".into(),
        ));
    }
    let mut r = rng(seed, stream);
    let scale = 1.0 / (n as f64).sqrt();
    let mut values = Vec::with_capacity(n + 1);
    let mut s = 0.0;
    values.push(0.0);
    for _ in 0..n {
        let z: f64 = StandardNormal.sample(&mut r);
        s += z * scale;
        values.push(s);
    }
    let times: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
    CadlagPath::piecewise_linear(1.0, &times, &values, &[])
}

/// A random or deterministic source of paths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProcessSpec {
    DonskerInterpolated { n: usize },
    DonskerStep { n: usize },
    Poisson { rate: f64, horizon: f64 },
    Brownian { n: usize },
    Family { name: FamilyName, n: usize },
}

impl ProcessSpec {
    /// Replica `stream` of the process under `seed`.
    pub fn sample(&self, seed: u64, stream: u64) -> Result<CadlagPath> {
        match *self {
            ProcessSpec::DonskerInterpolated { n } => donsker_replica(n, seed, stream, true),
            ProcessSpec::DonskerStep { n } => donsker_replica(n, seed, stream, false),
            ProcessSpec::Poisson { rate, horizon } => poisson_replica(rate, horizon, seed, stream),
            ProcessSpec::Brownian { n } => brownian_replica(n, seed, stream),
            ProcessSpec::Family { name, n } => Ok(example_family(name, n)?.path),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ProcessSpec::DonskerInterpolated { n } => format!("donsker_interpolated(N={n})"),
            ProcessSpec::DonskerStep { n } => format!("donsker_step(N={n})"),
            ProcessSpec::Poisson { rate, horizon } => format!("poisson(rate={rate}, T={horizon})"),
            ProcessSpec::Brownian { n } => format!("brownian(N={n})"),
            ProcessSpec::Family { name, n } => format!("{}(n={n})", name.as_str()),
        }
    }
}

/// `replicas` independent draws, replica `k` on stream `k`, generated in
/// parallel and returned in stream order.
pub fn ensemble(spec: &ProcessSpec, replicas: usize, seed: u64) -> Result<PathEnsemble> {
    let paths: Vec<CadlagPath> = (0..replicas as u64)
        .into_par_iter()
        .map(|k| spec.sample(seed, k))
        .collect::<Result<_>>()?;
    PathEnsemble::labeled(paths, format!("{} seed={seed}", spec.label()))
}

/// Deterministic sequences used as test inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    /// `1[1/2 - 1/n, 1)`: converges to `1[1/2, 1)` in J1.
    J1Shift,
    /// `(1/2) 1[1/2 - 1/n, 1/2) + 1[1/2, 1)`: two half jumps merging; M1 but not J1.
    M1Staircase,
    /// `1[1/2 - 1/n, 1/2 - 1/(2n)) + 1[1/2, 1)`: an early full-height blip
    /// before the jump (illustrative).
    J2Spikepair,
    /// `(1/2) 1[1/2 - 1/n, 1/2 - 1/(2n)) + 1[1/2, 1)`: the same with a half
    /// height blip (illustrative).
    M2Variant,
    /// `1[0, 2^-n)` with the time change through `(2^-n, 2^-(n+1))`.
    Incompleteness,
    /// `1[1 + 1/n, 2]` on horizon 2, a stand-in for `1[1 + 1/n, inf)`.
    HalflineShift,
    /// `1[1/2, 1/2 + 1/n)`: a spike that never settles in M1.
    Spike,
}

impl FamilyName {
    pub const ALL: [FamilyName; 7] = [
        FamilyName::J1Shift,
        FamilyName::M1Staircase,
        FamilyName::J2Spikepair,
        FamilyName::M2Variant,
        FamilyName::Incompleteness,
        FamilyName::HalflineShift,
        FamilyName::Spike,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::J1Shift => "j1_shift",
            FamilyName::M1Staircase => "m1_staircase",
            FamilyName::J2Spikepair => "j2_spikepair",
            FamilyName::M2Variant => "m2_variant",
            FamilyName::Incompleteness => "incompleteness",
            FamilyName::HalflineShift => "halfline_shift",
            FamilyName::Spike => "spike",
        }
    }

    /// Smallest admissible index.
    pub fn min_index(self) -> usize {
        match self {
            FamilyName::Incompleteness | FamilyName::HalflineShift => 1,
            _ => 3,
        }
    }
}

impl std::str::FromStr for FamilyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyName::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family {s:?}")))
    }
}

/// One member of an example family.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyMember {
    pub path: CadlagPath,
    /// The pointwise limit of the family, when it has one.
    pub limit: Option<CadlagPath>,
    /// For `incompleteness`: `lambda_n` with `f_n = f_{n+1} ∘ lambda_n`.
    pub lambda: Option<TimeChange>,
}

pub fn example_family(name: FamilyName, n: usize) -> Result<FamilyMember> {
    if n < name.min_index() {
        return Err(Error::InvalidParameter(format!(
            "{} needs n >= {}, got {n}",
            name.as_str(),
            name.min_index()
        )));
    }
    let x = n as f64;
    let unit_jump = || CadlagPath::indicator(1.0, 0.5, 1.0);
    let member = |path: CadlagPath, limit: Option<CadlagPath>| FamilyMember {
        path,
        limit,
        lambda: None,
    };
    Ok(match name {
        FamilyName::J1Shift => member(
            CadlagPath::indicator(1.0, 0.5 - 1.0 / x, 1.0)?,
            Some(unit_jump()?),
        ),
        FamilyName::M1Staircase => member(
            CadlagPath::step(1.0, &[0.0, 0.5 - 1.0 / x, 0.5], &[0.0, 0.5, 1.0])?,
            Some(unit_jump()?),
        ),
        FamilyName::J2Spikepair => member(
            CadlagPath::step(
                1.0,
                &[0.0, 0.5 - 1.0 / x, 0.5 - 0.5 / x, 0.5],
                &[0.0, 1.0, 0.0, 1.0],
            )?,
            Some(unit_jump()?),
        ),
        FamilyName::M2Variant => member(
            CadlagPath::step(
                1.0,
                &[0.0, 0.5 - 1.0 / x, 0.5 - 0.5 / x, 0.5],
                &[0.0, 0.5, 0.0, 1.0],
            )?,
            Some(unit_jump()?),
        ),
        FamilyName::Incompleteness => {
            let a = 2f64.powi(-(n as i32));
            FamilyMember {
                path: CadlagPath::indicator(1.0, 0.0, a)?,
                limit: Some(CadlagPath::constant(1.0, 0.0)?),
                lambda: Some(TimeChange::new(
                    1.0,
                    vec![(0.0, 0.0), (a, a / 2.0), (1.0, 1.0)],
                )?),
            }
        }
        FamilyName::HalflineShift => member(
            CadlagPath::step(2.0, &[0.0, 1.0 + 1.0 / x], &[0.0, 1.0])?,
            Some(CadlagPath::step(2.0, &[0.0, 1.0], &[0.0, 1.0])?),
        ),
        FamilyName::Spike => member(
            CadlagPath::indicator(1.0, 0.5, 0.5 + 1.0 / x)?,
            Some(CadlagPath::constant(1.0, 0.0)?),
        ),
    })
}
