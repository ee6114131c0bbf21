//! Scenarios that run a classical example end to end and print a CSV.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use skorokhod::diagnostics::{fdd_compare, DistanceKind};
use skorokhod::metrics::{
    halfline_distance, j1_distance, m1_distance, strong_product_j1, weak_product_j1,
    HalflineOptions,
};
use skorokhod::processes::{ensemble, example_family, FamilyName, ProcessSpec};
use skorokhod::{CadlagPath, GroundMetric, Penalty};

use crate::{emit, OrInvalid};

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Scenario {
    /// Cauchy in J1 without a limit; the log-slope metric does not see it as Cauchy.
    Incompleteness,
    /// `1[1/2 - 1/n, 1) -> 1[1/2, 1)` at rate 1/n.
    J1ShiftConvergence,
    /// The staircase converges in M1 but stays 1/2 away in J1.
    M1VsJ1,
    /// Rescaled walks against the normal law at time 1.
    Donsker,
    /// A fixed restriction horizon never sees `1[1 + 1/n, inf) -> 1[1, inf)`.
    Halfline,
    /// Staggered jumps: coordinatewise time changes beat a shared one.
    WeakVsStrongProduct,
}

#[derive(Args)]
pub struct DemoArgs {
    #[arg(long, value_enum)]
    name: Scenario,
    /// Largest index for `incompleteness`.
    #[arg(long, default_value_t = 12)]
    max_n: usize,
    /// Indices (or walk lengths for `donsker`).
    #[arg(long, value_delimiter = ',')]
    ns: Vec<usize>,
    #[arg(long, default_value_t = 2000)]
    replicas: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn ns_or(ns: &[usize], default: &[usize]) -> Vec<usize> {
    if ns.is_empty() {
        default.to_vec()
    } else {
        ns.to_vec()
    }
}

fn member(name: FamilyName, n: usize) -> anyhow::Result<CadlagPath> {
    Ok(example_family(name, n).or_invalid()?.path)
}

fn unit_jump() -> anyhow::Result<CadlagPath> {
    CadlagPath::indicator(1.0, 0.5, 1.0).or_invalid()
}

pub fn run(a: DemoArgs) -> anyhow::Result<()> {
    let abs = GroundMetric::Abs;
    let j1 = |f: &CadlagPath, g: &CadlagPath, p: Penalty| {
        j1_distance(f, g, p, &abs).map(|r| r.value).or_invalid()
    };
    let mut csv = String::new();
    match a.name {
        Scenario::Incompleteness => {
            csv.push_str("n,d_j1_next,d_j1_log_next,d_j1_null\n");
            let null = CadlagPath::constant(1.0, 0.0).or_invalid()?;
            for n in 1..=a.max_n {
                let f = member(FamilyName::Incompleteness, n)?;
                let next = member(FamilyName::Incompleteness, n + 1)?;
                csv.push_str(&format!(
                    "{n},{},{},{}\n",
                    j1(&next, &f, Penalty::Absolute)?,
                    j1(&next, &f, Penalty::LogSlope)?,
                    j1(&null, &f, Penalty::Absolute)?
                ));
            }
        }
        Scenario::J1ShiftConvergence => {
            csv.push_str("n,d_j1\n");
            let lim = unit_jump()?;
            for n in ns_or(&a.ns, &[3, 5, 10, 20, 50]) {
                csv.push_str(&format!(
                    "{n},{}\n",
                    j1(&member(FamilyName::J1Shift, n)?, &lim, Penalty::Absolute)?
                ));
            }
        }
        Scenario::M1VsJ1 => {
            csv.push_str("n,d_j1,d_m1\n");
            let lim = unit_jump()?;
            for n in ns_or(&a.ns, &[5, 10, 20, 40]) {
                let f = member(FamilyName::M1Staircase, n)?;
                let m = m1_distance(&f, &lim, DistanceKind::M1_DEFAULT_RESOLUTION)
                    .or_invalid()?
                    .value;
                csv.push_str(&format!("{n},{},{m}\n", j1(&f, &lim, Penalty::Absolute)?));
            }
        }
        Scenario::Donsker => {
            csv.push_str("N,replicas,ks_statistic,p_value,variance\n");
            let normal =
                ensemble(&ProcessSpec::Brownian { n: 1 }, 100_000, a.seed ^ 0x5eed).or_invalid()?;
            for n in ns_or(&a.ns, &[50, 100, 200, 400]) {
                let walks = ensemble(&ProcessSpec::DonskerInterpolated { n }, a.replicas, a.seed)
                    .or_invalid()?;
                let row =
                    &fdd_compare(std::slice::from_ref(&walks), &normal, &[1.0]).or_invalid()?[0];
                let y = walks.marginal(1.0).or_invalid()?;
                let mean = y.iter().sum::<f64>() / y.len() as f64;
                let var =
                    y.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (y.len().max(2) - 1) as f64;
                csv.push_str(&format!(
                    "{n},{},{},{},{var}\n",
                    a.replicas, row.statistic, row.p_value
                ));
            }
        }
        Scenario::Halfline => {
            csv.push_str("n,d_j1_restricted,d_halfline\n");
            let target = CadlagPath::step(2.0, &[0.0, 1.0], &[0.0, 1.0]).or_invalid()?;
            let target1 = target.restrict(1.0).or_invalid()?;
            for n in ns_or(&a.ns, &[1, 2, 5, 10, 20, 50]) {
                let f = member(FamilyName::HalflineShift, n)?;
                let r = j1(&f.restrict(1.0).or_invalid()?, &target1, Penalty::Absolute)?;
                let h =
                    halfline_distance(&f, &target, Penalty::Absolute, &HalflineOptions::default())
                        .or_invalid()?;
                csv.push_str(&format!("{n},{r},{}\n", h.value));
            }
        }
        Scenario::WeakVsStrongProduct => {
            csv.push_str("n,d_weak,d_strong\n");
            for n in ns_or(&a.ns, &[3, 5, 10, 20, 50]) {
                let f = [
                    CadlagPath::indicator(1.0, 0.5 - 1.0 / n as f64, 1.0).or_invalid()?,
                    unit_jump()?,
                ];
                let g = [unit_jump()?, unit_jump()?];
                let weak = weak_product_j1(&f, &g, Penalty::Absolute)
                    .or_invalid()?
                    .value;
                let strong = strong_product_j1(&f, &g, Penalty::Absolute, &GroundMetric::MaxNorm)
                    .or_invalid()?
                    .value;
                csv.push_str(&format!("{n},{weak},{strong}\n"));
            }
        }
    }
    emit(a.out.as_deref(), &csv)
}
