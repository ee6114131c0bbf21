//! `skorokhod`: distances, moduli, diagnostics and demos on cadlag paths.
//!
//! Paths are read and written in the path JSON format of the library.
//! Exit codes: 0 on success, 2 when an input violates a path or parameter
//! invariant, 1 for anything else (I/O, oracle disagreement).

mod demo;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use skorokhod::diagnostics::{
    compactness_report, convergence_report, tightness_report, DistanceKind, PathEnsemble, Topology,
};
use skorokhod::metrics::{j1_oracle, m1_oracle, REPORT_SCHEMA_VERSION};
use skorokhod::moduli::{ModulusCurve, ModulusKind};
use skorokhod::processes::{ensemble, example_family, FamilyName, ProcessSpec};
use skorokhod::{CadlagPath, GroundMetric};

#[derive(Parser)]
#[command(
    name = "skorokhod",
    version,
    about = "Skorokhod J1/M1 distances, moduli and tightness diagnostics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two paths, as a JSON report.
    Dist(DistArgs),
    /// A modulus of continuity along a ladder of deltas, as CSV.
    Modulus(ModulusArgs),
    /// Compactness, tightness and convergence reports.
    #[command(subcommand)]
    Diagnose(Diagnose),
    /// Draw one random path.
    Simulate(SimulateArgs),
    /// One member of an example family.
    Family(FamilyArgs),
    /// End-to-end scenarios reproducing the classical examples.
    Demo(demo::DemoArgs),
}

#[derive(Args)]
struct DistArgs {
    /// uniform, j1, j1_log or m1
    #[arg(long)]
    metric: String,
    #[arg(long)]
    left: PathBuf,
    #[arg(long)]
    right: PathBuf,
    /// Points per graph for non-step M1 inputs.
    #[arg(long, default_value_t = DistanceKind::M1_DEFAULT_RESOLUTION)]
    resolution: usize,
    /// Recompute with the brute-force oracle and fail on disagreement.
    #[arg(long)]
    oracle: bool,
    /// Tolerance for the J1 oracle check.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Omega,
    Omegaprime,
    Omegadoubleprime,
}

impl From<KindArg> for ModulusKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Omega => ModulusKind::Omega,
            KindArg::Omegaprime => ModulusKind::OmegaPrime,
            KindArg::Omegadoubleprime => ModulusKind::OmegaDoublePrime,
        }
    }
}

#[derive(Args)]
struct ModulusArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    path: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    deltas: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Diagnose {
    /// Exceedance frequencies of the tightness criteria over simulated ensembles.
    Tightness(TightnessArgs),
    /// Sup norm and modulus ladder of a family of paths.
    Compactness(CompactnessArgs),
    /// Distances from family members to the family's limit.
    Convergence(ConvergenceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ProcessArg {
    Donsker,
    DonskerStep,
    Poisson,
}

#[derive(Args)]
struct TightnessArgs {
    #[arg(long, value_enum)]
    process: ProcessArg,
    /// j1 or m1
    #[arg(long, default_value = "j1")]
    topology: String,
    /// Walk lengths N, or Poisson rates on [0, 1].
    #[arg(long, value_delimiter = ',', required = true)]
    ns: Vec<usize>,
    #[arg(long, default_value_t = 500)]
    replicas: usize,
    #[arg(long, value_delimiter = ',', default_value = "0.2,0.1,0.05")]
    deltas: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.25,0.5")]
    eps: Vec<f64>,
    /// Sup-norm thresholds C.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    thresholds: Vec<f64>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompactnessArgs {
    #[arg(long)]
    family: String,
    #[arg(long, value_delimiter = ',', required = true)]
    ns: Vec<usize>,
    /// uniform, j1 or m1
    #[arg(long, default_value = "j1")]
    topology: String,
    #[arg(long, value_delimiter = ',', default_value = "0.2,0.1,0.05,0.01")]
    deltas: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[arg(long)]
    family: String,
    #[arg(long, value_delimiter = ',', required = true)]
    ns: Vec<usize>,
    /// uniform, j1, j1_log or m1
    #[arg(long, default_value = "j1")]
    metric: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    process: ProcessArg,
    /// Number of walk steps.
    #[arg(long = "N", default_value_t = 400)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    rate: f64,
    #[arg(long, default_value_t = 1.0)]
    horizon: f64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Stream index: replica k of an ensemble drawn with the same seed.
    #[arg(long, default_value_t = 0)]
    replica: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    name: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// For `incompleteness`: where to write the time change as JSON.
    #[arg(long)]
    lambda_out: Option<PathBuf>,
}

/// An error caused by invalid input rather than by the environment.
#[derive(Debug)]
struct Invalid(String);

impl std::fmt::Display for Invalid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

fn invalid(e: skorokhod::Error) -> anyhow::Error {
    anyhow::Error::new(Invalid(e.to_string()))
}

trait OrInvalid<T> {
    fn or_invalid(self) -> anyhow::Result<T>;
}

impl<T> OrInvalid<T> for skorokhod::Result<T> {
    fn or_invalid(self) -> anyhow::Result<T> {
        self.map_err(invalid)
    }
}

fn read_path(p: &Path) -> anyhow::Result<CadlagPath> {
    let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    CadlagPath::from_json(&text)
        .map_err(|e| anyhow::Error::new(Invalid(format!("{}: {e}", p.display()))))
}

pub(crate) fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse<T: std::str::FromStr<Err = skorokhod::Error>>(s: &str) -> anyhow::Result<T> {
    s.parse::<T>().or_invalid()
}

fn dist(a: DistArgs) -> anyhow::Result<()> {
    let f = read_path(&a.left)?;
    let g = read_path(&a.right)?;
    let kind = match parse::<DistanceKind>(&a.metric)? {
        DistanceKind::M1 { .. } => DistanceKind::M1 {
            resolution: a.resolution,
        },
        k => k,
    };
    let report = kind.distance(&f, &g).or_invalid()?;
    if a.oracle {
        let (oracle, tol) = match kind {
            DistanceKind::J1 { penalty } => (
                j1_oracle(&f, &g, penalty, &GroundMetric::for_dim(f.dim())).or_invalid()?,
                a.tol,
            ),
            DistanceKind::M1 { .. } => {
                let o = m1_oracle(&f, &g).or_invalid()?;
                let tol = o.error_bound + report.error_bound + a.tol;
                (o, tol)
            }
            DistanceKind::Uniform => bail!(Invalid("the uniform distance has no oracle".into())),
        };
        if (oracle.value - report.value).abs() > tol {
            bail!(
                "oracle disagreement: {} vs oracle {} (tolerance {tol})",
                report.value,
                oracle.value
            );
        }
    }
    emit(a.out.as_deref(), &format!("{}\n", report.to_json()))
}

fn modulus(a: ModulusArgs) -> anyhow::Result<()> {
    let f = read_path(&a.path)?;
    let kind: ModulusKind = a.kind.into();
    let curve = ModulusCurve::new(&f, kind, &a.deltas).or_invalid()?;
    let mut csv = String::from("kind,delta,value\n");
    for (d, v) in curve.deltas.iter().zip(&curve.values) {
        csv.push_str(&format!("{},{d},{v}\n", kind.name()));
    }
    emit(a.out.as_deref(), &csv)
}

fn family_member(name: &str, n: usize) -> anyhow::Result<(CadlagPath, Option<CadlagPath>)> {
    let m = example_family(parse::<FamilyName>(name)?, n).or_invalid()?;
    Ok((m.path, m.limit))
}

fn diagnose(d: Diagnose) -> anyhow::Result<()> {
    match d {
        Diagnose::Tightness(a) => {
            let topology = parse::<Topology>(&a.topology)?;
            let seq =
                a.ns.iter()
                    .map(|&n| {
                        let spec = match a.process {
                            ProcessArg::Donsker => ProcessSpec::DonskerInterpolated { n },
                            ProcessArg::DonskerStep => ProcessSpec::DonskerStep { n },
                            ProcessArg::Poisson => ProcessSpec::Poisson {
                                rate: n as f64,
                                horizon: 1.0,
                            },
                        };
                        Ok((n, ensemble(&spec, a.replicas, a.seed).or_invalid()?))
                    })
                    .collect::<anyhow::Result<Vec<_>>>()?;
            let r =
                tightness_report(&seq, &a.deltas, &a.eps, &a.thresholds, topology).or_invalid()?;
            for t in &r.trends {
                eprintln!("n={} {} eps={}: {}", t.n, t.quantity, t.eps, t.verdict);
            }
            emit(a.out.as_deref(), &r.to_csv())
        }
        Diagnose::Compactness(a) => {
            let topology = parse::<Topology>(&a.topology)?;
            let paths =
                a.ns.iter()
                    .map(|&n| family_member(&a.family, n).map(|m| m.0))
                    .collect::<anyhow::Result<_>>()?;
            let e = PathEnsemble::labeled(paths, a.family.clone()).or_invalid()?;
            let r = compactness_report(&e, &a.deltas, topology).or_invalid()?;
            let mut csv = format!(
                "# sup_norm={}\ndelta,{},start_oscillation,end_oscillation\n",
                r.sup_norm, r.modulus
            );
            let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
            for row in &r.rows {
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    row.delta,
                    row.sup_modulus,
                    opt(row.sup_start_oscillation),
                    opt(row.sup_end_oscillation)
                ));
            }
            emit(a.out.as_deref(), &csv)
        }
        Diagnose::Convergence(a) => {
            let metric = parse::<DistanceKind>(&a.metric)?;
            let mut family = Vec::new();
            let mut limit = None;
            for &n in &a.ns {
                let (p, l) = family_member(&a.family, n)?;
                family.push((n, p));
                limit = l;
            }
            let limit =
                limit.ok_or_else(|| Invalid(format!("{} has no pointwise limit", a.family)))?;
            let r = convergence_report(&family, &limit, metric).or_invalid()?;
            let mut csv = String::from("n,distance,error_bound\n");
            for row in &r.rows {
                csv.push_str(&format!("{},{},{}\n", row.n, row.distance, row.error_bound));
            }
            match r.fitted_rate {
                Some(s) => eprintln!("fitted rate {s:.4}; {}", r.verdict),
                None => eprintln!("{}", r.verdict),
            }
            emit(a.out.as_deref(), &csv)
        }
    }
}

fn simulate(a: SimulateArgs) -> anyhow::Result<()> {
    let spec = match a.process {
        ProcessArg::Donsker => ProcessSpec::DonskerInterpolated { n: a.n },
        ProcessArg::DonskerStep => ProcessSpec::DonskerStep { n: a.n },
        ProcessArg::Poisson => ProcessSpec::Poisson {
            rate: a.rate,
            horizon: a.horizon,
        },
    };
    let p = spec.sample(a.seed, a.replica).or_invalid()?;
    emit(a.out.as_deref(), &format!("{}\n", p.to_json()))
}

fn family(a: FamilyArgs) -> anyhow::Result<()> {
    let m = example_family(parse::<FamilyName>(&a.name)?, a.n).or_invalid()?;
    if let Some(p) = &a.lambda_out {
        let lambda = m
            .lambda
            .as_ref()
            .ok_or_else(|| Invalid(format!("{} has no time change", a.name)))?;
        let json = serde_json::json!({ "schema_version": REPORT_SCHEMA_VERSION, "lambda": lambda });
        emit(Some(p), &format!("{json}\n"))?;
    }
    emit(a.out.as_deref(), &format!("{}\n", m.path.to_json()))
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("CADLAG_THREADS") {
        let n: usize = v.parse().map_err(|_| {
            Invalid(format!(
                "CADLAG_THREADS must be a positive integer, got {v:?}"
            ))
        })?;
        if n == 0 {
            bail!(Invalid("CADLAG_THREADS must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    configure_threads()?;
    match cli.command {
        Command::Dist(a) => dist(a),
        Command::Modulus(a) => modulus(a),
        Command::Diagnose(d) => diagnose(d),
        Command::Simulate(a) => simulate(a),
        Command::Family(a) => family(a),
        Command::Demo(a) => demo::run(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<Invalid>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
