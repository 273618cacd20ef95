//! Command-line front end: argument parsing, exit codes and the echoed
//! configuration line. Each subcommand lives in [`commands`].

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use lrgd::datasets::{Format, GeneratorSpec, Source};
use lrgd::experiments::Metric;
use lrgd::AlgorithmName;

pub mod commands;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USER: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "lrgd",
    version,
    about = "Logistic regression at large step sizes and its perceptron limits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run one algorithm from the origin and report when it separates the data.
    Run(RunArgs),
    /// Run a grid of algorithms and step sizes and tabulate iterations to solve.
    Compare(CompareArgs),
    /// Check that gradient descent at step size G tracks its perceptron limit.
    VerifyReduction(VerifyArgs),
    /// Compute the margin, the radius and the iteration bounds.
    Margin(MarginArgs),
    /// Materialize a dataset to a file.
    GenDataset(GenArgs),
    /// Draw trace CSV files as an SVG line chart.
    Plot(PlotArgs),
}

#[derive(Args, Debug, Clone)]
pub struct DataArgs {
    /// A CSV or LIBSVM file, or builtin:twopoint, builtin:worstcase:N,
    /// builtin:random:N:D:MARGIN:RADIUS:SEED
    #[arg(long)]
    pub data: String,
    /// Input format; inferred from the extension when omitted.
    #[arg(long)]
    pub format: Option<Format>,
    /// Keep N samples chosen uniformly without replacement.
    #[arg(long, value_name = "N")]
    pub subsample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long)]
    pub algo: AlgorithmName,
    /// Step size; required by lr-gd and normalized-lr-gd.
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, default_value_t = 100_000)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1)]
    pub record_every: usize,
    /// Directory for the trace CSV; nothing is written when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct CompareArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Step sizes for the gradient-descent variants.
    #[arg(long, value_delimiter = ',', default_values_t = lrgd::experiments::DEFAULT_GAMMAS.to_vec())]
    pub gammas: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = AlgorithmName::ALL.to_vec())]
    pub algos: Vec<AlgorithmName>,
    #[arg(long, default_value_t = 100_000)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1)]
    pub record_every: usize,
    /// Cells run in parallel on this many threads; output does not depend on it.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long)]
    pub out: PathBuf,
    /// Multiplies every bound before checking it (testing only).
    #[arg(long, hide = true, default_value_t = 1.0)]
    pub fault_bound_scale: f64,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long)]
    pub gamma: f64,
    #[arg(long, default_value_t = 50)]
    pub horizon: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Compare the normalized variants instead.
    #[arg(long)]
    pub normalized: bool,
}

#[derive(Args, Debug, Clone)]
pub struct MarginArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long, default_value_t = lrgd::analysis::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = lrgd::analysis::DEFAULT_MAX_ITERS)]
    pub max_iters: usize,
    /// Also print the normalized-lr-gd bound at these step sizes.
    #[arg(long, value_delimiter = ',')]
    pub gammas: Vec<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct GenArgs {
    /// Source dataset, as accepted by --data elsewhere.
    pub source: String,
    /// Format of a file source; inferred from the extension when omitted.
    #[arg(long)]
    pub input_format: Option<Format>,
    /// Repeat every sample of a class, e.g. +1:10.
    #[arg(long, value_name = "CLASS:FACTOR")]
    pub imbalance: Option<String>,
    /// Standard deviation of Gaussian noise added to every feature.
    #[arg(long, value_name = "SIGMA")]
    pub perturb: Option<f64>,
    #[arg(long, value_name = "N")]
    pub subsample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output format; inferred from the extension, else csv.
    #[arg(long)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct PlotArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub traces: Vec<PathBuf>,
    /// Legend entries, one per trace; file stems by default.
    #[arg(long, value_delimiter = ',')]
    pub labels: Vec<String>,
    #[arg(long, default_value = "loss")]
    pub metric: Metric,
    #[arg(long)]
    pub log_y: bool,
    #[arg(long)]
    pub out: PathBuf,
}

/// A failed command and the exit code it maps to.
#[derive(Debug)]
pub enum Failure {
    User(String),
    Internal(String),
    Verification(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::User(_) => EXIT_USER,
            Failure::Internal(_) => EXIT_INTERNAL,
            Failure::Verification(_) => EXIT_VERIFY,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::User(m) | Failure::Internal(m) | Failure::Verification(m) => m,
        }
    }

    /// Wraps an error that stems from the invocation regardless of its kind,
    /// such as an unreadable input file.
    pub fn user(e: impl std::fmt::Display) -> Self {
        Failure::User(e.to_string())
    }
}

impl From<lrgd::Error> for Failure {
    fn from(e: lrgd::Error) -> Self {
        if e.is_user_error() {
            Failure::User(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

pub type CmdResult = Result<(), Failure>;

impl DataArgs {
    pub fn source(&self) -> Result<Source, Failure> {
        Source::parse(&self.data, self.format).map_err(Failure::user)
    }

    pub fn spec(&self) -> Result<GeneratorSpec, Failure> {
        let mut spec = GeneratorSpec::new(self.source()?);
        spec.subsample = self.subsample.map(|k| (k, self.seed));
        Ok(spec)
    }

    fn echo(&self, out: &mut Vec<String>) -> Result<(), Failure> {
        push(out, "--data", &self.data);
        if let Source::FromFile { format, .. } = self.source()? {
            push(out, "--format", format.as_str());
        }
        if let Some(k) = self.subsample {
            push(out, "--subsample", k);
        }
        push(out, "--seed", self.seed);
        Ok(())
    }
}

fn push(out: &mut Vec<String>, flag: &str, value: impl std::fmt::Display) {
    out.push(flag.to_string());
    out.push(value.to_string());
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn quote(arg: &str) -> String {
    let plain = !arg.is_empty()
        && arg
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "_-+.,:/=@%".contains(c));
    if plain {
        arg.to_string()
    } else {
        format!("'{}'", arg.replace('\'', r"'\''"))
    }
}

impl Command {
    /// The fully resolved invocation, every default spelled out.
    pub fn echo(&self) -> Result<String, Failure> {
        let mut a = Vec::new();
        match self {
            Command::Run(r) => {
                a.push("run".into());
                r.data.echo(&mut a)?;
                push(&mut a, "--algo", r.algo);
                if let (true, Some(g)) = (r.algo.needs_gamma(), r.gamma) {
                    push(&mut a, "--gamma", g);
                }
                push(&mut a, "--max-iters", r.max_iters);
                push(&mut a, "--record-every", r.record_every);
                if let Some(o) = &r.out {
                    push(&mut a, "--out", o.display());
                }
            }
            Command::Compare(c) => {
                a.push("compare".into());
                c.data.echo(&mut a)?;
                push(&mut a, "--gammas", join(&c.gammas));
                push(&mut a, "--algos", join(&c.algos));
                push(&mut a, "--max-iters", c.max_iters);
                push(&mut a, "--record-every", c.record_every);
                push(&mut a, "--workers", c.workers);
                push(&mut a, "--out", c.out.display());
                if c.fault_bound_scale != 1.0 {
                    push(&mut a, "--fault-bound-scale", c.fault_bound_scale);
                }
            }
            Command::VerifyReduction(v) => {
                a.push("verify-reduction".into());
                v.data.echo(&mut a)?;
                push(&mut a, "--gamma", v.gamma);
                push(&mut a, "--horizon", v.horizon);
                push(&mut a, "--tol", v.tol);
                if v.normalized {
                    a.push("--normalized".into());
                }
            }
            Command::Margin(m) => {
                a.push("margin".into());
                m.data.echo(&mut a)?;
                push(&mut a, "--tol", m.tol);
                push(&mut a, "--max-iters", m.max_iters);
                if !m.gammas.is_empty() {
                    push(&mut a, "--gammas", join(&m.gammas));
                }
            }
            Command::GenDataset(g) => {
                a.push("gen-dataset".into());
                a.push(g.source.clone());
                if let Source::FromFile { format, .. } =
                    Source::parse(&g.source, g.input_format).map_err(Failure::user)?
                {
                    push(&mut a, "--input-format", format.as_str());
                }
                if let Some(s) = &g.imbalance {
                    push(&mut a, "--imbalance", s);
                }
                if let Some(s) = g.perturb {
                    push(&mut a, "--perturb", s);
                }
                if let Some(k) = g.subsample {
                    push(&mut a, "--subsample", k);
                }
                push(&mut a, "--seed", g.seed);
                push(&mut a, "--format", commands::output_format(g).as_str());
                push(&mut a, "--out", g.out.display());
            }
            Command::Plot(p) => {
                a.push("plot".into());
                let traces: Vec<String> =
                    p.traces.iter().map(|t| t.display().to_string()).collect();
                push(&mut a, "--traces", traces.join(","));
                push(&mut a, "--labels", commands::plot_labels(p).join(","));
                push(&mut a, "--metric", p.metric.as_str());
                if p.log_y {
                    a.push("--log-y".into());
                }
                push(&mut a, "--out", p.out.display());
            }
        }
        let quoted: Vec<String> = a.iter().map(|s| quote(s)).collect();
        Ok(format!("lrgd {}", quoted.join(" ")))
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit code. Normal output goes to `out`, diagnostics to `err`.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USER
                }
            };
        }
    };
    let result = cli.command.echo().and_then(|line| {
        writeln!(out, "config: {line}")?;
        commands::dispatch(&cli.command, out, err)
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}
