use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::algorithms::{run, AlgorithmKind, AlgorithmName, Outcome, RunConfig};
use crate::analysis::{
    batch_bound, compute_margin, normalized_bound, normalized_lrgd_bound, MarginReport,
};
use crate::dataset::Dataset;
use crate::datasets::io::write_atomic;
use crate::datasets::GeneratorSpec;
use crate::error::{Error, Result};

use super::trace_csv::emit_trace_csv;

/// Step sizes used when none are given.
pub const DEFAULT_GAMMAS: [f64; 7] = [0.001, 0.01, 0.1, 1.0, 10.0, 100.0, 1e6];

pub const SUMMARY_HEADER: &str =
    "algorithm,gamma,iterations,final_loss,bound,bound_respected,error";

#[derive(Debug, Clone)]
pub struct GridSpec {
    pub dataset: GeneratorSpec,
    pub algorithms: Vec<AlgorithmName>,
    /// Applied to the two gradient-descent variants only.
    pub gammas: Vec<f64>,
    pub max_iters: usize,
    pub record_every: usize,
    pub output_dir: PathBuf,
    pub workers: usize,
    pub margin_tol: f64,
    /// Multiplies every theoretical bound before it is checked. Always 1
    /// outside of fault-injection tests.
    pub bound_scale: f64,
}

impl GridSpec {
    pub fn new(
        dataset: GeneratorSpec,
        algorithms: Vec<AlgorithmName>,
        gammas: Vec<f64>,
        output_dir: PathBuf,
    ) -> Self {
        GridSpec {
            dataset,
            algorithms,
            gammas,
            max_iters: 100_000,
            record_every: 1,
            output_dir,
            workers: 1,
            margin_tol: crate::analysis::DEFAULT_TOL,
            bound_scale: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(Error::InvalidConfig("algorithm list is empty".into()));
        }
        if let Some(g) = self.gammas.iter().find(|g| !(**g > 0.0 && g.is_finite())) {
            return Err(Error::InvalidConfig(format!(
                "step sizes must be positive, got {g}"
            )));
        }
        if self.gammas.is_empty() && self.algorithms.iter().any(|a| a.needs_gamma()) {
            return Err(Error::InvalidConfig(
                "gradient-descent algorithms need at least one gamma".into(),
            ));
        }
        if self.max_iters == 0 || self.record_every == 0 {
            return Err(Error::InvalidConfig(
                "max_iters and record_every must be at least 1".into(),
            ));
        }
        if self.workers == 0 {
            return Err(Error::InvalidConfig("workers must be at least 1".into()));
        }
        Ok(())
    }

    /// One cell per (algorithm, γ), sorted by algorithm then γ, duplicates removed.
    pub fn cells(&self) -> Vec<AlgorithmKind> {
        let mut names = self.algorithms.clone();
        names.sort();
        names.dedup();
        let mut gammas = self.gammas.clone();
        gammas.sort_by(f64::total_cmp);
        gammas.dedup();
        let mut cells = Vec::new();
        for name in names {
            if name.needs_gamma() {
                for &g in &gammas {
                    cells.push(name.with_gamma(Some(g)).expect("gamma supplied"));
                }
            } else {
                cells.push(name.with_gamma(None).expect("no gamma needed"));
            }
        }
        cells
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub algorithm: AlgorithmKind,
    pub outcome: Option<Outcome>,
    pub final_loss: Option<f64>,
    pub bound: Option<f64>,
    /// `None` when no bound applies or the run stopped before the bound.
    pub bound_respected: Option<bool>,
    pub trace_file: PathBuf,
    pub error: Option<String>,
}

impl SummaryRow {
    pub fn iterations(&self) -> Option<usize> {
        self.outcome.and_then(|o| o.solved_at())
    }

    fn iterations_field(&self) -> String {
        match self.outcome {
            Some(Outcome::Solved { t_star }) => t_star.to_string(),
            Some(Outcome::Exhausted { .. }) => "timeout".into(),
            Some(Outcome::Overflow { .. }) => "overflow".into(),
            None => "error".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GridResult {
    pub rows: Vec<SummaryRow>,
    pub margin: Option<MarginReport>,
    pub n: usize,
}

impl GridResult {
    pub fn any_bound_violated(&self) -> bool {
        self.rows.iter().any(|r| r.bound_respected == Some(false))
    }
}

/// The theoretical iteration bound applying to `kind`, if any.
pub fn bound_for(kind: AlgorithmKind, n: usize, margin: &MarginReport) -> Option<f64> {
    if !margin.separable {
        return None;
    }
    let (r, mu) = (margin.radius, margin.mu);
    match kind {
        AlgorithmKind::LrGd { .. } => None,
        AlgorithmKind::NormalizedLrGd { gamma } => normalized_lrgd_bound(n, r, mu, gamma).ok(),
        AlgorithmKind::BatchPerceptron => batch_bound(n, r, mu).ok(),
        AlgorithmKind::Perceptron | AlgorithmKind::NormalizedBatchPerceptron => {
            normalized_bound(r, mu).ok()
        }
    }
}

fn trace_file_name(kind: AlgorithmKind) -> String {
    match kind.gamma() {
        Some(g) => format!("trace_{}_gamma{g}.csv", kind.name()),
        None => format!("trace_{}.csv", kind.name()),
    }
}

fn run_cell(
    data: &Dataset,
    spec: &GridSpec,
    kind: AlgorithmKind,
    margin: Option<&MarginReport>,
) -> SummaryRow {
    let trace_file = spec.output_dir.join(trace_file_name(kind));
    let bound = margin
        .and_then(|m| bound_for(kind, data.len(), m))
        .map(|b| b * spec.bound_scale);
    let config = RunConfig::new(kind, spec.max_iters).record_every(spec.record_every);
    let trace = match run(data, &config) {
        Ok(t) => t,
        Err(e) => {
            return SummaryRow {
                algorithm: kind,
                outcome: None,
                final_loss: None,
                bound,
                bound_respected: None,
                trace_file,
                error: Some(e.to_string()),
            }
        }
    };
    let error = emit_trace_csv(&trace, &trace_file)
        .err()
        .map(|e| e.to_string());
    let bound_respected = bound.and_then(|b| {
        let limit = b.ceil();
        match trace.outcome {
            Outcome::Solved { t_star } => Some(t_star as f64 <= limit),
            Outcome::Exhausted { max_iters } if max_iters as f64 >= limit => Some(false),
            Outcome::Overflow { .. } => Some(false),
            Outcome::Exhausted { .. } => None,
        }
    });
    SummaryRow {
        algorithm: kind,
        outcome: Some(trace.outcome),
        final_loss: Some(trace.last_record().loss),
        bound,
        bound_respected,
        trace_file,
        error,
    }
}

/// Runs every cell from the origin and writes per-cell traces plus
/// `summary.csv` and `summary.txt` into the output directory. Row order and
/// file contents do not depend on the worker count.
pub fn run_grid(spec: &GridSpec) -> Result<GridResult> {
    spec.validate()?;
    let data = spec.dataset.build()?;
    fs::create_dir_all(&spec.output_dir).map_err(|e| Error::io(&spec.output_dir, e))?;

    let margin = match compute_margin(&data, spec.margin_tol, crate::analysis::DEFAULT_MAX_ITERS) {
        Ok(m) => Some(m),
        Err(e) => {
            log::warn!("margin not available, bounds skipped: {e}");
            None
        }
    };
    let cells = spec.cells();
    let rows: Vec<SummaryRow> = if spec.workers == 1 {
        cells
            .iter()
            .map(|&k| run_cell(&data, spec, k, margin.as_ref()))
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(spec.workers)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
        pool.install(|| {
            cells
                .par_iter()
                .map(|&k| run_cell(&data, spec, k, margin.as_ref()))
                .collect()
        })
    };

    write_atomic(
        &spec.output_dir.join("summary.csv"),
        summary_csv(&rows).as_bytes(),
    )?;
    write_atomic(
        &spec.output_dir.join("summary.txt"),
        summary_table(&rows).as_bytes(),
    )?;
    Ok(GridResult {
        rows,
        margin,
        n: data.len(),
    })
}

fn opt_sci(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.16e}")).unwrap_or_default()
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.algorithm.name(),
            r.algorithm
                .gamma()
                .map(|g| g.to_string())
                .unwrap_or_default(),
            r.iterations_field(),
            opt_sci(r.final_loss),
            opt_sci(r.bound),
            r.bound_respected.map(|b| b.to_string()).unwrap_or_default(),
            r.error.as_deref().unwrap_or("").replace([',', '\n'], ";"),
        )
        .unwrap();
    }
    out
}

pub fn summary_table(rows: &[SummaryRow]) -> String {
    let header = [
        "algorithm",
        "gamma",
        "iterations",
        "final_loss",
        "bound",
        "bound_ok",
    ];
    let body: Vec<[String; 6]> = rows
        .iter()
        .map(|r| {
            [
                r.algorithm.name().to_string(),
                r.algorithm
                    .gamma()
                    .map(|g| g.to_string())
                    .unwrap_or_else(|| "-".into()),
                r.iterations_field(),
                r.final_loss
                    .map(|l| format!("{l:.6e}"))
                    .unwrap_or_else(|| "-".into()),
                r.bound
                    .map(|b| format!("{b:.4}"))
                    .unwrap_or_else(|| "-".into()),
                match r.bound_respected {
                    Some(true) => "yes".into(),
                    Some(false) => "NO".into(),
                    None => "-".into(),
                },
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |cells: &[&str], out: &mut String| {
        let parts: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(&header, &mut out);
    for row in &body {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        line(&cells, &mut out);
    }
    out
}

/// Convenience for callers that only want the summary file location.
pub fn summary_path(dir: &Path) -> PathBuf {
    dir.join("summary.csv")
}
