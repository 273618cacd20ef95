use std::collections::BTreeMap;
use std::io::Write;

use lrgd::algorithms::{run, RunConfig};
use lrgd::analysis::{
    batch_bound, compute_margin, normalized_bound, normalized_lrgd_bound, verify_reduction, Verdict,
};
use lrgd::datasets::{parse_imbalance, save, Format, GeneratorSpec, Source};
use lrgd::experiments::{
    emit_plot_svg, emit_trace_csv, read_trace_csv, run_grid, summary_table, GridSpec,
};
use lrgd::{AlgorithmKind, Error, TraceRecord};

use crate::{
    CmdResult, Command, CompareArgs, Failure, GenArgs, MarginArgs, PlotArgs, RunArgs, VerifyArgs,
};

pub fn dispatch(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match command {
        Command::Run(a) => cmd_run(a, out, err),
        Command::Compare(a) => cmd_compare(a, out, err),
        Command::VerifyReduction(a) => cmd_verify_reduction(a, out),
        Command::Margin(a) => cmd_margin(a, out),
        Command::GenDataset(a) => cmd_gen_dataset(a, out),
        Command::Plot(a) => cmd_plot(a, out),
    }
}

fn load(spec: &GeneratorSpec) -> Result<lrgd::Dataset, Failure> {
    spec.build().map_err(Failure::user)
}

/// Rounds away solver noise before printing, so exact values print exactly.
fn round_to(v: f64, digits: i32) -> f64 {
    let scale = 10f64.powi(digits);
    (v * scale).round() / scale
}

pub fn cmd_run(args: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if !args.algo.needs_gamma() && args.gamma.is_some() {
        writeln!(err, "warning: --gamma is ignored by {}", args.algo)?;
    }
    let kind = args.algo.with_gamma(args.gamma)?;
    let data = load(&args.data.spec()?)?;
    let config = RunConfig::new(kind, args.max_iters).record_every(args.record_every);
    let trace = run(&data, &config)?;
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir)
            .map_err(|e| Failure::user(format!("{}: {e}", dir.display())))?;
        let path = dir.join(trace_file_name(kind));
        emit_trace_csv(&trace, &path)?;
        log::info!("trace written to {}", path.display());
    }
    writeln!(out, "{}", trace.outcome)?;
    Ok(())
}

fn trace_file_name(kind: AlgorithmKind) -> String {
    match kind.gamma() {
        Some(g) => format!("trace_{}_gamma{g}.csv", kind.name()),
        None => format!("trace_{}.csv", kind.name()),
    }
}

pub fn cmd_compare(args: &CompareArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let mut seen = Vec::new();
    for &a in &args.algos {
        if seen.contains(&a) {
            writeln!(err, "warning: duplicate algorithm {a} ignored")?;
        } else {
            seen.push(a);
        }
    }
    let mut spec = GridSpec::new(
        args.data.spec()?,
        seen,
        args.gammas.clone(),
        args.out.clone(),
    );
    spec.max_iters = args.max_iters;
    spec.record_every = args.record_every;
    spec.workers = args.workers;
    spec.bound_scale = args.fault_bound_scale;
    spec.validate().map_err(Failure::user)?;
    load(&spec.dataset)?;

    let result = run_grid(&spec)?;
    match &result.margin {
        Some(m) if m.separable => writeln!(
            out,
            "n={} mu={} R={:.6}",
            result.n,
            round_to(m.mu, 9),
            m.radius
        )?,
        Some(_) => writeln!(out, "n={} non-separable", result.n)?,
        None => writeln!(out, "n={} margin unavailable", result.n)?,
    }
    write!(out, "{}", summary_table(&result.rows))?;
    for (gamma, ratio) in speedups(&result.rows) {
        writeln!(
            out,
            "speedup lr-gd/normalized-lr-gd at gamma={gamma}: {ratio:.2}x"
        )?;
    }
    for row in &result.rows {
        if let Some(e) = &row.error {
            writeln!(err, "warning: {}: {e}", row.algorithm)?;
        }
    }
    if result.any_bound_violated() {
        let bad: Vec<String> = result
            .rows
            .iter()
            .filter(|r| r.bound_respected == Some(false))
            .map(|r| r.algorithm.to_string())
            .collect();
        return Err(Failure::Verification(format!(
            "iteration bound violated by {}",
            bad.join(", ")
        )));
    }
    Ok(())
}

/// Iteration ratios between the two gradient-descent variants wherever both
/// solved at the same step size.
fn speedups(rows: &[lrgd::experiments::SummaryRow]) -> Vec<(f64, f64)> {
    let mut by_gamma: BTreeMap<u64, (Option<usize>, Option<usize>)> = BTreeMap::new();
    for r in rows {
        let (Some(g), Some(t)) = (r.algorithm.gamma(), r.iterations()) else {
            continue;
        };
        let entry = by_gamma.entry(g.to_bits()).or_default();
        match r.algorithm {
            AlgorithmKind::LrGd { .. } => entry.0 = Some(t),
            AlgorithmKind::NormalizedLrGd { .. } => entry.1 = Some(t),
            _ => {}
        }
    }
    by_gamma
        .into_iter()
        .filter_map(|(bits, pair)| match pair {
            (Some(a), Some(b)) if b > 0 => Some((f64::from_bits(bits), a as f64 / b as f64)),
            _ => None,
        })
        .collect()
}

pub fn cmd_verify_reduction(args: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    if !(args.gamma > 0.0 && args.gamma.is_finite()) {
        return Err(Failure::User(format!(
            "gamma must be positive, got {}",
            args.gamma
        )));
    }
    let data = load(&args.data.spec()?)?;
    let report = verify_reduction(&data, args.gamma, args.horizon, args.tol, args.normalized)?;
    let verdict = match report.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
    };
    writeln!(
        out,
        "max_deviation={:e} degenerate_hits={} horizon={} verdict={verdict}",
        report.max_deviation, report.degenerate_hits, report.horizon
    )?;
    if report.degenerate_hits > 0 {
        writeln!(
            out,
            "warning: zero margins on the perceptron trajectory; the limit may not hold"
        )?;
    }
    match report.verdict {
        Verdict::Pass => Ok(()),
        Verdict::Fail => Err(Failure::Verification(format!(
            "deviation {:e} exceeds tolerance {:e}",
            report.max_deviation, report.tol
        ))),
    }
}

pub fn cmd_margin(args: &MarginArgs, out: &mut dyn Write) -> CmdResult {
    if let Some(g) = args.gammas.iter().find(|g| !(**g > 0.0 && g.is_finite())) {
        return Err(Failure::User(format!(
            "step sizes must be positive, got {g}"
        )));
    }
    let data = load(&args.data.spec()?)?;
    let report = compute_margin(&data, args.tol, args.max_iters)?;
    if !report.separable {
        writeln!(out, "non-separable")?;
        return Ok(());
    }
    let n = data.len();
    let (r, mu) = (report.radius, report.mu);
    writeln!(
        out,
        "mu={:?} R={r:.6} nR²/μ²={} R²/μ²={}",
        round_to(mu, 9),
        round_to(batch_bound(n, r, mu)?, 6),
        round_to(normalized_bound(r, mu)?, 6)
    )?;
    for &g in &args.gammas {
        writeln!(
            out,
            "gamma={g} normalized-lr-gd bound={}",
            round_to(normalized_lrgd_bound(n, r, mu, g)?, 6)
        )?;
    }
    Ok(())
}

pub fn output_format(args: &GenArgs) -> Format {
    args.format
        .or_else(|| Format::from_path(&args.out))
        .unwrap_or(Format::Csv)
}

pub fn cmd_gen_dataset(args: &GenArgs, out: &mut dyn Write) -> CmdResult {
    let mut spec =
        GeneratorSpec::new(Source::parse(&args.source, args.input_format).map_err(Failure::user)?);
    spec.subsample = args.subsample.map(|k| (k, args.seed));
    spec.imbalance = args.imbalance.as_deref().map(parse_imbalance).transpose()?;
    spec.perturb = args.perturb.map(|s| (s, args.seed));
    let data = load(&spec)?;
    save(&data, &args.out, output_format(args))?;
    writeln!(
        out,
        "wrote {} samples of dimension {} to {}",
        data.len(),
        data.dim(),
        args.out.display()
    )?;
    Ok(())
}

pub fn plot_labels(args: &PlotArgs) -> Vec<String> {
    if !args.labels.is_empty() {
        return args.labels.clone();
    }
    args.traces
        .iter()
        .map(|p| {
            p.file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| p.display().to_string())
        })
        .collect()
}

pub fn cmd_plot(args: &PlotArgs, out: &mut dyn Write) -> CmdResult {
    let labels = plot_labels(args);
    if labels.len() != args.traces.len() {
        return Err(Failure::User(format!(
            "{} labels given for {} traces",
            labels.len(),
            args.traces.len()
        )));
    }
    let traces: Vec<Vec<TraceRecord>> = args
        .traces
        .iter()
        .map(|p| read_trace_csv(p).map_err(Failure::user))
        .collect::<Result<_, _>>()?;
    let pairs: Vec<(&str, &[TraceRecord])> = labels
        .iter()
        .map(String::as_str)
        .zip(traces.iter().map(Vec::as_slice))
        .collect();
    emit_plot_svg(&pairs, args.metric, &args.out, args.log_y).map_err(|e| match e {
        Error::Io { .. } => Failure::from(e),
        other => Failure::user(other),
    })?;
    writeln!(out, "wrote {}", args.out.display())?;
    Ok(())
}
