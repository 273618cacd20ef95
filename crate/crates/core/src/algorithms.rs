//! The five iterative solvers for the separation problem and a shared runner.
//!
//! Step functions are pure. [`run`] drives any of them from a start point,
//! checks strict separation before every step, and records a [`Trace`].

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::loss::{gradient_from_margins, loss_from_margins, normalized_direction};
use crate::numeric::Vector;

/// Coordinates beyond this magnitude abort a run with [`Outcome::Overflow`].
pub const OVERFLOW_LIMIT: f64 = 1e300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlgorithmKind {
    /// Logistic regression with gradient descent, `θ ← θ − γ∇f(θ)`.
    LrGd {
        gamma: f64,
    },
    /// `θ ← θ − γβ(θ)∇f(θ)`.
    NormalizedLrGd {
        gamma: f64,
    },
    BatchPerceptron,
    Perceptron,
    NormalizedBatchPerceptron,
}

impl AlgorithmKind {
    pub fn name(&self) -> &'static str {
        match self {
            AlgorithmKind::LrGd { .. } => "lr-gd",
            AlgorithmKind::NormalizedLrGd { .. } => "normalized-lr-gd",
            AlgorithmKind::BatchPerceptron => "batch-perceptron",
            AlgorithmKind::Perceptron => "perceptron",
            AlgorithmKind::NormalizedBatchPerceptron => "normalized-batch-perceptron",
        }
    }

    pub fn gamma(&self) -> Option<f64> {
        match *self {
            AlgorithmKind::LrGd { gamma } | AlgorithmKind::NormalizedLrGd { gamma } => Some(gamma),
            _ => None,
        }
    }

    pub fn uses_gamma(&self) -> bool {
        self.gamma().is_some()
    }

    /// Stable ordering used when sorting experiment rows.
    pub fn rank(&self) -> u8 {
        match self {
            AlgorithmKind::LrGd { .. } => 0,
            AlgorithmKind::NormalizedLrGd { .. } => 1,
            AlgorithmKind::BatchPerceptron => 2,
            AlgorithmKind::Perceptron => 3,
            AlgorithmKind::NormalizedBatchPerceptron => 4,
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gamma() {
            Some(g) => write!(f, "{}(gamma={g})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

/// Algorithm family without its step size, as named on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmName {
    LrGd,
    NormalizedLrGd,
    BatchPerceptron,
    Perceptron,
    NormalizedBatchPerceptron,
}

impl AlgorithmName {
    pub const ALL: [AlgorithmName; 5] = [
        AlgorithmName::LrGd,
        AlgorithmName::NormalizedLrGd,
        AlgorithmName::BatchPerceptron,
        AlgorithmName::Perceptron,
        AlgorithmName::NormalizedBatchPerceptron,
    ];

    pub fn needs_gamma(self) -> bool {
        matches!(self, AlgorithmName::LrGd | AlgorithmName::NormalizedLrGd)
    }

    /// Attaches a step size; `gamma` is ignored by the perceptron family.
    pub fn with_gamma(self, gamma: Option<f64>) -> Result<AlgorithmKind> {
        let need = || {
            gamma.ok_or_else(|| {
                Error::InvalidConfig(format!("{} requires a step size gamma", self.as_str()))
            })
        };
        Ok(match self {
            AlgorithmName::LrGd => AlgorithmKind::LrGd { gamma: need()? },
            AlgorithmName::NormalizedLrGd => AlgorithmKind::NormalizedLrGd { gamma: need()? },
            AlgorithmName::BatchPerceptron => AlgorithmKind::BatchPerceptron,
            AlgorithmName::Perceptron => AlgorithmKind::Perceptron,
            AlgorithmName::NormalizedBatchPerceptron => AlgorithmKind::NormalizedBatchPerceptron,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmName::LrGd => "lr-gd",
            AlgorithmName::NormalizedLrGd => "normalized-lr-gd",
            AlgorithmName::BatchPerceptron => "batch-perceptron",
            AlgorithmName::Perceptron => "perceptron",
            AlgorithmName::NormalizedBatchPerceptron => "normalized-batch-perceptron",
        }
    }
}

impl FromStr for AlgorithmName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlgorithmName::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<_> = AlgorithmName::ALL.iter().map(|a| a.as_str()).collect();
                Error::InvalidConfig(format!(
                    "unknown algorithm {s:?} (expected one of {})",
                    known.join(", ")
                ))
            })
    }
}

impl fmt::Display for AlgorithmName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Indices `i` with `yᵢaᵢᵀθ ≤ 0`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MistakeSet {
    indices: Vec<usize>,
}

impl MistakeSet {
    pub(crate) fn from_margins(margins: &[f64]) -> Self {
        MistakeSet {
            indices: margins
                .iter()
                .enumerate()
                .filter(|(_, &m)| m <= 0.0)
                .map(|(i, _)| i)
                .collect(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }
}

pub fn mistake_set(data: &Dataset, theta: &Vector) -> Result<MistakeSet> {
    Ok(MistakeSet::from_margins(&data.margins(theta)?))
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_finite() && gamma > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "step size must be positive and finite, got {gamma}"
        )))
    }
}

/// Sum of `yᵢaᵢ` over `indices`.
fn signed_sum(data: &Dataset, indices: impl IntoIterator<Item = usize>) -> Vec<f64> {
    let mut acc = vec![0.0; data.dim()];
    for i in indices {
        for (a, c) in acc.iter_mut().zip(data.signed(i)) {
            *a += c;
        }
    }
    acc
}

pub fn lr_gd_step(data: &Dataset, theta: &Vector, gamma: f64) -> Result<Vector> {
    check_gamma(gamma)?;
    let margins = data.margins(theta)?;
    Ok(lr_gd_from_margins(data, theta, &margins, gamma))
}

fn lr_gd_from_margins(data: &Dataset, theta: &Vector, margins: &[f64], gamma: f64) -> Vector {
    let grad = gradient_from_margins(data, margins);
    theta.add_scaled(-gamma, grad.as_slice())
}

pub fn normalized_lr_gd_step(data: &Dataset, theta: &Vector, gamma: f64) -> Result<Vector> {
    check_gamma(gamma)?;
    let margins = data.margins(theta)?;
    Ok(normalized_lr_gd_from_margins(data, theta, &margins, gamma))
}

fn normalized_lr_gd_from_margins(
    data: &Dataset,
    theta: &Vector,
    margins: &[f64],
    gamma: f64,
) -> Vector {
    theta.add_scaled(gamma, &normalized_direction(data, margins))
}

/// One batch-perceptron step. At `t = 0` every sample contributes with
/// weight `1/(2n)`; afterwards only the mistakes, with weight `1/n`.
pub fn batch_perceptron_step(data: &Dataset, theta_hat: &Vector, t: usize) -> Result<Vector> {
    let margins = data.margins(theta_hat)?;
    Ok(batch_perceptron_from_margins(data, theta_hat, &margins, t))
}

fn batch_perceptron_from_margins(
    data: &Dataset,
    theta_hat: &Vector,
    margins: &[f64],
    t: usize,
) -> Vector {
    let n = data.len() as f64;
    if t == 0 {
        let sum = signed_sum(data, 0..data.len());
        return theta_hat.add_scaled(1.0 / (2.0 * n), &sum);
    }
    let mistakes = MistakeSet::from_margins(margins);
    if mistakes.is_empty() {
        return theta_hat.clone();
    }
    let sum = signed_sum(data, mistakes.indices().iter().copied());
    theta_hat.add_scaled(1.0 / n, &sum)
}

/// Classical perceptron step on the smallest mistaken index.
pub fn perceptron_step(data: &Dataset, theta_hat: &Vector) -> Result<Vector> {
    let margins = data.margins(theta_hat)?;
    let j = margins
        .iter()
        .position(|&m| m <= 0.0)
        .ok_or(Error::AlreadySeparated)?;
    Ok(theta_hat.add_scaled(1.0, data.signed(j)))
}

pub fn normalized_batch_perceptron_step(data: &Dataset, theta_hat: &Vector) -> Result<Vector> {
    let margins = data.margins(theta_hat)?;
    let mistakes = MistakeSet::from_margins(&margins);
    if mistakes.is_empty() {
        return Err(Error::AlreadySeparated);
    }
    Ok(normalized_batch_from_mistakes(data, theta_hat, &mistakes))
}

fn normalized_batch_from_mistakes(
    data: &Dataset,
    theta_hat: &Vector,
    mistakes: &MistakeSet,
) -> Vector {
    let sum = signed_sum(data, mistakes.indices().iter().copied());
    theta_hat.add_scaled(1.0 / mistakes.len() as f64, &sum)
}

/// How the classical perceptron picks `j ∈ S_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    Smallest,
    Seeded(u64),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub kind: AlgorithmKind,
    /// Defaults to the origin when `None`.
    pub start: Option<Vector>,
    pub max_iters: usize,
    pub record_every: usize,
    pub record_params: bool,
    pub tie_break: TieBreak,
}

impl RunConfig {
    pub fn new(kind: AlgorithmKind, max_iters: usize) -> Self {
        RunConfig {
            kind,
            start: None,
            max_iters,
            record_every: 1,
            record_params: false,
            tie_break: TieBreak::Smallest,
        }
    }

    pub fn record_every(mut self, k: usize) -> Self {
        self.record_every = k;
        self
    }

    pub fn record_params(mut self, yes: bool) -> Self {
        self.record_params = yes;
        self
    }

    pub fn start(mut self, theta: Vector) -> Self {
        self.start = Some(theta);
        self
    }

    pub fn tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be at least 1".into()));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidConfig(
                "record_every must be at least 1".into(),
            ));
        }
        if let Some(g) = self.kind.gamma() {
            check_gamma(g)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub t: usize,
    pub loss: f64,
    pub grad_norm: f64,
    pub accuracy: f64,
    pub mistakes: usize,
    pub theta: Option<Vector>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// First iterate that strictly separates the data.
    Solved {
        t_star: usize,
    },
    Exhausted {
        max_iters: usize,
    },
    /// A coordinate left the representable range at step `t`.
    Overflow {
        t: usize,
    },
}

impl Outcome {
    pub fn solved_at(&self) -> Option<usize> {
        match *self {
            Outcome::Solved { t_star } => Some(t_star),
            _ => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Solved { t_star } => write!(f, "solved at t={t_star}"),
            Outcome::Exhausted { max_iters } => write!(f, "timeout at t={max_iters}"),
            Outcome::Overflow { t } => write!(f, "overflow at t={t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub algorithm: AlgorithmKind,
    pub records: Vec<TraceRecord>,
    pub outcome: Outcome,
    pub final_theta: Vector,
    /// Number of `(t, i)` pairs with `t ≥ 1` and an exactly zero margin.
    pub zero_margin_hits: usize,
}

impl Trace {
    pub fn last_record(&self) -> &TraceRecord {
        self.records.last().expect("t = 0 is always recorded")
    }

    /// Iterates at every recorded step, when parameters were recorded.
    pub fn params(&self) -> impl Iterator<Item = (usize, &Vector)> {
        self.records
            .iter()
            .filter_map(|r| r.theta.as_ref().map(|th| (r.t, th)))
    }
}

fn make_record(
    data: &Dataset,
    t: usize,
    theta: &Vector,
    margins: &[f64],
    keep_theta: bool,
) -> TraceRecord {
    let mistakes = margins.iter().filter(|&&m| m <= 0.0).count();
    let n = data.len();
    TraceRecord {
        t,
        loss: loss_from_margins(margins),
        grad_norm: gradient_from_margins(data, margins).norm(),
        accuracy: (n - mistakes) as f64 / n as f64,
        mistakes,
        theta: keep_theta.then(|| theta.clone()),
    }
}

/// Runs the configured algorithm until the iterate strictly separates the
/// data or `max_iters` steps have been taken.
pub fn run(data: &Dataset, config: &RunConfig) -> Result<Trace> {
    config.validate()?;
    let mut theta = match &config.start {
        Some(s) => {
            data.check_dim(s)?;
            s.clone()
        }
        None => Vector::zeros(data.dim()),
    };
    let mut rng = match config.tie_break {
        TieBreak::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        TieBreak::Smallest => None,
    };

    let mut records = Vec::new();
    let mut zero_hits = 0usize;
    let mut t = 0usize;
    let outcome = loop {
        let margins = data.margins_unchecked(theta.as_slice());
        if t >= 1 {
            zero_hits += margins.iter().filter(|&&m| m == 0.0).count();
        }
        let solved = margins.iter().all(|&m| m > 0.0);
        let finished = solved || t == config.max_iters;
        if t.is_multiple_of(config.record_every) || finished {
            records.push(make_record(data, t, &theta, &margins, config.record_params));
        }
        if solved {
            break Outcome::Solved { t_star: t };
        }
        if t == config.max_iters {
            break Outcome::Exhausted { max_iters: t };
        }

        let next = match config.kind {
            AlgorithmKind::LrGd { gamma } => lr_gd_from_margins(data, &theta, &margins, gamma),
            AlgorithmKind::NormalizedLrGd { gamma } => {
                normalized_lr_gd_from_margins(data, &theta, &margins, gamma)
            }
            AlgorithmKind::BatchPerceptron => {
                batch_perceptron_from_margins(data, &theta, &margins, t)
            }
            AlgorithmKind::Perceptron => {
                let mistakes = MistakeSet::from_margins(&margins);
                let j = match rng.as_mut() {
                    Some(r) => mistakes.indices()[r.random_range(0..mistakes.len())],
                    None => mistakes.indices()[0],
                };
                theta.add_scaled(1.0, data.signed(j))
            }
            AlgorithmKind::NormalizedBatchPerceptron => {
                normalized_batch_from_mistakes(data, &theta, &MistakeSet::from_margins(&margins))
            }
        };
        t += 1;
        if !next.is_finite() || next.norm_inf() > OVERFLOW_LIMIT {
            if records.last().map(|r| r.t) != Some(t - 1) {
                records.push(make_record(
                    data,
                    t - 1,
                    &theta,
                    &margins,
                    config.record_params,
                ));
            }
            break Outcome::Overflow { t };
        }
        theta = next;
    };

    Ok(Trace {
        algorithm: config.kind,
        records,
        outcome,
        final_theta: theta,
        zero_margin_hits: zero_hits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Label;
    use crate::datasets::{two_point_dataset, worst_case_dataset};

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn close(a: &Vector, b: &[f64], tol: f64) -> bool {
        a.as_slice()
            .iter()
            .zip(b)
            .all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn mistake_set_examples() {
        let d = two_point_dataset();
        assert_eq!(
            mistake_set(&d, &Vector::zeros(2)).unwrap().indices(),
            &[0, 1]
        );
        assert_eq!(mistake_set(&d, &v(&[0.5, 0.75])).unwrap().indices(), &[0]);
        assert!(mistake_set(&d, &v(&[1.0, 0.25])).unwrap().is_empty());
    }

    #[test]
    fn lr_gd_step_examples() {
        let d = two_point_dataset();
        let th1 = lr_gd_step(&d, &Vector::zeros(2), 100.0).unwrap();
        assert_eq!(th1.as_slice(), &[50.0, 75.0]);
        let th2 = lr_gd_step(&d, &th1, 100.0).unwrap();
        assert!(close(&th2, &[100.0, 25.0], 1e-8));

        let paired = Dataset::new(vec![vec![1.0, 2.0]; 2], vec![Label::Pos, Label::Neg]).unwrap();
        let th = lr_gd_step(&paired, &Vector::zeros(2), 1e3).unwrap();
        assert_eq!(th.as_slice(), &[0.0, 0.0]);

        assert!(lr_gd_step(&d, &Vector::zeros(2), 0.0).is_err());
        assert!(lr_gd_step(&d, &Vector::zeros(2), -1.0).is_err());
    }

    #[test]
    fn normalized_lr_gd_step_examples() {
        let d = two_point_dataset();
        let th = normalized_lr_gd_step(&d, &Vector::zeros(2), 1.0).unwrap();
        assert!(close(&th, &[1.0, 1.5], 1e-15));

        let w = worst_case_dataset(10).unwrap();
        let gamma = 1e6;
        let th = normalized_lr_gd_step(&w, &Vector::zeros(2), gamma).unwrap();
        assert!(close(&th.scaled(1.0 / gamma), &[0.5, 0.8], 1e-6));

        let paired = Dataset::new(vec![vec![1.0, 2.0]; 2], vec![Label::Pos, Label::Neg]).unwrap();
        let th = normalized_lr_gd_step(&paired, &Vector::zeros(2), 5.0).unwrap();
        assert_eq!(th.as_slice(), &[0.0, 0.0]);
    }

    #[test]
    fn batch_perceptron_step_examples() {
        let d = two_point_dataset();
        let th = batch_perceptron_step(&d, &Vector::zeros(2), 0).unwrap();
        assert_eq!(th.as_slice(), &[0.5, 0.75]);

        for n in [10usize, 37, 100] {
            let w = worst_case_dataset(n).unwrap();
            let nf = n as f64;
            let th1 = batch_perceptron_step(&w, &Vector::zeros(2), 0).unwrap();
            assert!(close(&th1, &[0.25, (nf - 2.0) / (2.0 * nf)], 1e-15));
            let th2 = batch_perceptron_step(&w, &th1, 1).unwrap();
            assert!(close(
                &th2,
                &[0.25 * (1.0 + 2.0 / nf), (nf - 4.0) / (2.0 * nf)],
                1e-15
            ));
        }

        // separated iterate at t ≥ 1 stays put
        let th = batch_perceptron_step(&d, &v(&[1.0, 0.25]), 3).unwrap();
        assert_eq!(th.as_slice(), &[1.0, 0.25]);
    }

    #[test]
    fn perceptron_step_examples() {
        let d = two_point_dataset();
        assert_eq!(
            perceptron_step(&d, &Vector::zeros(2)).unwrap().as_slice(),
            &[1.0, -1.0]
        );
        assert_eq!(
            perceptron_step(&d, &v(&[0.5, 0.75])).unwrap().as_slice(),
            &[1.5, -0.25]
        );
        assert!(matches!(
            perceptron_step(&d, &v(&[1.0, 0.25])),
            Err(Error::AlreadySeparated)
        ));
    }

    #[test]
    fn normalized_batch_perceptron_step_examples() {
        let w = worst_case_dataset(10).unwrap();
        let th1 = normalized_batch_perceptron_step(&w, &Vector::zeros(2)).unwrap();
        assert!(close(&th1, &[0.5, 0.8], 1e-15));
        let th2 = normalized_batch_perceptron_step(&w, &th1).unwrap();
        assert!(close(&th2, &[1.0, -0.2], 1e-15));
        assert!(mistake_set(&w, &th2).unwrap().is_empty());

        let d = two_point_dataset();
        let th = normalized_batch_perceptron_step(&d, &v(&[0.5, 0.75])).unwrap();
        assert_eq!(th.as_slice(), &[1.5, -0.25]);
        assert!(matches!(
            normalized_batch_perceptron_step(&d, &v(&[1.0, 0.25])),
            Err(Error::AlreadySeparated)
        ));
    }

    #[test]
    fn run_examples() {
        let d = two_point_dataset();
        let tr = run(&d, &RunConfig::new(AlgorithmKind::BatchPerceptron, 100)).unwrap();
        assert_eq!(tr.outcome, Outcome::Solved { t_star: 2 });
        assert!(close(&tr.final_theta, &[1.0, 0.25], 1e-15));
        assert_eq!(tr.records.len(), 3);

        let w = worst_case_dataset(10).unwrap();
        let tr = run(&w, &RunConfig::new(AlgorithmKind::BatchPerceptron, 100)).unwrap();
        assert_eq!(tr.outcome, Outcome::Solved { t_star: 4 });
        let tr = run(
            &w,
            &RunConfig::new(AlgorithmKind::NormalizedBatchPerceptron, 100),
        )
        .unwrap();
        assert_eq!(tr.outcome, Outcome::Solved { t_star: 2 });
    }

    #[test]
    fn run_rejects_bad_config() {
        let d = two_point_dataset();
        assert!(run(&d, &RunConfig::new(AlgorithmKind::Perceptron, 0)).is_err());
        assert!(run(
            &d,
            &RunConfig::new(AlgorithmKind::Perceptron, 5).record_every(0)
        )
        .is_err());
        assert!(run(&d, &RunConfig::new(AlgorithmKind::LrGd { gamma: 0.0 }, 5)).is_err());
        let bad_start = RunConfig::new(AlgorithmKind::Perceptron, 5).start(Vector::zeros(3));
        assert!(run(&d, &bad_start).is_err());
    }

    #[test]
    fn separating_start_is_solved_at_zero() {
        let d = two_point_dataset();
        let cfg = RunConfig::new(AlgorithmKind::BatchPerceptron, 10).start(v(&[1.0, 0.25]));
        let tr = run(&d, &cfg).unwrap();
        assert_eq!(tr.outcome, Outcome::Solved { t_star: 0 });
        assert_eq!(tr.records.len(), 1);
        assert_eq!(tr.records[0].accuracy, 1.0);
    }

    #[test]
    fn record_cadence_includes_final_step() {
        // never separable: identical point in both classes
        let d = Dataset::new(vec![vec![1.0, 1.0]; 2], vec![Label::Pos, Label::Neg]).unwrap();
        let cfg = RunConfig::new(AlgorithmKind::Perceptron, 25).record_every(10);
        let tr = run(&d, &cfg).unwrap();
        let ts: Vec<_> = tr.records.iter().map(|r| r.t).collect();
        assert_eq!(ts, vec![0, 10, 20, 25]);
        assert_eq!(tr.outcome, Outcome::Exhausted { max_iters: 25 });
        assert!(!mistake_set(&d, &tr.final_theta).unwrap().is_empty());
    }

    #[test]
    fn zero_margins_are_counted() {
        let d = Dataset::new(
            vec![vec![1.0, 0.0], vec![-1.0, 0.0]],
            vec![Label::Pos, Label::Pos],
        )
        .unwrap();
        let tr = run(&d, &RunConfig::new(AlgorithmKind::BatchPerceptron, 3)).unwrap();
        assert!(tr.zero_margin_hits >= 2);
        assert!(matches!(tr.outcome, Outcome::Exhausted { .. }));
    }

    #[test]
    fn overflow_is_reported() {
        let d = Dataset::new(vec![vec![1e200]], vec![Label::Pos]).unwrap();
        let cfg = RunConfig::new(AlgorithmKind::LrGd { gamma: 1e150 }, 10).start(v(&[-1.0]));
        let tr = run(&d, &cfg).unwrap();
        assert_eq!(tr.outcome, Outcome::Overflow { t: 1 });
        assert_eq!(tr.final_theta.as_slice(), &[-1.0]);
        assert_eq!(tr.last_record().t, 0);
    }

    #[test]
    fn seeded_tie_break_is_deterministic() {
        let w = worst_case_dataset(10).unwrap();
        let cfg = RunConfig::new(AlgorithmKind::Perceptron, 1000).tie_break(TieBreak::Seeded(3));
        let a = run(&w, &cfg).unwrap();
        let b = run(&w, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.outcome.solved_at().is_some());
    }

    #[test]
    fn algorithm_names_parse() {
        for a in AlgorithmName::ALL {
            assert_eq!(a.as_str().parse::<AlgorithmName>().unwrap(), a);
        }
        assert!("sgd".parse::<AlgorithmName>().is_err());
        assert!(AlgorithmName::LrGd.with_gamma(None).is_err());
        assert_eq!(
            AlgorithmName::BatchPerceptron
                .with_gamma(Some(3.0))
                .unwrap(),
            AlgorithmKind::BatchPerceptron
        );
    }
}
