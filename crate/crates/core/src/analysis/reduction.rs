//! Side-by-side comparison of gradient descent at step size `γ` with its
//! perceptron limit, and a probe for exactly-zero margins along the batch
//! perceptron trajectory.

use crate::algorithms::{run, AlgorithmKind, RunConfig, Trace};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::numeric::Vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionReport {
    pub gamma: f64,
    pub normalized: bool,
    /// Last step compared: `min(horizon, t*_smooth, t*_discrete)`.
    pub horizon: usize,
    /// `sup_t ‖θ_t/γ − θ̂_t‖∞` over the compared steps.
    pub max_deviation: f64,
    pub degenerate_hits: usize,
    pub tol: f64,
    pub verdict: Verdict,
}

fn trajectory(data: &Dataset, kind: AlgorithmKind, horizon: usize) -> Result<Trace> {
    run(data, &RunConfig::new(kind, horizon).record_params(true))
}

pub fn verify_reduction(
    data: &Dataset,
    gamma: f64,
    horizon: usize,
    tol: f64,
    normalized: bool,
) -> Result<ReductionReport> {
    if horizon == 0 {
        return Err(Error::InvalidConfig("horizon must be at least 1".into()));
    }
    let (smooth_kind, discrete_kind) = if normalized {
        (
            AlgorithmKind::NormalizedLrGd { gamma },
            AlgorithmKind::NormalizedBatchPerceptron,
        )
    } else {
        (
            AlgorithmKind::LrGd { gamma },
            AlgorithmKind::BatchPerceptron,
        )
    };
    let (smooth, discrete) = rayon::join(
        || trajectory(data, smooth_kind, horizon),
        || trajectory(data, discrete_kind, horizon),
    );
    let (smooth, discrete) = (smooth?, discrete?);

    let smooth_params: Vec<(usize, &Vector)> = smooth.params().collect();
    let discrete_params: Vec<(usize, &Vector)> = discrete.params().collect();
    let compared = smooth_params.len().min(discrete_params.len());
    let mut max_deviation = 0.0f64;
    for ((ts, th), (td, th_hat)) in smooth_params.iter().zip(&discrete_params).take(compared) {
        debug_assert_eq!(ts, td);
        let dev = th
            .as_slice()
            .iter()
            .zip(th_hat.as_slice())
            .map(|(a, b)| (a / gamma - b).abs())
            .fold(0.0, f64::max);
        max_deviation = max_deviation.max(dev);
    }
    let last_t = compared.saturating_sub(1);

    let degenerate_hits = discrete_params
        .iter()
        .take(compared)
        .filter(|(t, _)| *t >= 1)
        .map(|(_, th)| {
            data.margins(th)
                .map(|m| m.iter().filter(|&&x| x == 0.0).count())
        })
        .sum::<Result<usize>>()?;

    let verdict = if max_deviation <= tol && degenerate_hits == 0 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(ReductionReport {
        gamma,
        normalized,
        horizon: last_t,
        max_deviation,
        degenerate_hits,
        tol,
        verdict,
    })
}

/// Counts `(t, i)` pairs with `t ≥ 1` and `yᵢaᵢᵀθ̂_t = 0` exactly along the
/// first `horizon` batch perceptron steps.
pub fn probe_degeneracy(data: &Dataset, horizon: usize) -> Result<usize> {
    if horizon == 0 {
        return Err(Error::InvalidConfig("horizon must be at least 1".into()));
    }
    Ok(run(
        data,
        &RunConfig::new(AlgorithmKind::BatchPerceptron, horizon),
    )?
    .zero_margin_hits)
}
