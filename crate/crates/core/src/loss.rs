//! Logistic loss, its gradient, the per-sample sigmoid weights, and the β
//! factor used by normalized gradient descent.
//!
//! Everything is driven by the signed margins `mᵢ = yᵢaᵢᵀθ`:
//!
//! ```text
//! f(θ)   = (1/n) Σ log(1 + exp(−mᵢ))
//! wᵢ     = (1 + exp(mᵢ))⁻¹
//! ∇f(θ)  = −(1/n) Σ wᵢ yᵢaᵢ
//! β(θ)   = ((1/n) Σ wᵢ)⁻¹
//! ```

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::numeric::{log1pexp_unchecked, neg_sigmoid_unchecked, Vector};

/// Sigmoid weights `wᵢ = (1 + exp(yᵢaᵢᵀθ))⁻¹`, one per sample.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightProfile {
    weights: Vec<f64>,
}

impl WeightProfile {
    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn mean(&self) -> f64 {
        self.weights.iter().sum::<f64>() / self.weights.len() as f64
    }
}

pub fn logistic_loss(data: &Dataset, theta: &Vector) -> Result<f64> {
    let margins = data.margins(theta)?;
    Ok(loss_from_margins(&margins))
}

pub(crate) fn loss_from_margins(margins: &[f64]) -> f64 {
    margins.iter().map(|&m| log1pexp_unchecked(-m)).sum::<f64>() / margins.len() as f64
}

pub fn per_sample_weights(data: &Dataset, theta: &Vector) -> Result<WeightProfile> {
    let margins = data.margins(theta)?;
    Ok(WeightProfile {
        weights: margins.iter().map(|&m| neg_sigmoid_unchecked(m)).collect(),
    })
}

pub fn logistic_gradient(data: &Dataset, theta: &Vector) -> Result<Vector> {
    let margins = data.margins(theta)?;
    Ok(gradient_from_margins(data, &margins))
}

/// Single pass accumulating `wᵢyᵢaᵢ`; no per-sample weights are stored.
pub(crate) fn gradient_from_margins(data: &Dataset, margins: &[f64]) -> Vector {
    let mut acc = vec![0.0; data.dim()];
    for (z, &m) in data.signed_rows().zip(margins) {
        let w = neg_sigmoid_unchecked(m);
        for (a, c) in acc.iter_mut().zip(z) {
            *a += w * c;
        }
    }
    let scale = -1.0 / data.len() as f64;
    acc.iter_mut().for_each(|a| *a *= scale);
    Vector::from_raw(acc)
}

/// `β(θ) = n / Σ wᵢ`, always ≥ 1.
///
/// Evaluated in log space so that weights far below `f64::MIN_POSITIVE` still
/// contribute; fails only when β itself is not representable.
pub fn beta(data: &Dataset, theta: &Vector) -> Result<f64> {
    let margins = data.margins(theta)?;
    let log_w: Vec<f64> = margins.iter().map(|&m| -log1pexp_unchecked(m)).collect();
    let top = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let scaled_sum: f64 = log_w.iter().map(|l| (l - top).exp()).sum();
    let log_mean = top + scaled_sum.ln() - (data.len() as f64).ln();
    let b = (-log_mean).exp();
    if b.is_finite() {
        Ok(b.max(1.0))
    } else {
        Err(Error::NonFinite(b))
    }
}

/// The combined normalized direction `−β(θ)∇f(θ) = Σ wᵢyᵢaᵢ / Σ wᵢ`.
///
/// β and the gradient come out of one weight pass over the same margins. The
/// weights are rescaled by the largest one before summing, which keeps the
/// ratio exact even when every individual `wᵢ` underflows.
pub(crate) fn normalized_direction(data: &Dataset, margins: &[f64]) -> Vec<f64> {
    let log_w: Vec<f64> = margins.iter().map(|&m| -log1pexp_unchecked(m)).collect();
    let top = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut acc = vec![0.0; data.dim()];
    let mut total = 0.0;
    for (z, l) in data.signed_rows().zip(&log_w) {
        let w = (l - top).exp();
        total += w;
        for (a, c) in acc.iter_mut().zip(z) {
            *a += w * c;
        }
    }
    acc.iter_mut().for_each(|a| *a /= total);
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Label;
    use crate::datasets::{two_point_dataset, worst_case_dataset};

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn loss_at_origin_is_log_two() {
        let ln2 = std::f64::consts::LN_2;
        assert_eq!(
            logistic_loss(&two_point_dataset(), &Vector::zeros(2)).unwrap(),
            ln2
        );
        assert_eq!(
            logistic_loss(&worst_case_dataset(10).unwrap(), &Vector::zeros(2)).unwrap(),
            ln2
        );
    }

    #[test]
    fn loss_after_first_large_step() {
        let gamma = 100.0;
        let theta = v(&[0.5 * gamma, 0.75 * gamma]);
        let expected = 0.5 * (log1pexp_unchecked(25.0) + log1pexp_unchecked(-350.0));
        let got = logistic_loss(&two_point_dataset(), &theta).unwrap();
        assert!((got - expected).abs() < 1e-12);
        assert!((got - 12.5).abs() < 1e-9);
    }

    #[test]
    fn weights_examples() {
        let d = two_point_dataset();
        assert!(per_sample_weights(&d, &Vector::zeros(2))
            .unwrap()
            .as_slice()
            .iter()
            .all(|&w| w == 0.5));
        let w = per_sample_weights(&d, &v(&[0.5e6, 0.75e6])).unwrap();
        assert!((w.as_slice()[0] - 1.0).abs() < 1e-12);
        assert!(w.as_slice()[1].abs() < 1e-12);

        let single = Dataset::new(vec![vec![1.0, 0.0]], vec![Label::Pos]).unwrap();
        let w = per_sample_weights(&single, &v(&[1.0, 0.0])).unwrap();
        assert!((w.as_slice()[0] - 1.0 / (1.0 + std::f64::consts::E)).abs() < 1e-15);
        assert!((w.as_slice()[0] - 0.26894).abs() < 1e-5);
    }

    #[test]
    fn gradient_examples() {
        let d = two_point_dataset();
        let g = logistic_gradient(&d, &Vector::zeros(2)).unwrap();
        assert_eq!(g.as_slice(), &[-0.5, -0.75]);

        let g = logistic_gradient(&d, &v(&[0.5e6, 0.75e6])).unwrap();
        assert!((g[0] + 0.5).abs() < 1e-12 && (g[1] - 0.5).abs() < 1e-12);
        assert!((g.norm() - 2f64.sqrt() / 2.0).abs() < 1e-12);

        let paired = Dataset::new(
            vec![vec![0.3, -2.0], vec![0.3, -2.0]],
            vec![Label::Pos, Label::Neg],
        )
        .unwrap();
        let g = logistic_gradient(&paired, &Vector::zeros(2)).unwrap();
        assert_eq!(g.as_slice(), &[0.0, 0.0]);
    }

    #[test]
    fn beta_examples() {
        let d = two_point_dataset();
        assert_eq!(beta(&d, &Vector::zeros(2)).unwrap(), 2.0);
        assert!((beta(&d, &v(&[0.5e6, 0.75e6])).unwrap() - 2.0).abs() < 1e-9);

        // both signed rows (0.5, ±1) have margin −5·10⁵ here
        let w = worst_case_dataset(10).unwrap();
        let b = beta(&w, &v(&[-1e6, 0.0])).unwrap();
        assert!((b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn beta_times_mean_weight_is_one() {
        let d = worst_case_dataset(7).unwrap();
        let theta = v(&[0.3, -0.2]);
        let b = beta(&d, &theta).unwrap();
        let mean = per_sample_weights(&d, &theta).unwrap().mean();
        assert!((b * mean - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let d = two_point_dataset();
        let bad = Vector::zeros(3);
        assert!(matches!(
            logistic_loss(&d, &bad),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(logistic_gradient(&d, &bad).is_err());
        assert!(per_sample_weights(&d, &bad).is_err());
        assert!(beta(&d, &bad).is_err());
    }

    #[test]
    fn normalized_direction_matches_beta_times_gradient() {
        let d = worst_case_dataset(10).unwrap();
        let theta = v(&[0.2, 0.1]);
        let margins = d.margins(&theta).unwrap();
        let dir = normalized_direction(&d, &margins);
        let b = beta(&d, &theta).unwrap();
        let g = logistic_gradient(&d, &theta).unwrap();
        for k in 0..2 {
            assert!((dir[k] + b * g[k]).abs() < 1e-12);
        }
    }
}
