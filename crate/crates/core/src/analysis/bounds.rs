//! Worst-case iteration counts for the perceptron family and normalized
//! gradient descent, as functions of `n`, `R`, `μ` and `γ`.

use crate::error::{Error, Result};

fn check_margin(mu: f64) -> Result<()> {
    if mu > 0.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(Error::NotSeparable(mu))
    }
}

/// `nR²/μ²`, the batch perceptron bound.
pub fn batch_bound(n: usize, radius: f64, mu: f64) -> Result<f64> {
    check_margin(mu)?;
    Ok(n as f64 * radius * radius / (mu * mu))
}

/// `R²/μ²`, shared by the classical and normalized batch perceptrons.
pub fn normalized_bound(radius: f64, mu: f64) -> Result<f64> {
    check_margin(mu)?;
    Ok(radius * radius / (mu * mu))
}

/// `R²/μ² + 2·log(2n − 1)/(γμ²)` for normalized gradient descent.
pub fn normalized_lrgd_bound(n: usize, radius: f64, mu: f64, gamma: f64) -> Result<f64> {
    check_margin(mu)?;
    if n == 0 {
        return Err(Error::NoSamples);
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "step size must be positive, got {gamma}"
        )));
    }
    let log_term = (2.0 * n as f64 - 1.0).ln();
    Ok(normalized_bound(radius, mu)? + 2.0 * log_term / (gamma * mu * mu))
}
