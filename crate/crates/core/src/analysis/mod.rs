//! Margin and radius, separation checks, iteration bounds, and the
//! large-step-size reduction verifier.

mod bounds;
mod margin;
mod reduction;

pub use bounds::{batch_bound, normalized_bound, normalized_lrgd_bound};
pub use margin::{compute_margin, MarginReport, DEFAULT_MAX_ITERS, DEFAULT_TOL};
pub use reduction::{probe_degeneracy, verify_reduction, ReductionReport, Verdict};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::numeric::Vector;

/// `R = maxᵢ ‖aᵢ‖`.
pub fn radius(data: &Dataset) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::NoSamples);
    }
    Ok(data.radius())
}

/// True iff `yᵢaᵢᵀθ > 0` for every sample.
pub fn is_separated(data: &Dataset, theta: &Vector) -> Result<bool> {
    Ok(data.margins(theta)?.iter().all(|&m| m > 0.0))
}
