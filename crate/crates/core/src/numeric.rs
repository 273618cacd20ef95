//! Scalar primitives and the dense vector type shared by every other module.
//!
//! All arithmetic is `f64`. The two logistic helpers are written in branch form
//! so that arguments of magnitude `γ·R` (routinely 10⁶ and beyond) neither
//! overflow nor lose the asymptote.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

/// A dense, finite vector in ℝᵈ with `d ≥ 1`.
#[derive(Clone, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    /// Builds a vector, rejecting empty input and non-finite coordinates.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidConfig(
                "vector dimension must be at least 1".into(),
            ));
        }
        if let Some(&bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::NonFinite(bad));
        }
        Ok(Vector(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "vector dimension must be at least 1");
        Vector(vec![0.0; dim])
    }

    /// Wraps coordinates already known to be finite and non-empty.
    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty());
        Vector(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }

    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn dot(&self, other: &Vector) -> Result<f64> {
        dot(self, other)
    }

    pub fn scaled(&self, factor: f64) -> Vector {
        Vector(self.0.iter().map(|c| c * factor).collect())
    }

    /// `self + factor·other`, assuming equal dimensions.
    pub(crate) fn add_scaled(&self, factor: f64, other: &[f64]) -> Vector {
        debug_assert_eq!(self.0.len(), other.len());
        Vector(
            self.0
                .iter()
                .zip(other)
                .map(|(a, b)| a + factor * b)
                .collect(),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

fn check_finite(x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite(x))
    }
}

/// `(1 + exp(x))⁻¹`, the weight a sample with signed margin `x` receives in
/// the logistic gradient.
pub fn neg_sigmoid(x: f64) -> Result<f64> {
    check_finite(x).map(neg_sigmoid_unchecked)
}

#[inline]
pub(crate) fn neg_sigmoid_unchecked(x: f64) -> f64 {
    if x >= 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// `log(1 + exp(x))` computed as `max(x, 0) + log1p(exp(-|x|))`.
pub fn log1pexp(x: f64) -> Result<f64> {
    check_finite(x).map(log1pexp_unchecked)
}

#[inline]
pub(crate) fn log1pexp_unchecked(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

pub fn dot(u: &Vector, v: &Vector) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    Ok(dot_slices(&u.0, &v.0))
}

#[inline]
pub(crate) fn dot_slices(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

#[inline]
pub(crate) fn norm(u: &[f64]) -> f64 {
    dot_slices(u, u).sqrt()
}
