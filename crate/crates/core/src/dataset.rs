//! Labeled binary-classification data.

use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{dot_slices, norm, Vector};

/// Binary class label, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Neg,
    Pos,
}

impl Label {
    pub fn sign(self) -> f64 {
        match self {
            Label::Pos => 1.0,
            Label::Neg => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Label::Pos => 1,
            Label::Neg => -1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Label> {
        match v {
            1 => Some(Label::Pos),
            -1 => Some(Label::Neg),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Pos => f.write_str("+1"),
            Label::Neg => f.write_str("-1"),
        }
    }
}

/// `n` feature vectors in ℝᵈ with labels in {−1, +1}.
///
/// The signed features `yᵢaᵢ` are cached at construction because every
/// algorithm in the crate only ever touches the data through them.
#[derive(Clone, PartialEq)]
pub struct Dataset {
    dim: usize,
    features: Vec<f64>,
    labels: Vec<Label>,
    signed: Vec<f64>,
}

impl Dataset {
    pub fn new(features: Vec<Vec<f64>>, labels: Vec<Label>) -> Result<Self> {
        if features.is_empty() {
            return Err(Error::NoSamples);
        }
        if features.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: features.len(),
                found: labels.len(),
            });
        }
        let dim = features[0].len();
        if dim == 0 {
            return Err(Error::InvalidConfig(
                "feature dimension must be at least 1".into(),
            ));
        }
        let mut flat = Vec::with_capacity(dim * features.len());
        for row in &features {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            if let Some(&bad) = row.iter().find(|c| !c.is_finite()) {
                return Err(Error::NonFinite(bad));
            }
            flat.extend_from_slice(row);
        }
        Ok(Self::from_flat(dim, flat, labels))
    }

    pub(crate) fn from_flat(dim: usize, features: Vec<f64>, labels: Vec<Label>) -> Self {
        debug_assert_eq!(features.len(), dim * labels.len());
        let signed = features
            .chunks_exact(dim)
            .zip(&labels)
            .flat_map(|(row, y)| row.iter().map(move |c| y.sign() * c))
            .collect();
        Dataset {
            dim,
            features,
            labels,
            signed,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn feature(&self, i: usize) -> &[f64] {
        &self.features[i * self.dim..(i + 1) * self.dim]
    }

    pub fn label(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// `yᵢaᵢ` for sample `i`.
    pub fn signed(&self, i: usize) -> &[f64] {
        &self.signed[i * self.dim..(i + 1) * self.dim]
    }

    pub fn signed_rows(&self) -> impl Iterator<Item = &[f64]> {
        self.signed.chunks_exact(self.dim)
    }

    pub fn rows(&self) -> impl Iterator<Item = (&[f64], Label)> {
        self.features
            .chunks_exact(self.dim)
            .zip(self.labels.iter().copied())
    }

    pub(crate) fn check_dim(&self, theta: &Vector) -> Result<()> {
        if theta.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: theta.dim(),
            });
        }
        Ok(())
    }

    /// Signed margins `yᵢaᵢᵀθ` for every sample.
    pub fn margins(&self, theta: &Vector) -> Result<Vec<f64>> {
        self.check_dim(theta)?;
        Ok(self.margins_unchecked(theta.as_slice()))
    }

    pub(crate) fn margins_unchecked(&self, theta: &[f64]) -> Vec<f64> {
        self.signed_rows().map(|z| dot_slices(z, theta)).collect()
    }

    /// `R = maxᵢ ‖aᵢ‖`.
    pub fn radius(&self) -> f64 {
        self.features
            .chunks_exact(self.dim)
            .map(norm)
            .fold(0.0, f64::max)
    }

    /// Keeps the samples at `indices`, in the order given.
    pub fn select(&self, indices: &[usize]) -> Dataset {
        let mut features = Vec::with_capacity(indices.len() * self.dim);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            features.extend_from_slice(self.feature(i));
            labels.push(self.labels[i]);
        }
        Dataset::from_flat(self.dim, features, labels)
    }
}

impl fmt::Debug for Dataset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dataset")
            .field("n", &self.len())
            .field("dim", &self.dim)
            .finish()
    }
}
