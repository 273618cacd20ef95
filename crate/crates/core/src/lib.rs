//! Gradient descent on the logistic loss for linearly separable data, its
//! large-step-size limit (the batch perceptron), and the tools used to study
//! how fast each method reaches a separating direction.

pub mod algorithms;
pub mod analysis;
pub mod dataset;
pub mod datasets;
mod error;
pub mod experiments;
pub mod loss;
pub mod numeric;

pub use algorithms::{run, AlgorithmKind, AlgorithmName, Outcome, RunConfig, Trace, TraceRecord};
pub use dataset::{Dataset, Label};
pub use error::{Error, Result};
pub use numeric::Vector;
