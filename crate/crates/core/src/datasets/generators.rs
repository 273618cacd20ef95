use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use crate::dataset::{Dataset, Label};
use crate::error::{Error, Result};
use crate::numeric::{dot_slices, norm};

/// Draw budget for [`random_separable`] before giving up.
pub const MAX_REJECTION_DRAWS: usize = 1_000_000;

/// `((1, −1), +1)` and `((−1, −4), −1)`.
///
/// One gradient step at a large step size makes the loss blow up, yet the
/// second step already separates.
pub fn two_point_dataset() -> Dataset {
    Dataset::from_flat(2, vec![1.0, -1.0, -1.0, -4.0], vec![Label::Pos, Label::Neg])
}

/// One sample `((0.5, −1), +1)` followed by `n − 1` copies of `((−0.5, −1), −1)`.
///
/// The batch perceptron needs a number of iterations linear in `n` here, while
/// margin and radius stay at 0.5 and √1.25.
pub fn worst_case_dataset(n: usize) -> Result<Dataset> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!(
            "worst-case dataset needs n >= 2, got {n}"
        )));
    }
    let mut features = Vec::with_capacity(2 * n);
    features.extend_from_slice(&[0.5, -1.0]);
    let mut labels = vec![Label::Pos];
    for _ in 1..n {
        features.extend_from_slice(&[-0.5, -1.0]);
        labels.push(Label::Neg);
    }
    Ok(Dataset::from_flat(2, features, labels))
}

fn unit_gaussian(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(rng)).collect();
        let len = norm(&v);
        if len > 1e-12 {
            return v.into_iter().map(|c| c / len).collect();
        }
    }
}

/// Linearly separable data with margin at least `target_margin` around a
/// hidden unit direction, features uniform in the ball of radius
/// `target_radius`. Points inside the margin slab are redrawn.
pub fn random_separable(
    n: usize,
    d: usize,
    target_margin: f64,
    target_radius: f64,
    seed: u64,
) -> Result<Dataset> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidConfig(
            "random dataset needs n >= 1 and d >= 1".into(),
        ));
    }
    if !(target_margin > 0.0 && target_margin < target_radius && target_radius.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "need 0 < margin < radius, got margin {target_margin} and radius {target_radius}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hidden = unit_gaussian(&mut rng, d);
    let mut features = Vec::with_capacity(n * d);
    let mut labels = Vec::with_capacity(n);
    let mut draws = 0usize;
    while labels.len() < n {
        if draws == MAX_REJECTION_DRAWS {
            return Err(Error::RejectionFailed(draws));
        }
        draws += 1;
        let dir = unit_gaussian(&mut rng, d);
        let u: f64 = rng.random();
        let r = target_radius * u.powf(1.0 / d as f64);
        let point: Vec<f64> = dir.iter().map(|c| c * r).collect();
        let proj = dot_slices(&hidden, &point);
        if proj.abs() < target_margin {
            continue;
        }
        features.extend_from_slice(&point);
        labels.push(if proj > 0.0 { Label::Pos } else { Label::Neg });
    }
    Ok(Dataset::from_flat(d, features, labels))
}

/// Repeats every sample of `class` `factor` times, copies adjacent.
pub fn imbalance(data: &Dataset, class: Label, factor: usize) -> Result<Dataset> {
    if factor == 0 {
        return Err(Error::InvalidConfig(
            "imbalance factor must be at least 1".into(),
        ));
    }
    if !data.labels().contains(&class) {
        return Err(Error::ClassAbsent(class.as_i8()));
    }
    let mut indices = Vec::new();
    for (i, &y) in data.labels().iter().enumerate() {
        let copies = if y == class { factor } else { 1 };
        indices.extend(std::iter::repeat_n(i, copies));
    }
    Ok(data.select(&indices))
}

/// Adds i.i.d. `N(0, sigma²)` noise to every feature coordinate.
pub fn perturb(data: &Dataset, sigma: f64, seed: u64) -> Result<Dataset> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "sigma must be finite and >= 0, got {sigma}"
        )));
    }
    if sigma == 0.0 {
        return Ok(data.clone());
    }
    let normal = Normal::new(0.0, sigma).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut features = Vec::with_capacity(data.len() * data.dim());
    for (row, _) in data.rows() {
        features.extend(row.iter().map(|c| c + normal.sample(&mut rng)));
    }
    Ok(Dataset::from_flat(
        data.dim(),
        features,
        data.labels().to_vec(),
    ))
}

/// `k` samples drawn uniformly without replacement, kept in original order.
pub fn subsample(data: &Dataset, k: usize, seed: u64) -> Result<Dataset> {
    if k == 0 || k > data.len() {
        return Err(Error::InvalidConfig(format!(
            "subsample size must be in 1..={}, got {k}",
            data.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = index::sample(&mut rng, data.len(), k).into_vec();
    picked.sort_unstable();
    Ok(data.select(&picked))
}

/// A reproducible family of `count` separable datasets with at most 200
/// samples, dimension 2 to 10 and target margin 0.1 to 0.3 at radius 1.
/// Odd members are small draws with one class repeated nine times, which
/// keeps the hull but makes the data harder for the batch methods.
pub fn random_suite(count: usize) -> Result<Vec<(String, Dataset)>> {
    (0..count)
        .map(|k| {
            let d = 2 + k % 9;
            let margin = 0.1 + 0.05 * (k % 5) as f64;
            let seed = k as u64;
            if k % 2 == 0 {
                let n = 10 + (k * 37) % 91;
                let data = random_separable(n, d, margin, 1.0, seed)?;
                Ok((format!("random:{n}:{d}:{margin}:1:{seed}"), data))
            } else {
                let n = 5 + (k * 7) % 16;
                let base = random_separable(n, d, margin, 1.0, seed)?;
                let class = if base.labels().contains(&Label::Pos) {
                    Label::Pos
                } else {
                    Label::Neg
                };
                let data = imbalance(&base, class, 9)?;
                Ok((
                    format!("random:{n}:{d}:{margin}:1:{seed}+imbalance:{class}:9"),
                    data,
                ))
            }
        })
        .collect()
}
