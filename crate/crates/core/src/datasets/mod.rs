//! Dataset constructions, synthetic generators, post-processing and file I/O.

mod generators;
pub mod io;

use std::fmt;
use std::path::PathBuf;

pub use generators::{
    imbalance, perturb, random_separable, random_suite, subsample, two_point_dataset,
    worst_case_dataset, MAX_REJECTION_DRAWS,
};
pub use io::{load, save, Format};

use crate::dataset::{Dataset, Label};
use crate::error::{Error, Result};

/// Where a dataset comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    TwoPoint,
    WorstCase {
        n: usize,
    },
    RandomSeparable {
        n: usize,
        d: usize,
        target_margin: f64,
        target_radius: f64,
        seed: u64,
    },
    FromFile {
        path: PathBuf,
        format: Format,
    },
}

impl Source {
    /// Parses `builtin:twopoint`, `builtin:worstcase:N`,
    /// `builtin:random:N:D:MARGIN:RADIUS:SEED`, or a file path whose format
    /// comes from `format` or else the extension.
    pub fn parse(uri: &str, format: Option<Format>) -> Result<Source> {
        let Some(rest) = uri.strip_prefix("builtin:") else {
            let path = PathBuf::from(uri);
            let format = format.or_else(|| Format::from_path(&path)).ok_or_else(|| {
                Error::InvalidConfig(format!("cannot infer format of {uri:?}; pass --format"))
            })?;
            return Ok(Source::FromFile { path, format });
        };
        let parts: Vec<&str> = rest.split(':').collect();
        let bad = |what: &str| Error::InvalidConfig(format!("bad builtin dataset {uri:?}: {what}"));
        fn num<T: std::str::FromStr>(s: &str, bad: impl Fn(&str) -> Error) -> Result<T> {
            s.parse().map_err(|_| bad(&format!("cannot parse {s:?}")))
        }
        match parts.as_slice() {
            ["twopoint"] => Ok(Source::TwoPoint),
            ["worstcase", n] => Ok(Source::WorstCase { n: num(n, bad)? }),
            ["random", n, d, m, r, s] => Ok(Source::RandomSeparable {
                n: num(n, bad)?,
                d: num(d, bad)?,
                target_margin: num(m, bad)?,
                target_radius: num(r, bad)?,
                seed: num(s, bad)?,
            }),
            _ => Err(bad(
                "expected twopoint, worstcase:N or random:N:D:MARGIN:RADIUS:SEED",
            )),
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::TwoPoint => f.write_str("builtin:twopoint"),
            Source::WorstCase { n } => write!(f, "builtin:worstcase:{n}"),
            Source::RandomSeparable {
                n,
                d,
                target_margin,
                target_radius,
                seed,
            } => write!(
                f,
                "builtin:random:{n}:{d}:{target_margin}:{target_radius}:{seed}"
            ),
            Source::FromFile { path, .. } => write!(f, "{}", path.display()),
        }
    }
}

/// A dataset source plus the post-processing applied to it, in order:
/// subsample, imbalance, perturb.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub source: Source,
    pub subsample: Option<(usize, u64)>,
    pub imbalance: Option<(Label, usize)>,
    pub perturb: Option<(f64, u64)>,
}

impl GeneratorSpec {
    pub fn new(source: Source) -> Self {
        GeneratorSpec {
            source,
            subsample: None,
            imbalance: None,
            perturb: None,
        }
    }

    pub fn build(&self) -> Result<Dataset> {
        let mut data = match &self.source {
            Source::TwoPoint => two_point_dataset(),
            Source::WorstCase { n } => worst_case_dataset(*n)?,
            Source::RandomSeparable {
                n,
                d,
                target_margin,
                target_radius,
                seed,
            } => random_separable(*n, *d, *target_margin, *target_radius, *seed)?,
            Source::FromFile { path, format } => load(path, *format)?,
        };
        if let Some((k, seed)) = self.subsample {
            data = subsample(&data, k, seed)?;
        }
        if let Some((class, factor)) = self.imbalance {
            data = imbalance(&data, class, factor)?;
        }
        if let Some((sigma, seed)) = self.perturb {
            data = perturb(&data, sigma, seed)?;
        }
        Ok(data)
    }
}

/// Parses `+1:10` / `-1:3` into a class and repeat factor.
pub fn parse_imbalance(s: &str) -> Result<(Label, usize)> {
    let bad = || {
        Error::InvalidConfig(format!(
            "bad imbalance {s:?}; expected CLASS:FACTOR like +1:10"
        ))
    };
    let (class, factor) = s.split_once(':').ok_or_else(bad)?;
    let class = match class {
        "+1" | "1" => Label::Pos,
        "-1" => Label::Neg,
        _ => return Err(bad()),
    };
    let factor: usize = factor.parse().map_err(|_| bad())?;
    if factor == 0 {
        return Err(bad());
    }
    Ok((class, factor))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_uris_parse() {
        assert_eq!(
            Source::parse("builtin:twopoint", None).unwrap(),
            Source::TwoPoint
        );
        assert_eq!(
            Source::parse("builtin:worstcase:10", None).unwrap(),
            Source::WorstCase { n: 10 }
        );
        let r = Source::parse("builtin:random:100:5:0.2:1:7", None).unwrap();
        assert_eq!(r.to_string(), "builtin:random:100:5:0.2:1:7");
        assert!(Source::parse("builtin:worstcase", None).is_err());
        assert!(Source::parse("builtin:worstcase:x", None).is_err());
        assert!(Source::parse("data.bin", None).is_err());
        assert!(matches!(
            Source::parse("data.bin", Some(Format::Csv)).unwrap(),
            Source::FromFile {
                format: Format::Csv,
                ..
            }
        ));
    }

    #[test]
    fn spec_applies_post_ops() {
        let mut spec = GeneratorSpec::new(Source::WorstCase { n: 100 });
        spec.imbalance = Some(parse_imbalance("+1:10").unwrap());
        assert_eq!(spec.build().unwrap().len(), 109);
        assert!(parse_imbalance("2:3").is_err());
        assert!(parse_imbalance("+1:0").is_err());
        assert_eq!(parse_imbalance("-1:3").unwrap(), (Label::Neg, 3));
    }
}
