//! CSV and LIBSVM-style text formats.
//!
//! CSV: one sample per line, label in the first column, features after it, no
//! header (a first line whose label column is not numeric is taken as a header
//! and skipped). LIBSVM: `label idx:value ...` with 1-based indices; absent
//! indices are zero and the dimension is the largest index seen.
//!
//! Labels must be `±1`; files using `{0, 1}` are mapped `0 → −1`.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::dataset::{Dataset, Label};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Libsvm,
}

impl Format {
    /// `.csv` is CSV; `.libsvm`, `.svm` and `.txt` are LIBSVM.
    pub fn from_path(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "csv" => Some(Format::Csv),
            "libsvm" | "svm" | "txt" => Some(Format::Libsvm),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Libsvm => "libsvm",
        }
    }
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "libsvm" => Ok(Format::Libsvm),
            other => Err(Error::InvalidConfig(format!(
                "unknown format {other:?} (csv or libsvm)"
            ))),
        }
    }
}

/// Raw label values as read, resolved once the whole file is known.
struct RawLabels {
    values: Vec<(usize, String, f64)>,
}

impl RawLabels {
    fn resolve(self) -> Result<Vec<Label>> {
        let has_zero = self.values.iter().any(|(_, _, v)| *v == 0.0);
        let has_neg = self.values.iter().any(|(_, _, v)| *v == -1.0);
        if has_zero && !has_neg {
            log::info!("labels look like {{0, 1}}; mapping 0 to -1");
        }
        let zero_ok = has_zero && !has_neg;
        self.values
            .into_iter()
            .map(|(line, text, v)| {
                if v == 1.0 {
                    Ok(Label::Pos)
                } else if v == -1.0 || (v == 0.0 && zero_ok) {
                    Ok(Label::Neg)
                } else {
                    Err(Error::UnknownLabel { line, label: text })
                }
            })
            .collect()
    }
}

fn parse_label(line: usize, text: &str) -> Result<f64> {
    text.trim().parse::<f64>().map_err(|_| Error::UnknownLabel {
        line,
        label: text.trim().to_string(),
    })
}

fn parse_value(line: usize, text: &str) -> Result<f64> {
    let v: f64 = text.trim().parse().map_err(|_| Error::Parse {
        line,
        message: format!("not a number: {:?}", text.trim()),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("non-finite value {v}"),
        });
    }
    Ok(v)
}

pub fn parse_csv(text: &str) -> Result<Dataset> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut raw = RawLabels { values: Vec::new() };
    let mut dim: Option<usize> = None;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut cols = line.split(',');
        let label_text = cols.next().unwrap_or_default().trim();
        if rows.is_empty() && raw.values.is_empty() && label_text.parse::<f64>().is_err() {
            log::info!("skipping header line {lineno}");
            continue;
        }
        let label = parse_label(lineno, label_text)?;
        let feats = cols
            .map(|c| parse_value(lineno, c))
            .collect::<Result<Vec<_>>>()?;
        if feats.is_empty() {
            return Err(Error::Parse {
                line: lineno,
                message: "row has no feature columns".into(),
            });
        }
        match dim {
            None => dim = Some(feats.len()),
            Some(d) if d != feats.len() => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected {d} features, found {}", feats.len()),
                })
            }
            _ => {}
        }
        raw.values.push((lineno, label_text.to_string(), label));
        rows.push(feats);
    }
    if rows.is_empty() {
        return Err(Error::NoSamples);
    }
    let labels = raw.resolve()?;
    Dataset::new(rows, labels)
}

pub fn parse_libsvm(text: &str) -> Result<Dataset> {
    let mut sparse: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut raw = RawLabels { values: Vec::new() };
    let mut dim = 0usize;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.split('#').next().unwrap_or_default().trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let label_text = tokens.next().unwrap_or_default();
        let label = parse_label(lineno, label_text)?;
        let mut entries = Vec::new();
        let mut last = 0usize;
        for tok in tokens {
            let (i, v) = tok.split_once(':').ok_or_else(|| Error::Parse {
                line: lineno,
                message: format!("expected index:value, found {tok:?}"),
            })?;
            let i: usize = i.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("bad feature index {i:?}"),
            })?;
            if i == 0 || i <= last {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("feature indices must be 1-based and increasing, found {i}"),
                });
            }
            last = i;
            entries.push((i, parse_value(lineno, v)?));
        }
        dim = dim.max(last);
        raw.values.push((lineno, label_text.to_string(), label));
        sparse.push(entries);
    }
    if sparse.is_empty() {
        return Err(Error::NoSamples);
    }
    if dim == 0 {
        return Err(Error::Parse {
            line: 1,
            message: "no feature entries in file".into(),
        });
    }
    let labels = raw.resolve()?;
    let rows = sparse
        .into_iter()
        .map(|entries| {
            let mut row = vec![0.0; dim];
            for (i, v) in entries {
                row[i - 1] = v;
            }
            row
        })
        .collect();
    Dataset::new(rows, labels)
}

pub fn load(path: &Path, format: Format) -> Result<Dataset> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    match format {
        Format::Csv => parse_csv(&text),
        Format::Libsvm => parse_libsvm(&text),
    }
}

pub fn to_csv(data: &Dataset) -> String {
    let mut out = String::new();
    for (row, y) in data.rows() {
        write!(out, "{}", y.as_i8()).unwrap();
        for c in row {
            write!(out, ",{c}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Zero entries are omitted except the last coordinate, which is always
/// written so the dimension survives a reload.
pub fn to_libsvm(data: &Dataset) -> String {
    let mut out = String::new();
    let d = data.dim();
    for (row, y) in data.rows() {
        write!(out, "{y}").unwrap();
        for (i, c) in row.iter().enumerate() {
            if *c != 0.0 || i + 1 == d {
                write!(out, " {}:{c}", i + 1).unwrap();
            }
        }
        out.push('\n');
    }
    out
}

/// Writes `contents` to a temporary file next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(contents).map_err(|e| Error::io(path, e))?;
    tmp.flush().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn save(data: &Dataset, path: &Path, format: Format) -> Result<()> {
    let text = match format {
        Format::Csv => to_csv(data),
        Format::Libsvm => to_libsvm(data),
    };
    write_atomic(path, text.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::{random_separable, two_point_dataset};

    #[test]
    fn csv_two_point() {
        assert_eq!(
            parse_csv("1,1,-1\n-1,-1,-4\n").unwrap(),
            two_point_dataset()
        );
    }

    #[test]
    fn libsvm_two_point() {
        assert_eq!(
            parse_libsvm("+1 1:1 2:-1\n-1 1:-1 2:-4\n").unwrap(),
            two_point_dataset()
        );
    }

    #[test]
    fn empty_input_has_no_samples() {
        assert!(matches!(parse_csv(""), Err(Error::NoSamples)));
        assert!(matches!(parse_libsvm("\n\n"), Err(Error::NoSamples)));
    }

    #[test]
    fn csv_header_is_skipped() {
        let d = parse_csv("label,x,y\n1,1,-1\n-1,-1,-4\n").unwrap();
        assert_eq!(d, two_point_dataset());
    }

    #[test]
    fn zero_one_labels_are_mapped() {
        let d = parse_csv("1,1,-1\n0,-1,-4\n").unwrap();
        assert_eq!(d, two_point_dataset());
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_csv("1,1,-1\n-1,abc,2\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_csv("1,1,-1\n-1,2\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_csv("1,1,-1\n2,2,2\n") {
            Err(Error::UnknownLabel { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        // 0 alongside -1 is ambiguous
        match parse_csv("1,1\n-1,2\n0,3\n") {
            Err(Error::UnknownLabel { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_libsvm("+1 1:1\n-1 2-3\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_libsvm("+1 2:1 1:3\n") {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn libsvm_fills_missing_indices() {
        let d = parse_libsvm("+1 3:2\n-1 1:1\n").unwrap();
        assert_eq!(d.dim(), 3);
        assert_eq!(d.feature(0), &[0.0, 0.0, 2.0]);
        assert_eq!(d.feature(1), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let d = random_separable(40, 4, 0.1, 1.0, 3).unwrap();
        for fmt in [Format::Csv, Format::Libsvm] {
            let p = dir.path().join(format!("d.{}", fmt.as_str()));
            save(&d, &p, fmt).unwrap();
            assert_eq!(load(&p, fmt).unwrap(), d);
        }
        assert!(load(&dir.path().join("missing.csv"), Format::Csv).is_err());
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(Format::from_path(Path::new("a/b.csv")), Some(Format::Csv));
        assert_eq!(Format::from_path(Path::new("b.svm")), Some(Format::Libsvm));
        assert_eq!(Format::from_path(Path::new("b")), None);
    }
}
