use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::algorithms::{Trace, TraceRecord};
use crate::datasets::io::write_atomic;
use crate::error::{Error, Result};

pub const TRACE_HEADER: &str = "t,loss,grad_norm,accuracy,mistakes";

/// Loss and gradient norm are written with 17 significant digits.
pub fn trace_to_csv(records: &[TraceRecord]) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for r in records {
        writeln!(
            out,
            "{},{:.16e},{:.16e},{},{}",
            r.t, r.loss, r.grad_norm, r.accuracy, r.mistakes
        )
        .unwrap();
    }
    out
}

pub fn emit_trace_csv(trace: &Trace, path: &Path) -> Result<()> {
    write_atomic(path, trace_to_csv(&trace.records).as_bytes())
}

/// Reads a trace file back. Columns are located by header name, so extra
/// columns are tolerated; a missing metric column is reported.
pub fn read_trace_csv(path: &Path) -> Result<Vec<TraceRecord>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_trace_csv(&text)
}

pub fn parse_trace_csv(text: &str) -> Result<Vec<TraceRecord>> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty trace file".into(),
    })?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    let col = |name: &str| {
        cols.iter()
            .position(|c| *c == name)
            .ok_or_else(|| Error::MetricAbsent(name.to_string()))
    };
    let (ti, li, gi, ai, mi) = (
        col("t")?,
        col("loss")?,
        col("grad_norm")?,
        col("accuracy")?,
        col("mistakes")?,
    );

    let mut records = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let get = |i: usize| {
            fields.get(i).copied().ok_or_else(|| Error::Parse {
                line: lineno,
                message: format!("expected {} columns, found {}", cols.len(), fields.len()),
            })
        };
        let bad = |what: &str| Error::Parse {
            line: lineno,
            message: format!("bad {what}"),
        };
        records.push(TraceRecord {
            t: get(ti)?.parse().map_err(|_| bad("t"))?,
            loss: get(li)?.parse().map_err(|_| bad("loss"))?,
            grad_norm: get(gi)?.parse().map_err(|_| bad("grad_norm"))?,
            accuracy: get(ai)?.parse().map_err(|_| bad("accuracy"))?,
            mistakes: get(mi)?.parse().map_err(|_| bad("mistakes"))?,
            theta: None,
        });
    }
    Ok(records)
}
