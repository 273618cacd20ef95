use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::algorithms::TraceRecord;
use crate::datasets::io::write_atomic;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Loss,
    GradNorm,
    Accuracy,
    Mistakes,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Loss => "loss",
            Metric::GradNorm => "grad_norm",
            Metric::Accuracy => "accuracy",
            Metric::Mistakes => "mistakes",
        }
    }

    fn value(self, r: &TraceRecord) -> f64 {
        match self {
            Metric::Loss => r.loss,
            Metric::GradNorm => r.grad_norm,
            Metric::Accuracy => r.accuracy,
            Metric::Mistakes => r.mistakes as f64,
        }
    }
}

impl FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "loss" => Ok(Metric::Loss),
            "grad_norm" | "grad-norm" => Ok(Metric::GradNorm),
            "accuracy" => Ok(Metric::Accuracy),
            "mistakes" => Ok(Metric::Mistakes),
            _ => Err(Error::MetricAbsent(s.to_string())),
        }
    }
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders one polyline per trace. On a log axis, non-positive values are
/// left out of the line.
pub fn render_plot_svg(
    traces: &[(&str, &[TraceRecord])],
    metric: Metric,
    log_y: bool,
) -> Result<String> {
    if traces.is_empty() {
        return Err(Error::NoTraces);
    }
    let transform = |v: f64| if log_y { v.log10() } else { v };
    let series: Vec<(&str, Vec<(f64, f64)>)> = traces
        .iter()
        .map(|(label, recs)| {
            let pts = recs
                .iter()
                .map(|r| (r.t as f64, metric.value(r)))
                .filter(|&(_, v)| v.is_finite() && (!log_y || v > 0.0))
                .map(|(t, v)| (t, transform(v)))
                .collect();
            (*label, pts)
        })
        .collect();

    let all = series.iter().flat_map(|(_, p)| p.iter());
    let (mut x_max, mut y_min, mut y_max) = (0.0f64, f64::INFINITY, f64::NEG_INFINITY);
    for &(t, v) in all {
        x_max = x_max.max(t);
        y_min = y_min.min(v);
        y_max = y_max.max(v);
    }
    if !y_min.is_finite() {
        return Err(Error::MetricAbsent(metric.as_str().to_string()));
    }
    if x_max == 0.0 {
        x_max = 1.0;
    }
    if y_max - y_min < 1e-12 {
        y_min -= 0.5;
        y_max += 0.5;
    }
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |t: f64| LEFT + t / x_max * plot_w;
    let sy = |v: f64| TOP + (y_max - v) / (y_max - y_min) * plot_h;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    )
    .unwrap();

    for k in 0..=5 {
        let frac = k as f64 / 5.0;
        let t = frac * x_max;
        let x = sx(t);
        writeln!(
            out,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            TOP + plot_h,
            TOP + plot_h + 5.0,
            TOP + plot_h + 20.0,
            format_tick(t)
        )
        .unwrap();
        let v = y_min + frac * (y_max - y_min);
        let y = sy(v);
        let label = if log_y {
            format!("1e{}", format_tick(v))
        } else {
            format_tick(v)
        };
        writeln!(
            out,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{label}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            y + 4.0
        )
        .unwrap();
    }
    writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">iteration t</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    )
    .unwrap();
    let y_label = if log_y {
        format!("{} (log scale)", metric.as_str())
    } else {
        metric.as_str().to_string()
    };
    writeln!(
        out,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">{y_label}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    )
    .unwrap();

    for (k, (label, pts)) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let coords: Vec<String> = pts
            .iter()
            .map(|&(t, v)| format!("{:.2},{:.2}", sx(t), sy(v)))
            .collect();
        writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            coords.join(" ")
        )
        .unwrap();
        let ly = TOP + 10.0 + 18.0 * k as f64;
        let lx = WIDTH - RIGHT + 15.0;
        writeln!(
            out,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 20.0,
            lx + 25.0,
            ly + 4.0,
            escape(label)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn format_tick(v: f64) -> String {
    let r = (v * 100.0).round() / 100.0;
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

pub fn emit_plot_svg(
    traces: &[(&str, &[TraceRecord])],
    metric: Metric,
    path: &Path,
    log_y: bool,
) -> Result<()> {
    let svg = render_plot_svg(traces, metric, log_y)?;
    write_atomic(path, svg.as_bytes())
}
