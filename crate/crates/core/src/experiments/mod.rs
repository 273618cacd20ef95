//! Experiment grids and their on-disk artifacts.

mod grid;
mod svg;
mod trace_csv;

pub use grid::{
    bound_for, run_grid, summary_csv, summary_path, summary_table, GridResult, GridSpec,
    SummaryRow, DEFAULT_GAMMAS, SUMMARY_HEADER,
};
pub use svg::{emit_plot_svg, render_plot_svg, Metric};
pub use trace_csv::{emit_trace_csv, parse_trace_csv, read_trace_csv, trace_to_csv, TRACE_HEADER};
