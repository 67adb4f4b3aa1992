//! Scenario runner: builtin figure scenarios, analytic and Monte-Carlo
//! evaluation, CSV output.

mod builtin;
pub mod mc;
mod output;
mod run;
mod scenario;

pub use builtin::{builtin_scenario, builtin_scenarios, BUILTIN_SCENARIOS};
pub use output::{csv_string, emit_csv, emit_curve, format_number, parse_csv, CSV_HEADER};
pub use run::{build_point, run_scenario, Point, ResultRow};
pub use scenario::{
    validate_scenario, ChannelDoc, ChannelSettings, LinkDoc, Metric, Mode, PowerConstraint, Scenario, ScenarioDoc,
    Series, SummaryMetric, Sweep, SweepDoc, SweepVariable, WaveformDoc,
};
