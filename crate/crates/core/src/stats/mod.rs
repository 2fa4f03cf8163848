//! Error metrics, significance testing, mask-size sweeps and null/confusion
//! difference tables.

mod difftable;
mod metrics;
mod mwu;
mod report;
mod sweep;

pub use difftable::{diff_table, DiffCell, DiffTable};
pub use metrics::{curve_loss, mae, paired_mean_difference, LossMode};
pub use mwu::{
    mann_whitney, mann_whitney_with, Alternative, MannWhitney, Method, EXACT_MAX_COMBINED,
    MIN_GROUP,
};
pub use report::{
    cell_means, read_error_csv, sweep_inputs, write_diff_csv, write_error_csv, write_sweep_csv,
    CellKey, ConfigKey, ErrorRecord, SweepInput, ERROR_CSV_HEADER,
};
pub use sweep::{threshold_sweep, SizeResult, ThresholdReport, DEFAULT_ALPHA};
