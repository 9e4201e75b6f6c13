//! File formats and command-line driver for `sthg-core`.
//!
//! Every on-disk artifact is line-oriented text: dataset records, RTTM,
//! checkpoints, node scores and `key=value` configuration and reports.

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;

pub use error::{CliError, CliResult};

/// Caps the global thread pool at `STHG_THREADS` when it is set.
pub fn init_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("STHG_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Invalid(format!("STHG_THREADS={v:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Invalid(format!("thread pool: {e}")))
}
