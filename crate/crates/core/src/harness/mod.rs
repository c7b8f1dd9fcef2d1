//! Simulation studies: configuration, replicate execution and summaries.

mod config;
mod experiment;
mod summary;

pub use config::{ExperimentConfig, Method, SetupChoice};
pub use experiment::{
    evaluate_method, records_to_csv, replicate_seed, run_experiment, run_on_dataset, run_replicate,
    standardisation_label, Metric, ReplicateDistances, ResultRecord, RESULTS_HEADER,
};
pub use summary::{
    cell_values, mean_se, paired_difference, summarise, summary_path, PairedDifference, SummaryKey, SummaryRow,
};

use std::path::Path;

use crate::error::{Error, Result};
use crate::io::write_atomic;

/// Name of the environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "HDLSS_THREADS";

/// Thread count from `explicit`, else from [`THREADS_ENV`], else `None`
/// (rayon's default, the available parallelism).
pub fn thread_count(explicit: Option<usize>) -> Result<Option<usize>> {
    if let Some(n) = explicit {
        return Ok(Some(n));
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Error::usage(format!("{THREADS_ENV}={v:?} is not a thread count"))),
        Err(_) => Ok(None),
    }
}

/// Runs `f` inside a dedicated rayon pool with `threads` workers.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::usage(format!("cannot start thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Writes the per-replicate CSV to `out` and the summary JSON beside it.
pub fn write_results(out: &Path, records: &[ResultRecord]) -> Result<()> {
    let summary = serde_json::to_string_pretty(&summarise(records))?;
    write_atomic(out, records_to_csv(records).as_bytes())?;
    write_atomic(summary_path(out), summary.as_bytes())
}
