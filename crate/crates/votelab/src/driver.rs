//! Deterministic parallel trial driver shared by the study runners.
//!
//! Trials are indexed 0, 1, 2, ... and each index is evaluated purely from
//! its own RNG stream, so evaluation can run on any number of threads.
//! Results are absorbed strictly in index order and absorption stops the
//! moment the target number of kept trials is reached, which makes every
//! study result byte-identical for any worker count or batch size.

use crate::error::{Error, Result};
use rayon::prelude::*;

/// Indices are evaluated in batches this large before being absorbed.
/// Affects scheduling only, never results.
const BATCH: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct DriverOutcome {
    /// Trials that counted toward the target.
    pub kept: u64,
    /// Total trial indices consumed, kept or discarded: the next study
    /// would start at this index.
    pub consumed: u64,
}

/// Runs `eval` over trial indices until `absorb` has accepted `target` of
/// them. `absorb` returns whether the trial was kept.
pub(crate) fn run_kept_trials<T, E, A>(
    target: u64,
    workers: usize,
    eval: E,
    mut absorb: A,
) -> Result<DriverOutcome>
where
    T: Send,
    E: Fn(u64) -> T + Sync,
    A: FnMut(T) -> bool,
{
    if target == 0 {
        return Err(Error::ZeroTargetTrials);
    }
    if workers == 0 {
        return Err(Error::ZeroWorkers);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");

    let mut kept = 0u64;
    let mut consumed = 0u64;
    while kept < target {
        let batch: Vec<T> =
            pool.install(|| (consumed..consumed + BATCH).into_par_iter().map(&eval).collect());
        for item in batch {
            consumed += 1;
            if absorb(item) {
                kept += 1;
                if kept == target {
                    break;
                }
            }
        }
    }
    Ok(DriverOutcome { kept, consumed })
}
