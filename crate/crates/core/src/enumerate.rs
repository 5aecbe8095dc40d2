//! Partitioned exhaustive enumeration with deterministic merging.

use std::collections::BTreeMap;
use std::ops::Range;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Default cap on the number of enumerated items.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumConfig {
    /// Largest item count an exhaustive routine will accept.
    pub cap: u64,
    /// Worker threads; `None` uses the global pool (available parallelism).
    pub workers: Option<usize>,
}

impl Default for EnumConfig {
    fn default() -> Self {
        Self { cap: DEFAULT_ENUM_CAP, workers: None }
    }
}

impl EnumConfig {
    pub fn single_worker() -> Self {
        Self { workers: Some(1), ..Self::default() }
    }

    pub fn check(&self, count: u128) -> Result<u64> {
        if count > self.cap as u128 {
            return Err(Error::TooLargeToEnumerate { count, cap: self.cap });
        }
        Ok(count as u64)
    }

    /// Runs `op` inside a pool of the configured size.
    pub fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        match self.workers {
            None => op(),
            Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().expect("thread pool").install(op),
        }
    }
}

/// Splits `0..total` into contiguous ranges, folds each with `chunk_fn` and
/// merges the per-range histograms by addition.
pub fn histogram<K, F>(cfg: &EnumConfig, total: u64, label: &str, chunk_fn: F) -> Result<BTreeMap<K, u64>>
where
    K: Ord + Send,
    F: Fn(Range<u64>) -> Result<BTreeMap<K, u64>> + Sync + Send,
{
    let chunks = chunk_ranges(total, 256);
    let started = Instant::now();
    let merged = cfg.install(|| {
        chunks.into_par_iter().map(chunk_fn).try_reduce(BTreeMap::new, |mut acc, part| {
            merge_into(&mut acc, part);
            Ok(acc)
        })
    })?;
    log::info!("{label}: {total} items in {:.2?}", started.elapsed());
    Ok(merged)
}

pub fn merge_into<K: Ord>(acc: &mut BTreeMap<K, u64>, part: BTreeMap<K, u64>) {
    for (k, v) in part {
        *acc.entry(k).or_insert(0) += v;
    }
}

/// At most `pieces` contiguous, disjoint ranges covering `0..total`.
pub fn chunk_ranges(total: u64, pieces: u64) -> Vec<Range<u64>> {
    if total == 0 {
        return Vec::new();
    }
    let pieces = pieces.clamp(1, total);
    let size = total.div_ceil(pieces);
    (0..total).step_by(size as usize).map(|s| s..(s + size).min(total)).collect()
}
