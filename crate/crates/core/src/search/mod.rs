//! Exhaustive search for saturated families containing `C♭`.
//!
//! Every saturated family contains some maximal chain, and relabeling the
//! ground set moves that chain onto `C♭`, so fixing `C♭` loses no family up
//! to isomorphism. The remaining members are chosen depth-first in
//! increasing bitmask order, keeping the family free after each step;
//! saturation is only tested on families whose size lies in the requested
//! range. The work is split on the first added member and the per-shard
//! results are merged in shard order, so the output does not depend on the
//! thread count.

mod catalog;
mod checkpoint;
mod kernel;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

pub use catalog::{
    catalog_diff, group_by_duality, parse_golden, Catalog, CatalogDiff, DualColumn, DualMismatch,
    DualityClass, GoldenEntry,
};

use crate::lattice::{check_ground_size, Family, SetWord};
use crate::{Error, Result};
use checkpoint::Checkpoint;
use kernel::{Mask, Universe, Visitor, MAX_KERNEL_N};

/// Ground sizes searched without an explicit override.
pub const DEFAULT_MAX_N: usize = 6;

/// Ground sizes searched without fixing the chain, without an override.
pub const DEFAULT_MAX_N_UNFIXED: usize = 4;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub n: usize,
    /// Inclusive bounds on the family size.
    pub min_size: usize,
    pub max_size: usize,
    /// Force `C♭` into every family; otherwise only `∅` and `[n]` are forced.
    pub fix_chain: bool,
    /// Worker threads; `None` uses every core.
    pub threads: Option<usize>,
    /// Print shard progress to stderr at this interval.
    pub progress_interval: Option<Duration>,
    /// Permit ground sizes above the default caps (up to 7).
    pub allow_large: bool,
    /// Record finished shards here and skip them when resuming.
    pub checkpoint: Option<PathBuf>,
}

impl SearchConfig {
    /// Sizes `2n..=2n`, chain fixed.
    pub fn new(n: usize) -> SearchConfig {
        SearchConfig {
            n,
            min_size: 2 * n,
            max_size: 2 * n,
            fix_chain: true,
            threads: None,
            progress_interval: None,
            allow_large: false,
            checkpoint: None,
        }
    }

    pub fn sizes(mut self, min_size: usize, max_size: usize) -> Self {
        self.min_size = min_size;
        self.max_size = max_size;
        self
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    pub fn fix_chain(mut self, fix_chain: bool) -> Self {
        self.fix_chain = fix_chain;
        self
    }

    pub fn allow_large(mut self, allow: bool) -> Self {
        self.allow_large = allow;
        self
    }

    pub fn progress(mut self, interval: Duration) -> Self {
        self.progress_interval = Some(interval);
        self
    }

    pub fn checkpoint(mut self, path: impl Into<PathBuf>) -> Self {
        self.checkpoint = Some(path.into());
        self
    }

    fn forced(&self) -> Vec<usize> {
        if self.fix_chain {
            (0..=self.n).map(|i| (1usize << i) - 1).collect()
        } else {
            vec![0, (1 << self.n) - 1]
        }
    }

    /// Number of candidate member sets `Σ C(pool, k)` over the extra sizes.
    pub fn cost_estimate(&self) -> u128 {
        let forced = self.forced().len();
        let pool = (1usize << self.n.min(MAX_KERNEL_N)) - forced;
        let lo = self.min_size.saturating_sub(forced);
        let hi = self.max_size.saturating_sub(forced).min(pool);
        (lo..=hi).map(|k| binomial(pool, k)).sum()
    }

    fn validate(&self) -> Result<()> {
        check_ground_size(self.n)?;
        if self.n > MAX_KERNEL_N {
            return Err(Error::InvalidArgument(format!(
                "exhaustive search supports n <= {MAX_KERNEL_N}, got {}",
                self.n
            )));
        }
        let cap = if self.fix_chain {
            DEFAULT_MAX_N
        } else {
            DEFAULT_MAX_N_UNFIXED
        };
        if self.n > cap && !self.allow_large {
            return Err(Error::Refused {
                n: self.n,
                estimate: self.cost_estimate(),
            });
        }
        let floor = if self.fix_chain { self.n + 1 } else { 2 };
        if self.min_size < floor || self.min_size > self.max_size || self.max_size > 1 << self.n {
            return Err(Error::InvalidArgument(format!(
                "size range {}..={} outside {floor}..={}",
                self.min_size,
                self.max_size,
                1usize << self.n
            )));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidArgument(
                "thread count must be positive".into(),
            ));
        }
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, t| acc * (n - t) as u128 / (t + 1) as u128)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub n: usize,
    pub min_size: usize,
    pub max_size: usize,
    /// Saturated families found, by size, each list sorted.
    pub by_size: BTreeMap<usize, Vec<Family>>,
    /// Free families visited.
    pub nodes: u64,
}

impl SearchOutcome {
    pub fn count(&self, size: usize) -> usize {
        self.by_size.get(&size).map_or(0, Vec::len)
    }

    /// Smallest size with at least one saturated family.
    pub fn smallest_size(&self) -> Option<usize> {
        self.by_size
            .iter()
            .find(|(_, v)| !v.is_empty())
            .map(|(&s, _)| s)
    }
}

struct Collector<'u> {
    universe: &'u Universe,
    min_size: usize,
    found: Vec<Mask>,
}

impl Visitor for Collector<'_> {
    #[inline]
    fn visit(&mut self, family: Mask, size: usize) {
        if size >= self.min_size && self.universe.saturated(family) {
            self.found.push(family);
        }
    }
}

fn mask_to_family(n: usize, m: Mask) -> Family {
    Family::from_sorted_unchecked(n, kernel::ones(m).map(|b| SetWord(b as u32)).collect())
}

/// Runs the search described by `config`.
pub fn search(config: &SearchConfig) -> Result<SearchOutcome> {
    config.validate()?;
    let n = config.n;
    let universe = Universe::new(n);
    let forced = config.forced();
    let root: Mask = forced.iter().fold(0, |m, &s| m | 1 << s);
    let candidates: Vec<usize> = (0..universe.size).filter(|s| root >> s & 1 == 0).collect();

    let mut checkpoint = match &config.checkpoint {
        Some(path) => Some(Checkpoint::open(path, config)?),
        None => None,
    };
    let done = checkpoint
        .as_ref()
        .map(|c| c.completed().clone())
        .unwrap_or_default();

    let mut found: Vec<Mask> = Vec::new();
    let root_size = forced.len();
    if root_size >= config.min_size && root_size <= config.max_size && universe.saturated(root) {
        found.push(root);
    }

    let pending: Vec<usize> = (0..candidates.len())
        .filter(|k| !done.contains_key(k))
        .collect();
    let nodes = AtomicU64::new(1);
    let finished = AtomicUsize::new(done.len());
    let total = candidates.len();
    let started = Instant::now();
    let last_report = Mutex::new(Instant::now());
    let sink = Mutex::new(checkpoint.as_mut());
    let first_error: Mutex<Option<Error>> = Mutex::new(None);

    let run_shard = |k: usize| -> Vec<Mask> {
        let c = candidates[k];
        let mut collector = Collector {
            universe: &universe,
            min_size: config.min_size,
            found: Vec::new(),
        };
        if root_size < config.max_size && !universe.completes(root, c) {
            let visited = kernel::walk(
                &universe,
                &candidates,
                root | 1 << c,
                k + 1,
                config.max_size,
                &mut collector,
            );
            nodes.fetch_add(visited, Ordering::Relaxed);
        }
        if let Some(cp) = sink.lock().unwrap().as_mut() {
            if let Err(e) = cp.record(k, &collector.found) {
                first_error.lock().unwrap().get_or_insert(e);
            }
        }
        let now_done = finished.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(interval) = config.progress_interval {
            let mut last = last_report.lock().unwrap();
            if last.elapsed() >= interval || now_done == total {
                *last = Instant::now();
                eprintln!(
                    "search n={n}: {now_done}/{total} shards, {} nodes, {:.1}s",
                    nodes.load(Ordering::Relaxed),
                    started.elapsed().as_secs_f64()
                );
            }
        }
        collector.found
    };

    let shard_results: Vec<Vec<Mask>> = match config.threads {
        Some(1) => pending.iter().map(|&k| run_shard(k)).collect(),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(|| pending.par_iter().map(|&k| run_shard(k)).collect()),
        None => pending.par_iter().map(|&k| run_shard(k)).collect(),
    };
    if let Some(e) = first_error.into_inner().unwrap() {
        return Err(e);
    }

    for masks in done.into_values() {
        found.extend(masks);
    }
    for masks in shard_results {
        found.extend(masks);
    }

    let mut by_size: BTreeMap<usize, Vec<Family>> = (config.min_size..=config.max_size)
        .map(|s| (s, Vec::new()))
        .collect();
    for m in found {
        let f = mask_to_family(n, m);
        by_size.entry(f.len()).or_default().push(f);
    }
    for v in by_size.values_mut() {
        v.sort();
    }
    Ok(SearchOutcome {
        n,
        min_size: config.min_size,
        max_size: config.max_size,
        by_size,
        nodes: nodes.into_inner(),
    })
}

/// All saturated families of exactly `size` members, grouped into duality
/// classes. The other settings of `config` are kept.
pub fn enumerate_at(config: &SearchConfig, size: usize) -> Result<Catalog> {
    let cfg = config.clone().sizes(size, size);
    let mut outcome = search(&cfg)?;
    let families = outcome.by_size.remove(&size).unwrap_or_default();
    group_by_duality(cfg.n, size, families)
}

/// Smallest size of a saturated family containing the forced sets, between
/// `n + 2` and `2n`, together with every family of that size.
pub fn search_min(config: &SearchConfig) -> Result<(usize, Catalog, SearchOutcome)> {
    let n = config.n;
    let cfg = config.clone().sizes(n + 2, 2 * n);
    let outcome = search(&cfg)?;
    let size = outcome.smallest_size().ok_or_else(|| {
        Error::Integrity(format!(
            "no saturated family of size at most {} at n = {n}",
            2 * n
        ))
    })?;
    let families = outcome.by_size.get(&size).cloned().unwrap_or_default();
    let catalog = group_by_duality(n, size, families)?;
    Ok((size, catalog, outcome))
}

struct FreeVisitor<'a, F: FnMut(&Family)> {
    n: usize,
    callback: &'a mut F,
}

impl<F: FnMut(&Family)> Visitor for FreeVisitor<'_, F> {
    fn visit(&mut self, family: Mask, _: usize) {
        (self.callback)(&mask_to_family(self.n, family));
    }
}

/// Calls `callback` on every free family the search tree of `config`
/// reaches, of any size up to `config.max_size`. Single threaded.
pub fn for_each_free_family<F: FnMut(&Family)>(
    config: &SearchConfig,
    mut callback: F,
) -> Result<u64> {
    config.validate()?;
    let universe = Universe::new(config.n);
    let root: Mask = config.forced().iter().fold(0, |m, &s| m | 1 << s);
    let candidates: Vec<usize> = (0..universe.size).filter(|s| root >> s & 1 == 0).collect();
    let mut visitor = FreeVisitor {
        n: config.n,
        callback: &mut callback,
    };
    Ok(kernel::walk(
        &universe,
        &candidates,
        root,
        0,
        config.max_size,
        &mut visitor,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeness::is_saturated;

    #[test]
    fn binomials() {
        assert_eq!(binomial(57, 5), 4_187_106);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(119, 6), 3_470_108_187);
    }

    #[test]
    fn small_counts() {
        let (size, cat, _) = search_min(&SearchConfig::new(2)).unwrap();
        assert_eq!(size, 4);
        assert_eq!(cat.families, vec![Family::power_set(2).unwrap()]);

        let (size, cat, _) = search_min(&SearchConfig::new(3)).unwrap();
        assert_eq!(size, 6);
        assert_eq!(cat.families.len(), 5);
        assert_eq!(cat.classes.len(), 3);
        for f in &cat.families {
            assert!(is_saturated(f));
        }
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let a = search(&SearchConfig::new(4).sizes(5, 9).threads(1)).unwrap();
        let b = search(&SearchConfig::new(4).sizes(5, 9).threads(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn refuses_large_inputs() {
        assert!(matches!(
            search(&SearchConfig::new(7)),
            Err(Error::Refused { n: 7, .. })
        ));
        assert!(matches!(
            search(&SearchConfig::new(8).allow_large(true)),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            search(&SearchConfig::new(5).fix_chain(false)),
            Err(Error::Refused { .. })
        ));
        assert!(search(&SearchConfig::new(4).sizes(4, 8)).is_err());
        assert!(search(&SearchConfig::new(4).sizes(9, 8)).is_err());
    }

    #[test]
    fn free_family_walk_visits_root() {
        let mut seen = 0;
        let nodes = for_each_free_family(&SearchConfig::new(3).sizes(4, 5), |f| {
            assert!(f.contains_canonical_chain());
            assert!(f.len() <= 5);
            seen += 1;
        })
        .unwrap();
        assert_eq!(nodes, seen);
        // chain alone plus each of the four off-chain sets
        assert_eq!(seen, 5);
    }
}
