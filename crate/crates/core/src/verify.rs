//! Exhaustive sweeps: every connected graph of a given order is checked for
//! a pair of longest paths whose common vertices do not separate it.
//!
//! Work is split into [`GenerationShard`]s. Each finished shard is merged
//! into a single accumulator and, when a checkpoint path is configured,
//! persisted before the next shard is reported done. Merging is
//! commutative, so reports do not depend on worker count or scheduling.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gen::{checked_stream, GenerationShard, Generator, MAX_GENERATED_ORDER};
use crate::graph::SmallGraph;
use crate::graph6::Graph6Reader;
use crate::longest_path::{quick_traceable, LongestPathEngine};
use crate::separator::{
    accumulate_statistics, first_violation, pairs_violations, EllStatistics, ViolationRecord,
};

/// Connected graph counts for n = 1..=11 (OEIS A001349), used only as an
/// external cross-check of the generator.
pub const PUBLISHED_CONNECTED_COUNTS: [u64; 11] = [
    1, 1, 2, 6, 21, 112, 853, 11117, 261080, 11716571, 1006700565,
];

pub fn published_count(n: usize) -> Option<u64> {
    PUBLISHED_CONNECTED_COUNTS.get(n.checked_sub(1)?).copied()
}

/// Default shard count; fixed so reports are identical for any `jobs`.
pub const DEFAULT_SHARD_COUNT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Internal,
    Graph6File(PathBuf),
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Source::Internal => f.write_str("internal"),
            Source::Graph6File(p) => write!(f, "g6:{}", p.display()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub n: usize,
    pub shard_count: usize,
    pub jobs: usize,
    pub checkpoint: Option<PathBuf>,
    pub source: Source,
    /// Record every violating pair instead of the first per graph.
    pub all_violations: bool,
    /// Stop after this many newly completed shards (the report is then
    /// incomplete; resume from the checkpoint).
    pub max_new_shards: Option<usize>,
}

impl VerifyOptions {
    pub fn new(n: usize) -> Self {
        VerifyOptions {
            n,
            shard_count: DEFAULT_SHARD_COUNT,
            jobs: 1,
            checkpoint: None,
            source: Source::Internal,
            all_violations: false,
            max_new_shards: None,
        }
    }
}

/// Additive counters shared by shard results, checkpoints and reports.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialCounts {
    pub graphs_total: u64,
    pub graphs_with_distinct_pairs: u64,
    pub ell_histogram: BTreeMap<usize, u64>,
    pub ell_violation_histogram: BTreeMap<usize, u64>,
}

impl PartialCounts {
    fn merge(&mut self, other: &PartialCounts) {
        self.graphs_total += other.graphs_total;
        self.graphs_with_distinct_pairs += other.graphs_with_distinct_pairs;
        let mut stats = EllStatistics {
            pairs: std::mem::take(&mut self.ell_histogram),
            violations: std::mem::take(&mut self.ell_violation_histogram),
        };
        stats.merge(&EllStatistics {
            pairs: other.ell_histogram.clone(),
            violations: other.ell_violation_histogram.clone(),
        });
        self.ell_histogram = stats.pairs;
        self.ell_violation_histogram = stats.violations;
    }
}

/// Search effort spent proving a graph traceable before falling back to
/// the full subset DP. A traceable graph has the single longest-path set V.
const TRACEABLE_BUDGET: u32 = 64;

/// Per-graph analysis shared by every source.
pub struct GraphChecker {
    engine: LongestPathEngine,
    stats: EllStatistics,
    all_violations: bool,
}

impl GraphChecker {
    pub fn new(all_violations: bool) -> Self {
        GraphChecker {
            engine: LongestPathEngine::new(),
            stats: EllStatistics::default(),
            all_violations,
        }
    }

    fn check(
        &mut self,
        g: &SmallGraph,
        counts: &mut PartialCounts,
        violations: &mut Vec<ViolationRecord>,
    ) -> usize {
        counts.graphs_total += 1;
        if quick_traceable(g, TRACEABLE_BUDGET) {
            return 0;
        }
        let sets = self.engine.profile_sets(g);
        // Traceable graphs and graphs with one longest-path vertex set have
        // no distinct pair to test.
        if sets.len() < 2 {
            return 0;
        }
        counts.graphs_with_distinct_pairs += 1;
        self.stats.pairs.clear();
        self.stats.violations.clear();
        accumulate_statistics(g, sets, &mut self.stats);
        for (&ell, &c) in &self.stats.pairs {
            *counts.ell_histogram.entry(ell).or_default() += c;
        }
        if !self.stats.has_violation() {
            return 0;
        }
        for (&ell, &c) in &self.stats.violations {
            *counts.ell_violation_histogram.entry(ell).or_default() += c;
        }
        let before = violations.len();
        if self.all_violations {
            violations.extend(pairs_violations(g, sets));
        } else {
            violations.extend(first_violation(g, sets));
        }
        violations.len() - before
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ShardResult {
    shard_id: usize,
    counts: PartialCounts,
    violations: Vec<ViolationRecord>,
}

fn run_shard(
    shard: GenerationShard,
    all_violations: bool,
    on_violation: &(dyn Fn(&ViolationRecord) + Sync),
) -> ShardResult {
    let mut checker = GraphChecker::new(all_violations);
    let mut counts = PartialCounts::default();
    let mut violations = Vec::new();
    Generator::new().visit_connected(shard, |g| {
        let found = checker.check(g, &mut counts, &mut violations);
        for v in &violations[violations.len() - found..] {
            on_violation(v);
        }
    });
    ShardResult {
        shard_id: shard.shard_id,
        counts,
        violations,
    }
}

/// On-disk resume state.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct Checkpoint {
    pub n: usize,
    pub shard_count: usize,
    pub completed: Vec<usize>,
    pub partial_counts: PartialCounts,
    pub partial_violations: Vec<ViolationRecord>,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Option<Checkpoint>> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let cp: Checkpoint = serde_json::from_str(&text)
            .map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
        let unique: BTreeSet<_> = cp.completed.iter().collect();
        if unique.len() != cp.completed.len() || cp.completed.iter().any(|&s| s >= cp.shard_count) {
            return Err(Error::Checkpoint(format!(
                "{}: completed shard list is inconsistent",
                path.display()
            )));
        }
        Ok(Some(cp))
    }

    /// Writes via a temporary file and rename so a crash never leaves a
    /// truncated checkpoint.
    pub fn store(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec_pretty(self)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// Outcome of a sweep over one order.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SweepReport {
    pub n: usize,
    pub source: String,
    pub complete: bool,
    pub graphs_total: u64,
    /// Published class count for `n`, when known.
    pub graphs_expected: Option<u64>,
    pub graphs_with_distinct_pairs: u64,
    /// ℓ → number of distinct-set longest-path pairs.
    pub ell_histogram: BTreeMap<usize, u64>,
    /// ℓ → number of those pairs whose intersection is not a separator.
    pub ell_violation_histogram: BTreeMap<usize, u64>,
    pub violations: Vec<ViolationRecord>,
    pub shard_count: usize,
    pub shards_done: Vec<usize>,
    pub wall_time: f64,
}

impl SweepReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// Complete, no violations, and the class count matches the published one.
    pub fn certifies(&self) -> bool {
        self.complete && self.holds() && self.graphs_expected.is_none_or(|e| e == self.graphs_total)
    }

    /// Whether every pair with intersection size at most `ell` separates.
    pub fn separates_up_to(&self, ell: usize) -> bool {
        self.ell_violation_histogram
            .range(..=ell)
            .all(|(_, &c)| c == 0)
    }

    /// JSON with `wall_time` removed, for reproducibility comparisons.
    pub fn to_json_without_timing(&self) -> Result<String> {
        let mut v = serde_json::to_value(self)?;
        if let Some(obj) = v.as_object_mut() {
            obj.remove("wall_time");
        }
        Ok(serde_json::to_string_pretty(&v)?)
    }
}

struct Accumulator {
    counts: PartialCounts,
    violations: Vec<ViolationRecord>,
    completed: BTreeSet<usize>,
}

impl Accumulator {
    fn checkpoint(&self, n: usize, shard_count: usize) -> Checkpoint {
        Checkpoint {
            n,
            shard_count,
            completed: self.completed.iter().copied().collect(),
            partial_counts: self.counts.clone(),
            partial_violations: self.violations.clone(),
        }
    }
}

fn log_violation(v: &ViolationRecord) {
    log::warn!(
        "violation: {}",
        serde_json::to_string(v).unwrap_or_else(|e| e.to_string())
    );
}

/// Sweeps all connected graphs of order `opts.n`.
pub fn verify_n(opts: &VerifyOptions) -> Result<SweepReport> {
    verify_n_with(opts, &log_violation)
}

/// As [`verify_n`], calling `on_violation` as soon as a violation is found.
pub fn verify_n_with(
    opts: &VerifyOptions,
    on_violation: &(dyn Fn(&ViolationRecord) + Sync),
) -> Result<SweepReport> {
    if opts.jobs == 0 {
        return Err(Error::Precondition("jobs must be at least 1".into()));
    }
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))?;
    let mut report = match &opts.source {
        Source::Internal => pool.install(|| sweep_internal(opts, on_violation))?,
        Source::Graph6File(path) => {
            if opts.checkpoint.is_some() {
                return Err(Error::Checkpoint(
                    "checkpoints are only supported for the internal source".into(),
                ));
            }
            pool.install(|| sweep_external(opts, path, on_violation))?
        }
    };
    report.wall_time = start.elapsed().as_secs_f64();
    Ok(report)
}

fn sweep_internal(
    opts: &VerifyOptions,
    on_violation: &(dyn Fn(&ViolationRecord) + Sync),
) -> Result<SweepReport> {
    let n = opts.n;
    if n == 0 || n > MAX_GENERATED_ORDER {
        return Err(Error::OrderOutOfRange {
            n,
            min: 1,
            max: MAX_GENERATED_ORDER,
        });
    }
    GenerationShard::new(n, 0, opts.shard_count)?;

    let mut acc = Accumulator {
        counts: PartialCounts::default(),
        violations: Vec::new(),
        completed: BTreeSet::new(),
    };
    if let Some(path) = &opts.checkpoint {
        if let Some(cp) = Checkpoint::load(path)? {
            if cp.n != n || cp.shard_count != opts.shard_count {
                return Err(Error::ShardMismatch(format!(
                    "checkpoint {} is for n={} with {} shards, requested n={} with {} shards",
                    path.display(),
                    cp.n,
                    cp.shard_count,
                    n,
                    opts.shard_count
                )));
            }
            acc.counts = cp.partial_counts;
            acc.violations = cp.partial_violations;
            acc.completed = cp.completed.into_iter().collect();
            log::info!(
                "resuming n={n}: {}/{} shards already done",
                acc.completed.len(),
                opts.shard_count
            );
        }
    }

    let mut pending: Vec<usize> = (0..opts.shard_count)
        .filter(|s| !acc.completed.contains(s))
        .collect();
    if let Some(limit) = opts.max_new_shards {
        pending.truncate(limit);
    }

    let acc = Mutex::new(acc);
    pending.par_iter().try_for_each(|&shard_id| -> Result<()> {
        let shard = GenerationShard::new(n, shard_id, opts.shard_count)?;
        let result = run_shard(shard, opts.all_violations, on_violation);
        let mut acc = acc.lock().expect("accumulator lock poisoned");
        acc.counts.merge(&result.counts);
        acc.violations.extend(result.violations);
        acc.completed.insert(result.shard_id);
        if let Some(path) = &opts.checkpoint {
            acc.checkpoint(n, opts.shard_count).store(path)?;
        }
        log::debug!(
            "n={n}: shard {shard_id} done ({} total)",
            acc.completed.len()
        );
        Ok(())
    })?;

    let mut acc = acc.into_inner().expect("accumulator lock poisoned");
    acc.violations.sort();
    Ok(SweepReport {
        n,
        source: Source::Internal.to_string(),
        complete: acc.completed.len() == opts.shard_count,
        graphs_total: acc.counts.graphs_total,
        graphs_expected: published_count(n),
        graphs_with_distinct_pairs: acc.counts.graphs_with_distinct_pairs,
        ell_histogram: acc.counts.ell_histogram,
        ell_violation_histogram: acc.counts.ell_violation_histogram,
        violations: acc.violations,
        shard_count: opts.shard_count,
        shards_done: acc.completed.into_iter().collect(),
        wall_time: 0.0,
    })
}

/// Graphs handed to workers per batch when reading an external stream.
const EXTERNAL_BATCH: usize = 1 << 14;

fn sweep_external(
    opts: &VerifyOptions,
    path: &Path,
    on_violation: &(dyn Fn(&ViolationRecord) + Sync),
) -> Result<SweepReport> {
    let file = fs::File::open(path)?;
    let mut stream = checked_stream(
        Graph6Reader::new(std::io::BufReader::new(file)),
        opts.n,
        true,
    );
    let mut counts = PartialCounts::default();
    let mut violations = Vec::new();
    loop {
        let batch: Vec<SmallGraph> = stream
            .by_ref()
            .take(EXTERNAL_BATCH)
            .collect::<Result<_>>()?;
        if batch.is_empty() {
            break;
        }
        let parts: Vec<(PartialCounts, Vec<ViolationRecord>)> = batch
            .par_chunks(256)
            .map(|chunk| {
                let mut checker = GraphChecker::new(opts.all_violations);
                let mut c = PartialCounts::default();
                let mut v = Vec::new();
                for g in chunk {
                    let found = checker.check(g, &mut c, &mut v);
                    for rec in &v[v.len() - found..] {
                        on_violation(rec);
                    }
                }
                (c, v)
            })
            .collect();
        for (c, v) in parts {
            counts.merge(&c);
            violations.extend(v);
        }
    }
    violations.sort();
    Ok(SweepReport {
        n: opts.n,
        source: opts.source.to_string(),
        complete: true,
        graphs_total: counts.graphs_total,
        graphs_expected: None,
        graphs_with_distinct_pairs: counts.graphs_with_distinct_pairs,
        ell_histogram: counts.ell_histogram,
        ell_violation_histogram: counts.ell_violation_histogram,
        violations,
        shard_count: 1,
        shards_done: vec![0],
        wall_time: 0.0,
    })
}
