//! Isomorph-free generation of connected graphs by canonical augmentation.
//!
//! Graphs on `m + 1` vertices are grown from canonical representatives on
//! `m` vertices by adding one vertex joined to a subset of the old ones. A
//! child is kept only when the added vertex is the canonical deletion
//! vertex: a vertex of maximum degree whose removal gives back the parent's
//! class, chosen as the last such vertex in canonical order. Children of the
//! same parent are deduplicated by canonical form, so each class appears
//! exactly once. Disconnected intermediates are kept; connectivity is only
//! required of emitted graphs.

use std::collections::HashSet;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use crate::canon::{CanonicalForm, Canonizer};
use crate::error::{Error, Result};
use crate::graph::{SmallGraph, VertexSet};
use crate::graph6::{Graph6Reader, StreamItem};

/// Largest order supported by the built-in generator.
pub const MAX_GENERATED_ORDER: usize = 10;

/// Level whose graphs are dealt out to shards.
pub const SHARD_LEVEL: usize = 7;

/// One slice of the generation tree for order `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenerationShard {
    pub n: usize,
    pub shard_id: usize,
    pub shard_count: usize,
}

impl GenerationShard {
    pub fn new(n: usize, shard_id: usize, shard_count: usize) -> Result<Self> {
        check_order(n)?;
        if shard_count == 0 || shard_id >= shard_count {
            return Err(Error::InvalidShard {
                shard_id,
                shard_count,
            });
        }
        Ok(GenerationShard {
            n,
            shard_id,
            shard_count,
        })
    }

    /// The single shard covering everything.
    pub fn whole(n: usize) -> Result<Self> {
        GenerationShard::new(n, 0, 1)
    }

    fn owns(&self, ancestor_index: usize) -> bool {
        ancestor_index % self.shard_count == self.shard_id
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_GENERATED_ORDER {
        return Err(Error::OrderOutOfRange {
            n,
            min: 1,
            max: MAX_GENERATED_ORDER,
        });
    }
    Ok(())
}

/// Canonical-augmentation generator. Owns its scratch; one per worker.
#[derive(Default)]
pub struct Generator {
    canon: Canonizer,
    seen: Vec<HashSet<CanonicalForm>>,
}

impl Generator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Calls `emit` once per isomorphism class of connected graphs of order
    /// `shard.n` owned by `shard`. Returns the number emitted.
    pub fn visit_connected<F>(&mut self, shard: GenerationShard, mut emit: F) -> u64
    where
        F: FnMut(&SmallGraph),
    {
        let n = shard.n;
        let k1 = SmallGraph::empty(1).expect("order 1 is valid");
        if n == 1 {
            if shard.owns(0) {
                emit(&k1);
                return 1;
            }
            return 0;
        }
        let level = SHARD_LEVEL.min(n - 1);
        let mut ancestors = Vec::new();
        self.extend(&k1, level, true, &mut |g: &SmallGraph| ancestors.push(*g));

        let mut count = 0u64;
        for (i, a) in ancestors.iter().enumerate() {
            if !shard.owns(i) {
                continue;
            }
            self.extend(a, n, false, &mut |g: &SmallGraph| {
                emit(g);
                count += 1;
            });
        }
        count
    }

    /// Depth-first extension of canonical `h` up to order `target`, calling
    /// `emit` on every graph of that order (all of them when `keep_all`,
    /// connected ones otherwise).
    fn extend(
        &mut self,
        h: &SmallGraph,
        target: usize,
        keep_all: bool,
        emit: &mut dyn FnMut(&SmallGraph),
    ) {
        let m = h.order();
        if m == target {
            emit(h);
            return;
        }
        let last = m + 1 == target;
        let need_connected = last && !keep_all;

        let mut degree = [0usize; 16];
        let mut max_deg = 0;
        for (v, d) in degree.iter_mut().enumerate().take(m) {
            *d = h.degree(v);
            max_deg = max_deg.max(*d);
        }
        // deg_at_least[k] = vertices of h with degree >= k.
        let mut deg_at_least = [0u16; 17];
        for (k, mask) in deg_at_least.iter_mut().enumerate().take(m + 1) {
            *mask = (0..m)
                .filter(|&v| degree[v] >= k)
                .fold(0, |acc, v| acc | 1 << v);
        }

        if self.seen.len() <= m {
            self.seen.resize_with(m + 1, HashSet::new);
        }
        let mut seen = std::mem::take(&mut self.seen[m]);
        seen.clear();
        let mut children: Vec<SmallGraph> = Vec::new();
        let h_form = self.canon.canonical_form(h);

        for bits in 0u32..(1 << m) {
            let s = bits as u16;
            let k = s.count_ones() as usize;
            // The new vertex must have maximum degree in the child.
            if k < max_deg || s & deg_at_least[k] != 0 {
                continue;
            }
            let mut g = *h;
            let new = g
                .add_vertex(VertexSet::from_bits(s))
                .expect("order below cap");
            if need_connected && !g.is_connected() {
                continue;
            }
            let lab = self.canon.canonical_labeling(&g);
            // Last max-degree vertex in canonical order.
            let w = (0..=m)
                .rev()
                .map(|t| lab.order[t] as usize)
                .find(|&v| g.degree(v) == k)
                .expect("new vertex has maximum degree");
            if w != new {
                let reduced = g.delete_vertex(w).expect("w is a vertex");
                if self.canon.canonical_form(&reduced) != h_form {
                    continue;
                }
            }
            if !seen.insert(lab.form) {
                continue;
            }
            children.push(lab.form.to_graph());
        }
        self.seen[m] = seen;

        for child in &children {
            if last {
                emit(child);
            } else {
                self.extend(child, target, keep_all, emit);
            }
        }
    }
}

/// All connected graphs of order `shard.n` in `shard`, as canonical
/// representatives in generation order.
pub fn enumerate_connected(shard: GenerationShard) -> Vec<SmallGraph> {
    let mut out = Vec::new();
    Generator::new().visit_connected(shard, |g| out.push(*g));
    out
}

/// Number of isomorphism classes of connected graphs on `n` vertices.
pub fn count_connected(n: usize) -> Result<u64> {
    let shard = GenerationShard::whole(n)?;
    Ok(Generator::new().visit_connected(shard, |_| {}))
}

/// Reads graphs from a graph6 file, checking order and (optionally)
/// connectivity of each record.
pub fn external_source(
    path: impl AsRef<Path>,
    expected_n: usize,
    require_connected: bool,
) -> Result<impl Iterator<Item = Result<SmallGraph>>> {
    let reader = Graph6Reader::new(BufReader::new(File::open(path)?));
    Ok(checked_stream(reader, expected_n, require_connected))
}

pub(crate) fn checked_stream<I>(
    items: I,
    expected_n: usize,
    require_connected: bool,
) -> impl Iterator<Item = Result<SmallGraph>>
where
    I: Iterator<Item = Result<StreamItem>>,
{
    items.filter_map(move |item| match item {
        Err(e) => Some(Err(e)),
        Ok(StreamItem::Skipped { line }) => {
            log::warn!("line {line}: skipping non-graph6 record");
            None
        }
        Ok(StreamItem::Graph { line, graph }) => Some(if graph.order() != expected_n {
            Err(Error::OrderMismatch {
                line,
                expected: expected_n,
                found: graph.order(),
            })
        } else if require_connected && !graph.is_connected() {
            Err(Error::Disconnected { line })
        } else {
            Ok(graph)
        }),
    })
}
