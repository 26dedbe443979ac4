//! The separator predicate and the search for longest-path pairs whose
//! common vertices fail to separate the graph.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SmallGraph, VertexSet};
use crate::graph6::{decode_graph6, encode_graph6};
use crate::longest_path::{LongestPathEngine, LongestPathProfile};

/// Whether deleting `w` disconnects `g`.
///
/// An empty complement has no agreed connectivity status and is an error.
pub fn is_separator(g: &SmallGraph, w: VertexSet) -> Result<bool> {
    let rest = w.complement(g.order());
    if rest.is_empty() {
        return Err(Error::EmptyComplement);
    }
    Ok(!g.is_connected_within(rest)?)
}

/// Two longest paths with different vertex sets whose intersection leaves a
/// connected remainder.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ViolationRecord {
    pub graph: SmallGraph,
    pub set_p: VertexSet,
    pub set_q: VertexSet,
    pub intersection: VertexSet,
    pub ell: usize,
    pub complement_components: usize,
}

impl ViolationRecord {
    fn new(g: &SmallGraph, set_p: VertexSet, set_q: VertexSet) -> Self {
        let intersection = set_p & set_q;
        ViolationRecord {
            graph: *g,
            set_p,
            set_q,
            intersection,
            ell: intersection.len(),
            complement_components: g.component_count_within(intersection.complement(g.order())),
        }
    }

    /// `V(G)` minus the intersection.
    pub fn complement(&self) -> VertexSet {
        self.intersection.complement(self.graph.order())
    }

    /// Rechecks the record from scratch: both sets carry longest paths of
    /// the recorded graph and their intersection does not separate it.
    pub fn revalidate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::WitnessFailure(m));
        if self.set_p == self.set_q {
            return fail("set_p equals set_q".into());
        }
        let profile = LongestPathEngine::new().profile(&self.graph);
        for s in [self.set_p, self.set_q] {
            if !profile.sets().contains(&s) {
                return fail(format!("{s} is not the vertex set of a longest path"));
            }
        }
        if self.intersection != self.set_p & self.set_q || self.ell != self.intersection.len() {
            return fail("intersection fields are inconsistent".into());
        }
        if is_separator(&self.graph, self.intersection)? {
            return fail(format!("{} separates the graph", self.intersection));
        }
        if self.complement_components != 1 {
            return fail(format!(
                "complement_components is {}, expected 1",
                self.complement_components
            ));
        }
        Ok(())
    }
}

/// Wire form: `{"n", "graph6", "set_p", "set_q", "ell"}` with 1-based ids.
#[derive(Serialize, Deserialize)]
struct ViolationJson {
    n: usize,
    graph6: String,
    set_p: Vec<usize>,
    set_q: Vec<usize>,
    ell: usize,
}

impl Serialize for ViolationRecord {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        ViolationJson {
            n: self.graph.order(),
            graph6: encode_graph6(&self.graph),
            set_p: self.set_p.to_labels(),
            set_q: self.set_q.to_labels(),
            ell: self.ell,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ViolationRecord {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ViolationJson::deserialize(deserializer)?;
        let graph = decode_graph6(raw.graph6.as_bytes()).map_err(D::Error::custom)?;
        if graph.order() != raw.n {
            return Err(D::Error::custom("n does not match graph6 order"));
        }
        let to_set = |labels: &[usize]| -> std::result::Result<VertexSet, D::Error> {
            labels
                .iter()
                .map(|&l| {
                    if l == 0 || l > raw.n {
                        Err(D::Error::custom(format!("label {l} out of range")))
                    } else {
                        Ok(l - 1)
                    }
                })
                .collect()
        };
        let rec = ViolationRecord::new(&graph, to_set(&raw.set_p)?, to_set(&raw.set_q)?);
        if rec.ell != raw.ell {
            return Err(D::Error::custom("ell does not match the sets"));
        }
        Ok(rec)
    }
}

/// Distinct-set pairs `(S1, S2)` with `S1 < S2`, in lexicographic order.
fn pairs(sets: &[VertexSet]) -> impl Iterator<Item = (VertexSet, VertexSet)> + '_ {
    sets.iter()
        .enumerate()
        .flat_map(move |(i, &a)| sets[i + 1..].iter().map(move |&b| (a, b)))
}

#[inline]
fn pair_violates(g: &SmallGraph, a: VertexSet, b: VertexSet) -> bool {
    let rest = (a & b).complement(g.order());
    match rest.min() {
        Some(start) => g.reach_within(start, rest) == rest,
        None => false,
    }
}

/// First violating pair in lexicographic order, if any.
pub fn find_violating_pair(
    g: &SmallGraph,
    profile: &LongestPathProfile,
) -> Option<ViolationRecord> {
    first_violation(g, profile.sets())
}

pub(crate) fn first_violation(g: &SmallGraph, sets: &[VertexSet]) -> Option<ViolationRecord> {
    if sets.len() < 2 {
        return None;
    }
    pairs(sets)
        .find(|&(a, b)| pair_violates(g, a, b))
        .map(|(a, b)| ViolationRecord::new(g, a, b))
}

/// Every violating pair, in lexicographic order.
pub fn find_all_violations(g: &SmallGraph, profile: &LongestPathProfile) -> Vec<ViolationRecord> {
    pairs_violations(g, profile.sets()).collect()
}

pub(crate) fn pairs_violations<'a>(
    g: &'a SmallGraph,
    sets: &'a [VertexSet],
) -> impl Iterator<Item = ViolationRecord> + 'a {
    pairs(sets)
        .filter(|&(a, b)| pair_violates(g, a, b))
        .map(|(a, b)| ViolationRecord::new(g, a, b))
}

/// Distinct-set pair counts bucketed by intersection size.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllStatistics {
    /// ℓ → number of distinct-set pairs with that intersection size.
    pub pairs: BTreeMap<usize, u64>,
    /// ℓ → number of those pairs that are violations.
    pub violations: BTreeMap<usize, u64>,
}

impl EllStatistics {
    pub fn has_violation(&self) -> bool {
        self.violations.values().any(|&c| c > 0)
    }

    pub fn total_pairs(&self) -> u64 {
        self.pairs.values().sum()
    }

    pub fn merge(&mut self, other: &EllStatistics) {
        for (&ell, &c) in &other.pairs {
            *self.pairs.entry(ell).or_default() += c;
        }
        for (&ell, &c) in &other.violations {
            *self.violations.entry(ell).or_default() += c;
        }
    }
}

pub fn min_ell_statistics(g: &SmallGraph, profile: &LongestPathProfile) -> EllStatistics {
    let mut stats = EllStatistics::default();
    accumulate_statistics(g, profile.sets(), &mut stats);
    stats
}

pub(crate) fn accumulate_statistics(g: &SmallGraph, sets: &[VertexSet], stats: &mut EllStatistics) {
    for (a, b) in pairs(sets) {
        let ell = (a & b).len();
        *stats.pairs.entry(ell).or_default() += 1;
        if pair_violates(g, a, b) {
            *stats.violations.entry(ell).or_default() += 1;
        }
    }
}
