//! Exact longest paths by dynamic programming over vertex subsets.
//!
//! For every nonempty `S`, `end(S)` holds the vertices at which some simple
//! path visiting exactly `S` can end:
//!
//! * `end({v}) = {v}`
//! * `v ∈ end(S)` iff some `u ∈ end(S \ {v})` is adjacent to `v`.
//!
//! Lengths are edge counts; profiles store the vertex count (`order`).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SmallGraph, VertexId, VertexSet};

/// A simple path, listed vertex by vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PathSeq(Vec<VertexId>);

impl PathSeq {
    /// Wraps `vertices` after checking that they form a simple path in `g`.
    pub fn new(g: &SmallGraph, vertices: Vec<VertexId>) -> Result<Self> {
        let p = PathSeq(vertices);
        p.validate(g)?;
        Ok(p)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn endpoints(&self) -> Option<(VertexId, VertexId)> {
        Some((*self.0.first()?, *self.0.last()?))
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.0.iter().position(|&u| u == v)
    }

    pub fn validate(&self, g: &SmallGraph) -> Result<()> {
        if self.0.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut seen = VertexSet::EMPTY;
        for (i, &v) in self.0.iter().enumerate() {
            if v >= g.order() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: g.order(),
                });
            }
            if seen.contains(v) {
                return Err(Error::Precondition(format!(
                    "vertex {} repeats in path",
                    v + 1
                )));
            }
            seen.insert(v);
            if i > 0 && !g.has_edge(self.0[i - 1], v) {
                return Err(Error::Precondition(format!(
                    "consecutive path vertices {} and {} are not adjacent",
                    self.0[i - 1] + 1,
                    v + 1
                )));
            }
        }
        Ok(())
    }

    /// 1-based labels.
    pub fn to_labels(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }
}

/// Number of edges between `u` and `v` along `p`.
pub fn path_distance(p: &PathSeq, u: VertexId, v: VertexId) -> Result<usize> {
    let a = p.position(u).ok_or(Error::NotOnPath(u))?;
    let b = p.position(v).ok_or(Error::NotOnPath(v))?;
    Ok(a.abs_diff(b))
}

/// Longest-path order of a graph and every vertex set carrying a longest path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LongestPathProfile {
    order: usize,
    sets: Vec<VertexSet>,
}

impl LongestPathProfile {
    /// Vertex count of a longest path.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Edge count of a longest path.
    pub fn length(&self) -> usize {
        self.order - 1
    }

    /// Vertex sets of longest paths, ascending by bit value.
    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn has_distinct_sets(&self) -> bool {
        self.sets.len() >= 2
    }
}

/// Subset DP with a reusable endpoint table. One engine per worker.
#[derive(Default)]
pub struct LongestPathEngine {
    table: Vec<u16>,
    filled_for: Option<SmallGraph>,
    sets: Vec<VertexSet>,
}

impl LongestPathEngine {
    pub fn new() -> Self {
        Self::default()
    }

    fn fill(&mut self, g: &SmallGraph) {
        if self.filled_for.as_ref() == Some(g) {
            return;
        }
        let n = g.order();
        let size = 1usize << n;
        if self.table.len() < size {
            self.table.resize(size, 0);
        }
        let mut adj = [0u16; crate::graph::MAX_ORDER];
        for (v, a) in g.adjacency().iter().enumerate() {
            adj[v] = a.bits();
        }
        let table = &mut self.table[..size];
        let mut best = 0u32;
        self.sets.clear();
        table[0] = 0;
        for s in 1..size {
            let mut end = 0u16;
            if s & (s - 1) == 0 {
                end = s as u16;
            } else {
                let mut rest = s;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if adj[v] & table[s ^ (1 << v)] != 0 {
                        end |= 1 << v;
                    }
                }
            }
            table[s] = end;
            if end != 0 {
                let k = s.count_ones();
                if k > best {
                    best = k;
                    self.sets.clear();
                }
                if k == best {
                    self.sets.push(VertexSet::from_bits(s as u16));
                }
            }
        }
        self.filled_for = Some(*g);
    }

    /// Endpoints of paths visiting exactly `s`.
    pub fn endpoints(&mut self, g: &SmallGraph, s: VertexSet) -> VertexSet {
        self.fill(g);
        VertexSet::from_bits(self.table[s.bits() as usize])
    }

    pub fn profile(&mut self, g: &SmallGraph) -> LongestPathProfile {
        self.fill(g);
        LongestPathProfile {
            order: self.sets[0].len(),
            sets: self.sets.clone(),
        }
    }

    /// Longest-path order only; avoids cloning the set list.
    pub fn longest_order(&mut self, g: &SmallGraph) -> usize {
        self.fill(g);
        self.sets[0].len()
    }

    /// Longest-path vertex sets of the last filled graph, borrowed.
    pub fn profile_sets(&mut self, g: &SmallGraph) -> &[VertexSet] {
        self.fill(g);
        &self.sets
    }

    pub fn hamiltonian_path_exists(&mut self, g: &SmallGraph) -> bool {
        self.endpoints(g, g.vertices()) != VertexSet::EMPTY
    }

    /// A path visiting exactly `s`. Starts from the lowest valid endpoint and
    /// always steps to the lowest-index admissible neighbor.
    pub fn reconstruct_path(&mut self, g: &SmallGraph, s: VertexSet) -> Result<PathSeq> {
        if !s.is_subset(g.vertices()) || s.is_empty() {
            return Err(Error::NoPath(s.to_string()));
        }
        self.fill(g);
        let mut rest = s;
        let mut cur = VertexSet::from_bits(self.table[rest.bits() as usize])
            .min()
            .ok_or_else(|| Error::NoPath(s.to_string()))?;
        let mut path = Vec::with_capacity(s.len());
        loop {
            path.push(cur);
            rest.remove(cur);
            if rest.is_empty() {
                break;
            }
            let options = VertexSet::from_bits(self.table[rest.bits() as usize]) & g.neighbors(cur);
            cur = options
                .min()
                .expect("endpoint table guarantees a predecessor");
        }
        PathSeq::new(g, path)
    }
}

/// Looks for a Hamiltonian path by depth-first search, always trying the
/// neighbor with the fewest unvisited neighbors first, and gives up after
/// `budget` extensions. `true` is a proof; `false` means unknown.
pub fn quick_traceable(g: &SmallGraph, budget: u32) -> bool {
    let n = g.order();
    let mut adj = [0u16; crate::graph::MAX_ORDER];
    for (v, a) in g.adjacency().iter().enumerate() {
        adj[v] = a.bits();
    }
    let full = g.vertices().bits();
    let leaves = (0..n).filter(|&v| adj[v].count_ones() <= 1).count();
    if n == 1 {
        return true;
    }
    if leaves > 2 || (0..n).any(|v| adj[v] == 0) {
        return false;
    }

    fn go(adj: &[u16; 16], full: u16, v: usize, seen: u16, budget: &mut u32) -> bool {
        if seen == full {
            return true;
        }
        let mut cand = adj[v] & !seen;
        let mut order = [(0u32, 0usize); 16];
        let mut k = 0;
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            order[k] = ((adj[u] & !seen).count_ones(), u);
            k += 1;
        }
        order[..k].sort_unstable();
        for &(_, u) in &order[..k] {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            if go(adj, full, u, seen | 1 << u, budget) {
                return true;
            }
        }
        false
    }

    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| adj[v].count_ones());
    if leaves > 0 {
        starts.retain(|&v| adj[v].count_ones() == 1);
    }
    let mut left = budget;
    starts
        .into_iter()
        .any(|v| left > 0 && go(&adj, full, v, 1 << v, &mut left))
}

pub fn longest_path_profile(g: &SmallGraph) -> LongestPathProfile {
    LongestPathEngine::new().profile(g)
}

pub fn reconstruct_path(g: &SmallGraph, s: VertexSet) -> Result<PathSeq> {
    LongestPathEngine::new().reconstruct_path(g, s)
}

pub fn hamiltonian_path_exists(g: &SmallGraph) -> bool {
    LongestPathEngine::new().hamiltonian_path_exists(g)
}
