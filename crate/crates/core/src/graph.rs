//! Compact simple graphs on at most 16 vertices.
//!
//! Vertices are `0..n` internally. Anything printed for a reader (reports,
//! edge lists, JSON) uses 1-based labels.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use crate::error::{Error, Result};

/// Largest supported graph order.
pub const MAX_ORDER: usize = 16;

/// Index of a vertex in its owning graph.
pub type VertexId = usize;

/// A subset of `0..16`, stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u16);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u16) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u16 {
        self.0
    }

    /// All vertices of a graph of order `n`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 16 {
            VertexSet(u16::MAX)
        } else {
            VertexSet((1u16 << n) - 1)
        }
    }

    #[inline]
    pub const fn singleton(v: VertexId) -> Self {
        VertexSet(1 << v)
    }

    #[inline]
    pub const fn contains(self, v: VertexId) -> bool {
        v < 16 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: VertexId) {
        self.0 |= 1 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: VertexId) {
        self.0 &= !(1 << v);
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Complement relative to the universe `0..n`.
    #[inline]
    pub const fn complement(self, n: usize) -> Self {
        VertexSet(!self.0 & VertexSet::full(n).0)
    }

    #[inline]
    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn min(self) -> Option<VertexId> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    #[inline]
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Members as 1-based labels, ascending.
    pub fn to_labels(self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = VertexId;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;

    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;

    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;

    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

/// Complement within the full 16-vertex universe; prefer [`VertexSet::complement`].
impl Not for VertexSet {
    type Output = VertexSet;

    fn not(self) -> Self {
        VertexSet(!self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// 1-based, e.g. `{1,3,4}`.
impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("}")
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone, Debug)]
pub struct Members(u16);

impl Iterator for Members {
    type Item = VertexId;

    #[inline]
    fn next(&mut self) -> Option<VertexId> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Members {}

/// Simple undirected graph on `1..=16` vertices.
///
/// Adjacency is symmetric and loop-free; every mutator preserves both.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    n: u8,
    adj: [VertexSet; MAX_ORDER],
}

impl SmallGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::UnsupportedOrder(n));
        }
        Ok(SmallGraph {
            n: n as u8,
            adj: [VertexSet::EMPTY; MAX_ORDER],
        })
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = SmallGraph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency masks. Masks must already be
    /// symmetric and loop-free; this is checked.
    pub fn from_adjacency(adj: &[VertexSet]) -> Result<Self> {
        let mut g = SmallGraph::empty(adj.len())?;
        let full = VertexSet::full(adj.len());
        for (u, &row) in adj.iter().enumerate() {
            if !row.is_subset(full) {
                return Err(Error::VertexOutOfRange {
                    vertex: (row - full).min().unwrap_or(0),
                    order: adj.len(),
                });
            }
            if row.contains(u) {
                return Err(Error::InvalidEdge { u, v: u });
            }
            for v in row {
                if !adj[v].contains(u) {
                    return Err(Error::InvalidEdge { u, v });
                }
            }
            g.adj[u] = row;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        SmallGraph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        let mut g = SmallGraph::path(n)?;
        if n >= 3 {
            g.add_edge(n - 1, 0)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = SmallGraph::empty(n)?;
        let full = VertexSet::full(n);
        for v in 0..n {
            g.adj[v] = full - VertexSet::singleton(v);
        }
        Ok(g)
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        SmallGraph::from_edges(leaves + 1, &edges)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adj[..self.order()]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.order() && self.adj[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency().iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            for v in self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v >= self.order() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            });
        }
        Ok(())
    }

    /// Inserts `{u, v}`. Inserting an existing edge is a no-op.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidEdge { u, v });
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    /// Value-returning form of [`SmallGraph::add_edge`].
    pub fn with_edge(mut self, u: VertexId, v: VertexId) -> Result<Self> {
        self.add_edge(u, v)?;
        Ok(self)
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.adj[u].remove(v);
        self.adj[v].remove(u);
        Ok(())
    }

    /// Appends a vertex adjacent to `nbrs` and returns its index.
    pub fn add_vertex(&mut self, nbrs: VertexSet) -> Result<VertexId> {
        let v = self.order();
        if v == MAX_ORDER {
            return Err(Error::UnsupportedOrder(v + 1));
        }
        if !nbrs.is_subset(self.vertices()) {
            return Err(Error::VertexOutOfRange {
                vertex: (nbrs - self.vertices()).min().unwrap_or(v),
                order: v,
            });
        }
        self.n += 1;
        self.adj[v] = nbrs;
        for u in nbrs {
            self.adj[u].insert(v);
        }
        Ok(v)
    }

    /// `N(A)`: every vertex with at least one neighbor in `a`. This can
    /// include members of `a` itself.
    pub fn neighbors_of_set(&self, a: VertexSet) -> VertexSet {
        self.adjacency()
            .iter()
            .enumerate()
            .filter(|(_, nb)| !nb.intersection(a).is_empty())
            .map(|(u, _)| u)
            .collect()
    }

    /// Vertices reachable from `start` using only vertices of `within`.
    #[inline]
    pub fn reach_within(&self, start: VertexId, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next | self.adj[v];
            }
            frontier = next.intersection(within) - seen;
            seen = seen | frontier;
        }
        seen
    }

    /// Whether the subgraph induced by `s` is connected.
    pub fn is_connected_within(&self, s: VertexSet) -> Result<bool> {
        let start = s.min().ok_or(Error::EmptySet)?;
        if !s.is_subset(self.vertices()) {
            return Err(Error::VertexOutOfRange {
                vertex: (s - self.vertices()).min().unwrap_or(0),
                order: self.order(),
            });
        }
        Ok(self.reach_within(start, s) == s)
    }

    pub fn is_connected(&self) -> bool {
        self.reach_within(0, self.vertices()) == self.vertices()
    }

    /// Number of connected components of the subgraph induced by `s`.
    pub fn component_count_within(&self, s: VertexSet) -> usize {
        let mut rest = s;
        let mut count = 0;
        while let Some(v) = rest.min() {
            rest = rest - self.reach_within(v, s);
            count += 1;
        }
        count
    }

    /// Subgraph induced by `s`, relabeled to `0..|s|` in increasing order.
    /// The returned map sends new labels to old ones.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<(SmallGraph, Vec<VertexId>)> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        if !s.is_subset(self.vertices()) {
            return Err(Error::VertexOutOfRange {
                vertex: (s - self.vertices()).min().unwrap_or(0),
                order: self.order(),
            });
        }
        let map: Vec<VertexId> = s.iter().collect();
        let mut new_index = [usize::MAX; MAX_ORDER];
        for (i, &v) in map.iter().enumerate() {
            new_index[v] = i;
        }
        let mut g = SmallGraph::empty(map.len())?;
        for (i, &v) in map.iter().enumerate() {
            g.adj[i] = self.adj[v]
                .intersection(s)
                .iter()
                .map(|u| new_index[u])
                .collect();
        }
        Ok((g, map))
    }

    /// The graph with vertex `v` deleted; later vertices shift down by one.
    pub fn delete_vertex(&self, v: VertexId) -> Result<SmallGraph> {
        self.check_vertex(v)?;
        let keep = self.vertices() - VertexSet::singleton(v);
        Ok(self.induced_subgraph(keep)?.0)
    }

    /// Relabels by `perm`, where vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[VertexId]) -> SmallGraph {
        let n = self.order();
        assert_eq!(perm.len(), n, "permutation length must equal graph order");
        let mut g = SmallGraph {
            n: self.n,
            adj: [VertexSet::EMPTY; MAX_ORDER],
        };
        for v in 0..n {
            g.adj[perm[v]] = self.adj[v].iter().map(|u| perm[u]).collect();
        }
        g
    }

    /// Text edge list: `n m` then one `u v` line per edge, 1-based.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.order(), edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }

    /// Parses the edge-list text format. `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<SmallGraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let parse_pair = |line: usize, l: &str| -> Result<(usize, usize)> {
            let fields: Vec<&str> = l.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::EdgeList {
                    line,
                    message: format!("expected two integers, found {:?}", l),
                });
            }
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|e| Error::EdgeList {
                    line,
                    message: format!("{s:?}: {e}"),
                })
            };
            Ok((parse(fields[0])?, parse(fields[1])?))
        };

        let (hline, header) = lines.next().ok_or(Error::EdgeList {
            line: 1,
            message: "missing \"n m\" header".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut g = SmallGraph::empty(n).map_err(|e| Error::EdgeList {
            line: hline,
            message: e.to_string(),
        })?;
        let mut seen = 0;
        for (line, l) in lines {
            let (u, v) = parse_pair(line, l)?;
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::EdgeList {
                    line,
                    message: format!("labels must be in 1..={n}"),
                });
            }
            g.add_edge(u - 1, v - 1).map_err(|e| Error::EdgeList {
                line,
                message: e.to_string(),
            })?;
            seen += 1;
        }
        if seen != m {
            return Err(Error::EdgeList {
                line: hline,
                message: format!("header announces {m} edges, found {seen}"),
            });
        }
        Ok(g)
    }
}

/// Orders by vertex count, then adjacency rows.
impl PartialOrd for SmallGraph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SmallGraph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order(), self.adjacency()).cmp(&(other.order(), other.adjacency()))
    }
}

impl fmt::Debug for SmallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmallGraph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn add_edge_examples() {
        let k2 = SmallGraph::empty(2).unwrap().with_edge(0, 1).unwrap();
        assert_eq!(k2, SmallGraph::complete(2).unwrap());
        assert_eq!(k2.with_edge(0, 1).unwrap(), k2);
        let c3 = SmallGraph::path(3).unwrap().with_edge(0, 2).unwrap();
        assert_eq!(c3, SmallGraph::cycle(3).unwrap());
    }

    #[test]
    fn loops_and_out_of_range_rejected() {
        let mut g = SmallGraph::empty(3).unwrap();
        assert!(matches!(g.add_edge(1, 1), Err(Error::InvalidEdge { .. })));
        assert!(matches!(
            g.add_edge(0, 3),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(SmallGraph::empty(0).is_err());
        assert!(SmallGraph::empty(17).is_err());
    }

    #[test]
    fn neighbors_of_set_examples() {
        let star = SmallGraph::star(3).unwrap();
        assert_eq!(star.neighbors_of_set(set(&[0])), set(&[1, 2, 3]));
        let k2 = SmallGraph::complete(2).unwrap();
        assert_eq!(k2.neighbors_of_set(set(&[0, 1])), set(&[0, 1]));
        let p3 = SmallGraph::path(3).unwrap();
        assert_eq!(p3.neighbors_of_set(set(&[2])), set(&[1]));
    }

    #[test]
    fn connectivity_examples() {
        let c4 = SmallGraph::cycle(4).unwrap();
        assert!(c4.is_connected_within(c4.vertices()).unwrap());
        let p3 = SmallGraph::path(3).unwrap();
        assert!(!p3.is_connected_within(set(&[0, 2])).unwrap());
        for v in 0..3 {
            assert!(p3.is_connected_within(set(&[v])).unwrap());
        }
        assert!(matches!(
            p3.is_connected_within(VertexSet::EMPTY),
            Err(Error::EmptySet)
        ));
    }

    #[test]
    fn induced_subgraph_examples() {
        let k3 = SmallGraph::complete(3).unwrap();
        let (sub, map) = k3.induced_subgraph(set(&[0, 2])).unwrap();
        assert_eq!(sub, SmallGraph::complete(2).unwrap());
        assert_eq!(map, vec![0, 2]);
        let p4 = SmallGraph::path(4).unwrap();
        assert_eq!(
            p4.induced_subgraph(set(&[0, 1])).unwrap().0,
            SmallGraph::complete(2).unwrap()
        );
        assert!(matches!(
            p4.induced_subgraph(VertexSet::EMPTY),
            Err(Error::EmptySet)
        ));
    }

    #[test]
    fn add_vertex_keeps_symmetry() {
        let mut g = SmallGraph::path(3).unwrap();
        let v = g.add_vertex(set(&[0, 2])).unwrap();
        assert_eq!(v, 3);
        assert!(g.has_edge(0, 3) && g.has_edge(3, 2));
        assert_eq!(g, SmallGraph::cycle(4).unwrap().relabel(&[0, 1, 2, 3]));
    }

    #[test]
    fn edge_list_round_trip_and_errors() {
        let text = "# a path\n3 2\n1 2 # first\n2 3\n";
        let g = SmallGraph::parse_edge_list(text).unwrap();
        assert_eq!(g, SmallGraph::path(3).unwrap());
        assert_eq!(SmallGraph::parse_edge_list(&g.to_edge_list()).unwrap(), g);

        assert!(matches!(
            SmallGraph::parse_edge_list("3 2\n1 2\n"),
            Err(Error::EdgeList { line: 1, .. })
        ));
        assert!(matches!(
            SmallGraph::parse_edge_list("3 1\n1 4\n"),
            Err(Error::EdgeList { line: 2, .. })
        ));
        assert!(matches!(
            SmallGraph::parse_edge_list("3 1\n2 2\n"),
            Err(Error::EdgeList { line: 2, .. })
        ));
        assert!(SmallGraph::parse_edge_list("").is_err());
    }

    #[test]
    fn vertex_set_display_is_one_based() {
        assert_eq!(set(&[0, 2, 3]).to_string(), "{1,3,4}");
        assert_eq!(set(&[1, 5]).complement(6), set(&[0, 2, 3, 4]));
        assert_eq!(VertexSet::full(16).len(), 16);
    }
}
