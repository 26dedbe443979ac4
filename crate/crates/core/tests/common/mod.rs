#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use longpath_core::{SmallGraph, VertexSet};
use rand::Rng;

/// Vertex pairs in a fixed order; bit `t` of a code is the `t`-th pair.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).tuple_combinations().collect()
}

pub fn labeled_graph(n: usize, code: u64) -> SmallGraph {
    let edges: Vec<_> = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(t, _)| code >> t & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    SmallGraph::from_edges(n, &edges).unwrap()
}

/// Every labeled graph on `n` vertices.
pub fn all_labeled(n: usize) -> impl Iterator<Item = SmallGraph> {
    let m = n * n.saturating_sub(1) / 2;
    (0..1u64 << m).map(move |c| labeled_graph(n, c))
}

pub fn random_graph(rng: &mut impl Rng, n: usize) -> SmallGraph {
    let p: f64 = rng.gen_range(0.15..0.85);
    let edges: Vec<_> = pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    SmallGraph::from_edges(n, &edges).unwrap()
}

fn code_under(g: &SmallGraph, perm: &[usize]) -> u64 {
    let n = g.order();
    let mut code = 0u64;
    for (t, (a, b)) in pairs(n).into_iter().enumerate() {
        if g.has_edge(perm[a], perm[b]) {
            code |= 1 << t;
        }
    }
    code
}

/// Isomorphism-invariant key: the smallest edge code over all n! labelings.
pub fn brute_key(g: &SmallGraph) -> (usize, u64) {
    let n = g.order();
    let best = (0..n)
        .permutations(n)
        .map(|p| code_under(g, &p))
        .min()
        .unwrap_or(0);
    (n, best)
}

/// Number of automorphisms, by trying every permutation.
pub fn automorphism_count(g: &SmallGraph) -> u64 {
    let n = g.order();
    (0..n)
        .permutations(n)
        .filter(|p| g.edges().iter().all(|&(u, v)| g.has_edge(p[u], p[v])))
        .count() as u64
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Longest simple paths by exhaustive depth-first search: the maximum
/// vertex count and every vertex set achieving it.
pub fn dfs_longest(g: &SmallGraph) -> (usize, BTreeSet<u16>) {
    fn go(g: &SmallGraph, v: usize, seen: u16, best: &mut (usize, BTreeSet<u16>)) {
        let k = seen.count_ones() as usize;
        if k > best.0 {
            *best = (k, BTreeSet::new());
        }
        if k == best.0 {
            best.1.insert(seen);
        }
        for u in 0..g.order() {
            if seen >> u & 1 == 0 && g.has_edge(v, u) {
                go(g, u, seen | 1 << u, best);
            }
        }
    }
    let mut best = (0, BTreeSet::new());
    for v in 0..g.order() {
        go(g, v, 1 << v, &mut best);
    }
    best
}

/// Components of `g[within]` by union-find over the edge list.
pub fn union_find_components(g: &SmallGraph, within: VertexSet) -> usize {
    let mut parent: Vec<usize> = (0..g.order()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (u, v) in g.edges() {
        if within.contains(u) && within.contains(v) {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
    }
    within.iter().filter(|&v| find(&mut parent, v) == v).count()
}

pub fn labeled_connected(g: &SmallGraph) -> bool {
    g.order() > 0 && union_find_components(g, g.vertices()) == 1
}
