//! Canonical labeling by equitable partition refinement and backtracking.
//!
//! The search individualizes vertices of the first smallest non-singleton
//! cell, refines to an equitable partition, and keeps the leaf whose
//! relabeled adjacency rows are lexicographically largest. Automorphisms
//! found at equal leaves prune sibling branches that lie in the same orbit
//! of the pointwise stabilizer of the current prefix.

use std::fmt;

use crate::graph::{SmallGraph, VertexId, VertexSet, MAX_ORDER};

/// Isomorphism-invariant encoding of a graph: the adjacency rows of the
/// canonically relabeled graph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: u8,
    rows: [u16; MAX_ORDER],
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.n as usize
    }

    /// `[n, row_0 (big-endian u16), row_1, ...]`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(1 + 2 * self.order());
        out.push(self.n);
        for row in &self.rows[..self.order()] {
            out.extend_from_slice(&row.to_be_bytes());
        }
        out
    }

    /// The canonically labeled representative.
    pub fn to_graph(&self) -> SmallGraph {
        let adj: Vec<VertexSet> = self.rows[..self.order()]
            .iter()
            .map(|&r| VertexSet::from_bits(r))
            .collect();
        SmallGraph::from_adjacency(&adj).expect("canonical rows are a valid graph")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CanonicalForm(n={}, rows={:04x?})",
            self.n,
            &self.rows[..self.order()]
        )
    }
}

/// Result of a canonical labeling run.
#[derive(Clone, Copy, Debug)]
pub struct Labeling {
    pub form: CanonicalForm,
    /// `order[t]` is the vertex placed at canonical position `t`.
    pub order: [u8; MAX_ORDER],
}

impl Labeling {
    /// Canonical position of each vertex.
    pub fn positions(&self) -> [u8; MAX_ORDER] {
        let mut pos = [0u8; MAX_ORDER];
        for t in 0..self.form.order() {
            pos[self.order[t] as usize] = t as u8;
        }
        pos
    }
}

/// Ordered partition of the vertex set into cells.
#[derive(Clone, Copy)]
struct Partition {
    cells: [u16; MAX_ORDER],
    len: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut cells = [0; MAX_ORDER];
        cells[0] = VertexSet::full(n).bits();
        Partition { cells, len: 1 }
    }

    fn is_discrete(&self, n: usize) -> bool {
        self.len == n
    }

    /// Index of the first non-singleton cell of minimum size.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        for (i, &c) in self.cells[..self.len].iter().enumerate() {
            let size = c.count_ones();
            if size > 1 && best.is_none_or(|(s, _)| size < s) {
                best = Some((size, i));
            }
        }
        best.map(|(_, i)| i)
    }

    fn replace(&mut self, at: usize, parts: &[u16]) {
        let extra = parts.len() - 1;
        self.cells.copy_within(at + 1..self.len, at + 1 + extra);
        self.cells[at..at + parts.len()].copy_from_slice(parts);
        self.len += extra;
    }
}

/// FIFO of splitter masks.
struct Splitters {
    buf: [u16; 64],
    head: usize,
    tail: usize,
}

impl Splitters {
    fn new() -> Self {
        Splitters {
            buf: [0; 64],
            head: 0,
            tail: 0,
        }
    }

    fn push(&mut self, w: u16) {
        self.buf[self.tail % 64] = w;
        self.tail += 1;
    }

    fn pop(&mut self) -> Option<u16> {
        (self.head < self.tail).then(|| {
            let w = self.buf[self.head % 64];
            self.head += 1;
            w
        })
    }
}

fn refine(adj: &[u16], p: &mut Partition, queue: &mut Splitters) {
    let mut parts = [0u16; MAX_ORDER + 1];
    while let Some(w) = queue.pop() {
        let mut ci = 0;
        while ci < p.len {
            let cell = p.cells[ci];
            if cell & (cell - 1) == 0 {
                ci += 1;
                continue;
            }
            let mut by_count = [0u16; MAX_ORDER + 1];
            let mut rest = cell;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                by_count[(adj[v] & w).count_ones() as usize] |= 1 << v;
            }
            let mut k = 0;
            for &m in by_count.iter() {
                if m != 0 {
                    parts[k] = m;
                    k += 1;
                }
            }
            if k > 1 {
                p.replace(ci, &parts[..k]);
                for &m in &parts[..k] {
                    queue.push(m);
                }
                ci += k;
            } else {
                ci += 1;
            }
        }
    }
}

/// Reusable canonical labeling engine.
pub struct Canonizer {
    n: usize,
    adj: [u16; MAX_ORDER],
    best: Option<([u16; MAX_ORDER], [u8; MAX_ORDER])>,
    automorphisms: Vec<[u8; MAX_ORDER]>,
}

/// Automorphisms kept for pruning; more rarely pays for itself at n <= 16.
const MAX_STORED_AUTOMORPHISMS: usize = 64;

impl Default for Canonizer {
    fn default() -> Self {
        Self::new()
    }
}

impl Canonizer {
    pub fn new() -> Self {
        Canonizer {
            n: 0,
            adj: [0; MAX_ORDER],
            best: None,
            automorphisms: Vec::with_capacity(MAX_STORED_AUTOMORPHISMS),
        }
    }

    pub fn canonical_labeling(&mut self, g: &SmallGraph) -> Labeling {
        self.n = g.order();
        for (v, nb) in g.adjacency().iter().enumerate() {
            self.adj[v] = nb.bits();
        }
        self.best = None;
        self.automorphisms.clear();

        let mut root = Partition::unit(self.n);
        let mut queue = Splitters::new();
        queue.push(root.cells[0]);
        refine(&self.adj[..self.n], &mut root, &mut queue);
        let mut prefix = [0u8; MAX_ORDER];
        self.search(root, &mut prefix, 0);

        let (rows, order) = self.best.expect("search visits at least one leaf");
        Labeling {
            form: CanonicalForm {
                n: self.n as u8,
                rows,
            },
            order,
        }
    }

    pub fn canonical_form(&mut self, g: &SmallGraph) -> CanonicalForm {
        self.canonical_labeling(g).form
    }

    fn search(&mut self, p: Partition, prefix: &mut [u8; MAX_ORDER], depth: usize) {
        let Some(ti) = p.target_cell() else {
            debug_assert!(p.is_discrete(self.n));
            self.leaf(&p);
            return;
        };
        let cell = p.cells[ti];
        let mut tried = 0u16;
        let mut rest = cell;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if tried != 0 && self.equivalent_to_tried(v, tried, &prefix[..depth]) {
                continue;
            }
            tried |= 1 << v;

            let mut child = p;
            child.replace(ti, &[1 << v, cell & !(1 << v)]);
            let mut queue = Splitters::new();
            queue.push(1 << v);
            refine(&self.adj[..self.n], &mut child, &mut queue);
            prefix[depth] = v as u8;
            self.search(child, prefix, depth + 1);
        }
    }

    /// Whether `v` shares an orbit with a tried vertex under the group
    /// generated by stored automorphisms fixing `prefix` pointwise.
    fn equivalent_to_tried(&self, v: VertexId, tried: u16, prefix: &[u8]) -> bool {
        let mut parent: [u8; MAX_ORDER] = std::array::from_fn(|i| i as u8);
        fn find(parent: &mut [u8; MAX_ORDER], mut x: usize) -> usize {
            while parent[x] as usize != x {
                parent[x] = parent[parent[x] as usize];
                x = parent[x] as usize;
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if prefix.iter().any(|&u| gamma[u as usize] != u) {
                continue;
            }
            any = true;
            for (x, &y) in gamma.iter().enumerate().take(self.n) {
                let a = find(&mut parent, x);
                let b = find(&mut parent, y as usize);
                if a != b {
                    parent[a.max(b)] = a.min(b) as u8;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        let mut t = tried;
        while t != 0 {
            let u = t.trailing_zeros() as usize;
            t &= t - 1;
            if find(&mut parent, u) == root {
                return true;
            }
        }
        false
    }

    fn leaf(&mut self, p: &Partition) {
        let n = self.n;
        let mut order = [0u8; MAX_ORDER];
        let mut pos = [0u8; MAX_ORDER];
        for (t, slot) in order.iter_mut().enumerate().take(n) {
            let v = p.cells[t].trailing_zeros() as u8;
            *slot = v;
            pos[v as usize] = t as u8;
        }
        let mut rows = [0u16; MAX_ORDER];
        for t in 0..n {
            let mut nb = self.adj[order[t] as usize];
            let mut row = 0u16;
            while nb != 0 {
                let u = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                row |= 1 << pos[u];
            }
            rows[t] = row;
        }
        match &self.best {
            None => self.best = Some((rows, order)),
            Some((best_rows, best_order)) => match rows[..n].cmp(&best_rows[..n]) {
                std::cmp::Ordering::Greater => self.best = Some((rows, order)),
                std::cmp::Ordering::Less => {}
                std::cmp::Ordering::Equal => {
                    if self.automorphisms.len() < MAX_STORED_AUTOMORPHISMS {
                        let mut gamma = [0u8; MAX_ORDER];
                        for t in 0..n {
                            gamma[order[t] as usize] = best_order[t];
                        }
                        for (x, g) in gamma.iter_mut().enumerate().skip(n) {
                            *g = x as u8;
                        }
                        self.automorphisms.push(gamma);
                    }
                }
            },
        }
    }
}

/// Canonical form of `g` as a byte string; equal exactly for isomorphic graphs.
pub fn canonical_form(g: &SmallGraph) -> Vec<u8> {
    Canonizer::new().canonical_form(g).to_bytes()
}
