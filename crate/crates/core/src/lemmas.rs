//! Mechanical replay of the configuration lemmas used when the two longest
//! paths miss one vertex each.
//!
//! A configuration is the path `p_1 … p_{n-1}` plus a vertex `q` adjacent to
//! `p_i`, `p_j` and `p_k`, optionally with extra edges between path
//! vertices. Path vertex `p_t` is vertex `t - 1`; `q` is vertex `n - 1`.
//! With 1-based printing, `p_t` prints as `t` and `q` as `n`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SmallGraph, VertexId, VertexSet};
use crate::longest_path::{LongestPathEngine, PathSeq};

/// Orders covered by the replay catalog.
pub const CATALOG_ORDERS: [usize; 3] = [8, 9, 10];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseConfig {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// Extra edges as pairs of path indices `(a, b)` meaning `p_a p_b`.
    pub extra_edges: Vec<(usize, usize)>,
}

#[inline]
fn p(t: usize) -> VertexId {
    t - 1
}

#[inline]
fn q(n: usize) -> VertexId {
    n - 1
}

fn far(a: usize, b: usize) -> bool {
    a.abs_diff(b) > 1
}

impl CaseConfig {
    pub fn new(n: usize, i: usize, j: usize, k: usize) -> Self {
        CaseConfig {
            n,
            i,
            j,
            k,
            extra_edges: Vec::new(),
        }
    }

    pub fn with_edge(mut self, a: usize, b: usize) -> Self {
        self.extra_edges.push((a, b));
        self
    }

    /// `1 < i < n-1`, `1 < j < k < n-1`, and `i, j, k` pairwise at distance > 1.
    pub fn validate(&self) -> Result<()> {
        let CaseConfig { n, i, j, k, .. } = *self;
        let bad = |m: String| Err(Error::Precondition(m));
        if !(4..=crate::graph::MAX_ORDER).contains(&n) {
            return bad(format!("n = {n} is too small for a configuration"));
        }
        if !(1 < i && i < n - 1) {
            return bad(format!("need 1 < i < n-1, got i = {i}"));
        }
        if !(1 < j && j < k && k < n - 1) {
            return bad(format!("need 1 < j < k < n-1, got j = {j}, k = {k}"));
        }
        if !(far(i, j) && far(k, i) && far(j, k)) {
            return bad(format!(
                "need |i-j|, |k-i|, |j-k| > 1, got i={i} j={j} k={k}"
            ));
        }
        for &(a, b) in &self.extra_edges {
            if a == 0 || b == 0 || a >= n || b >= n || a == b {
                return bad(format!(
                    "extra edge (p_{a}, p_{b}) is not a pair of distinct path vertices"
                ));
            }
        }
        Ok(())
    }

    /// Path edges, the three `q` edges, and `extra_edges`.
    pub fn build(&self) -> Result<SmallGraph> {
        self.validate()?;
        let n = self.n;
        let mut g = SmallGraph::path(n - 1)?;
        g.add_vertex(VertexSet::EMPTY)?;
        for t in [self.i, self.j, self.k] {
            g.add_edge(q(n), p(t))?;
        }
        for &(a, b) in &self.extra_edges {
            if g.has_edge(p(a), p(b)) {
                return Err(Error::Precondition(format!(
                    "extra edge (p_{a}, p_{b}) is already present"
                )));
            }
            g.add_edge(p(a), p(b))?;
        }
        Ok(g)
    }

    /// Admissible `(i, j, k)` tuples for order `n`.
    pub fn admissible(n: usize) -> Vec<CaseConfig> {
        let mut out = Vec::new();
        for i in 2..n - 1 {
            for j in 2..n - 1 {
                for k in j + 1..n - 1 {
                    let c = CaseConfig::new(n, i, j, k);
                    if c.validate().is_ok() {
                        out.push(c);
                    }
                }
            }
        }
        out
    }
}

pub fn build_config(c: &CaseConfig) -> Result<SmallGraph> {
    c.build()
}

/// How a forbidden pair is discarded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Argument {
    /// An edge `p_{i-1} p_{i+1}` of `Q` can be replaced by `p_{i-1} p_i p_{i+1}`,
    /// lengthening `Q` since `p_i` is not on `Q`.
    Detour,
    /// The configuration graph with the edge has a Hamiltonian path.
    Hamiltonian,
}

/// One forbidden pair for a given tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForbiddenPair {
    /// Rule group, 1..=4.
    pub item: u8,
    pub rule: &'static str,
    /// The `x ∈ {j, k}` the rule was instantiated with, if any.
    pub x: Option<usize>,
    pub pair: (usize, usize),
    pub argument: Argument,
}

/// Every forbidden pair for `(n, i, j, k)`, with duplicates across rule
/// groups kept.
pub fn forbidden_pair_catalog(n: usize, i: usize, j: usize, k: usize) -> Vec<ForbiddenPair> {
    let mut out = Vec::new();
    let mut push = |item, rule, x, a: usize, b: usize, argument| {
        out.push(ForbiddenPair {
            item,
            rule,
            x,
            pair: (a.min(b), a.max(b)),
            argument,
        })
    };
    use Argument::*;
    push(1, "(p_{i-1},p_{i+1})", None, i - 1, i + 1, Detour);
    push(1, "(p_1,p_{n-1})", None, 1, n - 1, Hamiltonian);
    push(1, "(p_1,p_{i+1})", None, 1, i + 1, Hamiltonian);
    push(1, "(p_{i-1},p_{n-1})", None, i - 1, n - 1, Hamiltonian);
    for x in [j, k] {
        push(2, "(p_1,p_{x+1})", Some(x), 1, x + 1, Hamiltonian);
        push(2, "(p_{x-1},p_{n-1})", Some(x), x - 1, n - 1, Hamiltonian);
        push(2, "(p_{i-1},p_{x-1})", Some(x), i - 1, x - 1, Hamiltonian);
        push(2, "(p_{i+1},p_{x+1})", Some(x), i + 1, x + 1, Hamiltonian);
    }
    for x in [j, k] {
        if x > i {
            push(3, "(p_1,p_{x-1}), x>i", Some(x), 1, x - 1, Hamiltonian);
        }
        if x < i {
            push(
                3,
                "(p_{x+1},p_{n-1}), x<i",
                Some(x),
                x + 1,
                n - 1,
                Hamiltonian,
            );
        }
    }
    if j < i {
        push(4, "(p_1,p_{i-1}), j<i", None, 1, i - 1, Hamiltonian);
    }
    if k > i {
        push(4, "(p_{i+1},p_{n-1}), k>i", None, i + 1, n - 1, Hamiltonian);
    }
    out
}

fn replay_entry(
    c: &CaseConfig,
    g: &SmallGraph,
    entry: &ForbiddenPair,
    engine: &mut LongestPathEngine,
) -> bool {
    match entry.argument {
        Argument::Hamiltonian => engine.hamiltonian_path_exists(g),
        Argument::Detour => {
            let i = c.i;
            entry.pair == (i - 1, i + 1) && PathSeq::new(g, vec![p(i - 1), p(i), p(i + 1)]).is_ok()
        }
    }
}

/// Replays the claim that the single extra edge of `c` is forbidden.
///
/// Every catalog entry naming that pair must replay: Hamiltonian-path
/// entries need a Hamiltonian path in the configuration graph, the detour
/// entry needs `p_{i-1} p_i p_{i+1}` to be a path in it.
pub fn replay_forbidden_pair(c: &CaseConfig) -> Result<bool> {
    let &[(a, b)] = c.extra_edges.as_slice() else {
        return Err(Error::NotAClaim(format!(
            "expected exactly one extra edge, got {}",
            c.extra_edges.len()
        )));
    };
    c.validate()?;
    let pair = (a.min(b), a.max(b));
    let entries: Vec<_> = forbidden_pair_catalog(c.n, c.i, c.j, c.k)
        .into_iter()
        .filter(|e| e.pair == pair)
        .collect();
    if entries.is_empty() {
        return Err(Error::NotAClaim(format!(
            "(p_{}, p_{}) is not listed for (n={}, i={}, j={}, k={})",
            pair.0, pair.1, c.n, c.i, c.j, c.k
        )));
    }
    let g = c.build()?;
    let mut engine = LongestPathEngine::new();
    Ok(entries.iter().all(|e| replay_entry(c, &g, e, &mut engine)))
}

/// Two `q` neighbors at consecutive path positions `a`, `b` let `q` be
/// spliced into the path, giving a Hamiltonian path.
///
/// Checks the explicit spliced sequence and, independently, Hamiltonicity
/// of the configuration graph.
pub fn replay_min_distance(n: usize, a: usize, b: usize) -> Result<bool> {
    if a.abs_diff(b) != 1 {
        return Err(Error::NotAClaim(format!("|{a} - {b}| != 1")));
    }
    if !(n >= 4 && 1 < a.min(b) && a.max(b) < n - 1) {
        return Err(Error::Precondition(format!(
            "need 1 < a, b < n-1, got n={n} a={a} b={b}"
        )));
    }
    let mut g = SmallGraph::path(n - 1)?;
    g.add_vertex(VertexSet::EMPTY)?;
    g.add_edge(q(n), p(a))?;
    g.add_edge(q(n), p(b))?;
    let (lo, hi) = (a.min(b), a.max(b));
    let spliced: Vec<VertexId> = (1..=lo)
        .map(p)
        .chain(std::iter::once(q(n)))
        .chain((hi..n).map(p))
        .collect();
    let explicit = PathSeq::new(&g, spliced)
        .map(|s| s.order() == n)
        .unwrap_or(false);
    Ok(explicit && LongestPathEngine::new().hamiltonian_path_exists(&g))
}

/// The lollipop rewiring for `P' = {p_2}`: with `q` adjacent to `p_2`, `p_j`,
/// `p_k`, the sequence `p_{k-1} … p_3 p_2 q p_k … p_{n-1}` is a path on `n - 1`
/// vertices that still misses exactly `p_1`, whose private vertex `p_2` is
/// adjacent to the missed vertex, and which no longer has its private
/// vertex in second or second-to-last position.
pub fn replay_lollipop(n: usize, j: usize, k: usize) -> Result<bool> {
    if k <= 5 {
        return Err(Error::NotAClaim(format!(
            "the rewiring needs k > 5, got k = {k}"
        )));
    }
    let c = CaseConfig::new(n, 2, j, k);
    c.validate()?;
    let g = c.build()?;
    let rewired: Vec<VertexId> = (2..k)
        .rev()
        .map(p)
        .chain(std::iter::once(q(n)))
        .chain((k..n).map(p))
        .collect();
    let Ok(path) = PathSeq::new(&g, rewired) else {
        return Ok(false);
    };
    let on_q = g.vertices() - VertexSet::singleton(p(2));
    let private = path.vertex_set() - on_q;
    let missed = on_q - path.vertex_set();
    let pos = path.position(p(2));
    let second = path.vertices()[1];
    Ok(path.order() == n - 1
        && second != p(2)
        && second != p(n - 2)
        && private == VertexSet::singleton(p(2))
        && missed == VertexSet::singleton(p(1))
        && g.is_connected_within(private | missed)?
        && pos != Some(1)
        && pos != Some(n - 3))
}

/// One line of the replay report.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub lemma: &'static str,
    pub n: usize,
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub k: Option<usize>,
    pub detail: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LemmaReport {
    pub checks: Vec<LemmaCheck>,
    pub passed: usize,
    pub failed: usize,
}

impl LemmaReport {
    fn push(&mut self, check: LemmaCheck) {
        if check.passed {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.checks.push(check);
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }
}

/// Minimum-distance replays over all consecutive positions, once for each
/// of the three neighbor roles `(i, j)`, `(k, i)`, `(k, j)`.
pub fn min_distance_catalog(report: &mut LemmaReport) -> Result<()> {
    for n in CATALOG_ORDERS {
        for roles in ["|i-j|=1", "|k-i|=1", "|k-j|=1"] {
            for a in 2..n - 1 {
                for b in [a - 1, a + 1] {
                    if !(1 < b && b < n - 1) {
                        continue;
                    }
                    let passed = replay_min_distance(n, a, b)?;
                    report.push(LemmaCheck {
                        lemma: "min_distance",
                        n,
                        i: None,
                        j: None,
                        k: None,
                        detail: format!("{roles}: q adjacent to p_{a}, p_{b}"),
                        passed,
                    });
                }
            }
        }
    }
    Ok(())
}

pub fn lollipop_catalog(report: &mut LemmaReport) -> Result<()> {
    for n in CATALOG_ORDERS {
        for k in 6..n - 1 {
            for j in 4..k - 1 {
                let passed = replay_lollipop(n, j, k)?;
                report.push(LemmaCheck {
                    lemma: "lollipop",
                    n,
                    i: Some(2),
                    j: Some(j),
                    k: Some(k),
                    detail: "p_{k-1}..p_3 p_2 q p_k..p_{n-1}".into(),
                    passed,
                });
            }
        }
    }
    Ok(())
}

pub fn forbidden_pairs_catalog(report: &mut LemmaReport) -> Result<()> {
    let mut engine = LongestPathEngine::new();
    for n in CATALOG_ORDERS {
        for base in CaseConfig::admissible(n) {
            for entry in forbidden_pair_catalog(n, base.i, base.j, base.k) {
                let c = base.clone().with_edge(entry.pair.0, entry.pair.1);
                let g = c.build()?;
                let passed = replay_entry(&c, &g, &entry, &mut engine);
                let x = entry.x.map(|x| format!(", x={x}")).unwrap_or_default();
                let ham = if entry.argument == Argument::Detour {
                    format!(", hamiltonian={}", engine.hamiltonian_path_exists(&g))
                } else {
                    String::new()
                };
                report.push(LemmaCheck {
                    lemma: "forbidden_pair",
                    n,
                    i: Some(base.i),
                    j: Some(base.j),
                    k: Some(base.k),
                    detail: format!(
                        "group {} {}{x}: (p_{}, p_{}) by {:?}{ham}",
                        entry.item, entry.rule, entry.pair.0, entry.pair.1, entry.argument
                    ),
                    passed,
                });
            }
        }
    }
    Ok(())
}
