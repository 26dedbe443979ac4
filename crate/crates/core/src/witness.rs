//! The 11-vertex graph with two longest paths whose common vertices leave a
//! connected remainder, and the reduction of a violating pair to the case
//! where the paths cover the graph.

use crate::error::{Error, Result};
use crate::graph::{SmallGraph, VertexId, VertexSet};
use crate::longest_path::{LongestPathEngine, PathSeq};
use crate::separator::{find_all_violations, is_separator, ViolationRecord};

/// Edges of the witness graph, 0-based.
pub const WITNESS_EDGES: [(VertexId, VertexId); 14] = [
    (0, 1),
    (1, 2),
    (1, 4),
    (2, 3),
    (2, 7),
    (3, 5),
    (3, 8),
    (4, 6),
    (4, 8),
    (5, 6),
    (6, 7),
    (7, 9),
    (8, 9),
    (9, 10),
];

/// The two vertices left over by the distinguished pair of longest paths.
pub const WITNESS_COMPLEMENT: [VertexId; 2] = [2, 7];

pub fn witness_graph() -> SmallGraph {
    SmallGraph::from_edges(11, &WITNESS_EDGES).expect("witness edges are valid")
}

/// Checks that `g` has a violating pair and returns one.
///
/// With `expected_complement`, the returned pair is the one leaving exactly
/// that set; otherwise the first pair in lexicographic order.
pub fn check_witness(
    g: &SmallGraph,
    expected_complement: Option<VertexSet>,
) -> Result<ViolationRecord> {
    if !g.is_connected() {
        return Err(Error::Precondition(
            "witness graph must be connected".into(),
        ));
    }
    let profile = LongestPathEngine::new().profile(g);
    let all = find_all_violations(g, &profile);
    if all.is_empty() {
        return Err(Error::WitnessFailure(format!(
            "no two longest paths (order {}, {} vertex sets) have a non-separating intersection",
            profile.order(),
            profile.sets().len()
        )));
    }
    for v in &all {
        v.revalidate()?;
    }
    match expected_complement {
        None => Ok(all[0].clone()),
        Some(c) => all
            .into_iter()
            .find(|v| v.complement() == c)
            .ok_or_else(|| Error::WitnessFailure(format!("no violating pair leaves exactly {c}"))),
    }
}

/// Full check of the built-in witness: longest paths have 10 vertices, the
/// distinguished pair meets in 9 vertices, and the 2-vertex remainder is an edge.
/// Every violating pair of the graph must have the same shape.
pub fn check_builtin_witness() -> Result<ViolationRecord> {
    let g = witness_graph();
    let fail = |m: String| Err(Error::WitnessFailure(m));
    if g.order() != 11 || g.edge_count() != 14 {
        return fail(format!(
            "expected 11 vertices and 14 edges, found {} and {}",
            g.order(),
            g.edge_count()
        ));
    }
    let order = LongestPathEngine::new().longest_order(&g);
    if order != 10 {
        return fail(format!("longest paths have {order} vertices, expected 10"));
    }
    let complement: VertexSet = WITNESS_COMPLEMENT.iter().copied().collect();
    let rec = check_witness(&g, Some(complement))?;
    if rec.ell != 9 {
        return fail(format!("intersection has {} vertices, expected 9", rec.ell));
    }
    let [a, b] = WITNESS_COMPLEMENT;
    if !g.has_edge(a, b) || rec.complement_components != 1 {
        return fail(format!("remainder {complement} is not connected"));
    }
    let profile = LongestPathEngine::new().profile(&g);
    for v in find_all_violations(&g, &profile) {
        if v.ell != 9 || v.complement().len() != 2 {
            return fail(format!(
                "unexpected violation shape: ell={}, remainder {}",
                v.ell,
                v.complement()
            ));
        }
    }
    Ok(rec)
}

/// Result of deleting the vertices outside two longest paths and joining
/// their private vertices.
#[derive(Clone, Debug)]
pub struct TightReduction {
    pub graph: SmallGraph,
    /// New label → original vertex.
    pub label_map: Vec<VertexId>,
    pub p: PathSeq,
    pub q: PathSeq,
    /// Vertices deleted from the original graph.
    pub removed: VertexSet,
}

/// Deletes `V0 = V \ (V(P) ∪ V(Q))` and adds the edge `p0 q0` between the
/// private vertices of `P` and `Q`. Afterwards checks that `P` and `Q` are
/// still longest, still differ in vertex set, and that a connected
/// remainder stays connected.
pub fn reduce_to_tight_case(g: &SmallGraph, p: &PathSeq, q: &PathSeq) -> Result<TightReduction> {
    p.validate(g)?;
    q.validate(g)?;
    let mut engine = LongestPathEngine::new();
    let longest = engine.longest_order(g);
    if p.order() != longest || q.order() != longest {
        return Err(Error::Precondition(format!(
            "P and Q must be longest paths ({longest} vertices); found {} and {}",
            p.order(),
            q.order()
        )));
    }
    let (vp, vq) = (p.vertex_set(), q.vertex_set());
    let (only_p, only_q) = (vp - vq, vq - vp);
    if only_p.len() != 1 || only_q.len() != 1 {
        return Err(Error::Precondition(format!(
            "need |V(P)\\V(Q)| = |V(Q)\\V(P)| = 1, found {} and {}",
            only_p.len(),
            only_q.len()
        )));
    }
    let (p0, q0) = (only_p.min().unwrap(), only_q.min().unwrap());
    let keep = vp | vq;
    let common = vp & vq;
    let connected_before = !is_separator(g, common)?;

    let (mut g1, label_map) = g.induced_subgraph(keep)?;
    let new_label = |v: VertexId| label_map.iter().position(|&u| u == v).expect("kept vertex");
    g1.add_edge(new_label(p0), new_label(q0))?;
    let relabel =
        |path: &PathSeq| PathSeq::new(&g1, path.vertices().iter().map(|&v| new_label(v)).collect());
    let (p1, q1) = (relabel(p)?, relabel(q)?);

    let longest1 = engine.longest_order(&g1);
    if longest1 != longest {
        return Err(Error::ReductionFailure(format!(
            "longest paths in the reduced graph have {longest1} vertices, P and Q have {longest}"
        )));
    }
    if p1.vertex_set() == q1.vertex_set() {
        return Err(Error::ReductionFailure(
            "P and Q share a vertex set after reduction".into(),
        ));
    }
    let common1 = p1.vertex_set() & q1.vertex_set();
    if connected_before && is_separator(&g1, common1)? {
        return Err(Error::ReductionFailure(
            "the remainder became disconnected in the reduced graph".into(),
        ));
    }
    Ok(TightReduction {
        graph: g1,
        label_map,
        p: p1,
        q: q1,
        removed: g.vertices() - keep,
    })
}
