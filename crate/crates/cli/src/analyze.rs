use std::collections::BTreeMap;

use serde::Serialize;

use longpath_core::{
    encode_graph6, find_violating_pair, min_ell_statistics, LongestPathEngine, Result, SmallGraph,
    ViolationRecord,
};

/// Everything `analyze` prints about one graph. Labels are 1-based.
#[derive(Debug, Serialize, PartialEq)]
pub struct GraphReport {
    pub n: usize,
    pub edges: usize,
    pub graph6: String,
    pub connected: bool,
    /// Longest path length in edges.
    pub longest_length: usize,
    /// Longest path order in vertices.
    pub longest_order: usize,
    pub sets: Vec<Vec<usize>>,
    /// One longest path per entry of `sets`.
    pub paths: Vec<Vec<usize>>,
    pub ell_histogram: BTreeMap<usize, u64>,
    pub ell_violation_histogram: BTreeMap<usize, u64>,
    pub violation: Option<ViolationRecord>,
}

pub fn analyze(g: &SmallGraph) -> Result<GraphReport> {
    let mut engine = LongestPathEngine::new();
    let profile = engine.profile(g);
    let paths = profile
        .sets()
        .iter()
        .map(|&s| engine.reconstruct_path(g, s).map(|p| p.to_labels()))
        .collect::<Result<_>>()?;
    let stats = min_ell_statistics(g, &profile);
    Ok(GraphReport {
        n: g.order(),
        edges: g.edge_count(),
        graph6: encode_graph6(g),
        connected: g.is_connected(),
        longest_length: profile.length(),
        longest_order: profile.order(),
        sets: profile.sets().iter().map(|s| s.to_labels()).collect(),
        paths,
        ell_histogram: stats.pairs,
        ell_violation_histogram: stats.violations,
        violation: find_violating_pair(g, &profile),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use longpath_core::{decode_graph6, witness_graph};

    #[test]
    fn path_on_three_vertices() {
        let g = SmallGraph::parse_edge_list("3 2\n1 2\n2 3\n").unwrap();
        let r = analyze(&g).unwrap();
        assert_eq!(r.longest_length, 2);
        assert_eq!(r.longest_order, 3);
        assert_eq!(r.sets, vec![vec![1, 2, 3]]);
        assert!(r.violation.is_none());
    }

    #[test]
    fn graph6_and_edge_list_agree() {
        let g = witness_graph();
        let from_edges = SmallGraph::parse_edge_list(&g.to_edge_list()).unwrap();
        let from_g6 = decode_graph6(encode_graph6(&g).as_bytes()).unwrap();
        assert_eq!(
            serde_json::to_string(&analyze(&from_edges).unwrap()).unwrap(),
            serde_json::to_string(&analyze(&from_g6).unwrap()).unwrap()
        );
    }

    #[test]
    fn witness_reports_violation() {
        let r = analyze(&witness_graph()).unwrap();
        assert_eq!(r.longest_length, 9);
        assert_eq!(r.sets.len(), 7);
        assert_eq!(r.violation.unwrap().ell, 9);
        assert_eq!(r.ell_violation_histogram.get(&9), Some(&2));
    }
}
