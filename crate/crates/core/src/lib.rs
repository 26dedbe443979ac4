//! Exhaustive checks of when the common vertices of two longest paths
//! separate a small graph.

pub mod canon;
pub mod error;
pub mod gen;
pub mod graph;
pub mod graph6;
pub mod lemmas;
pub mod longest_path;
pub mod separator;
pub mod verify;
pub mod witness;

pub use canon::{canonical_form, CanonicalForm, Canonizer};
pub use error::{Error, Result};
pub use gen::{count_connected, enumerate_connected, external_source, GenerationShard, Generator};
pub use graph::{SmallGraph, VertexId, VertexSet, MAX_ORDER};
pub use graph6::{decode_graph6, encode_graph6};
pub use lemmas::{
    build_config, forbidden_pair_catalog, replay_forbidden_pair, replay_lollipop,
    replay_min_distance, CaseConfig, LemmaCheck, LemmaReport,
};
pub use longest_path::{
    hamiltonian_path_exists, longest_path_profile, path_distance, quick_traceable,
    reconstruct_path, LongestPathEngine, LongestPathProfile, PathSeq,
};
pub use separator::{
    find_all_violations, find_violating_pair, is_separator, min_ell_statistics, EllStatistics,
    ViolationRecord,
};
pub use verify::{verify_n, verify_n_with, Checkpoint, Source, SweepReport, VerifyOptions};
pub use witness::{
    check_builtin_witness, check_witness, reduce_to_tight_case, witness_graph, TightReduction,
};
