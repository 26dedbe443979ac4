mod common;

use std::collections::BTreeSet;

use common::{all_labeled, dfs_longest, random_graph};
use longpath_core::{enumerate_connected, GenerationShard, LongestPathEngine, SmallGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn assert_matches_dfs(engine: &mut LongestPathEngine, g: &SmallGraph) {
    let (order, sets) = dfs_longest(g);
    let profile = engine.profile(g);
    let dp: BTreeSet<u16> = profile.sets().iter().map(|s| s.bits()).collect();
    assert_eq!(profile.order(), order, "{}", g.to_edge_list());
    assert_eq!(dp, sets, "{}", g.to_edge_list());
    assert_eq!(profile.sets().len(), dp.len(), "duplicate sets in profile");
    for &s in profile.sets() {
        let path = engine.reconstruct_path(g, s).unwrap();
        path.validate(g).unwrap();
        assert_eq!(path.vertex_set(), s);
    }
}

#[test]
fn dp_matches_dfs_on_connected_classes_up_to_six() {
    let mut engine = LongestPathEngine::new();
    let mut seen = 0;
    for n in 1..=6 {
        for g in enumerate_connected(GenerationShard::whole(n).unwrap()) {
            assert_matches_dfs(&mut engine, &g);
            seen += 1;
        }
    }
    assert_eq!(seen, 1 + 1 + 2 + 6 + 21 + 112);
}

#[test]
fn dp_matches_dfs_on_all_labeled_graphs_up_to_five() {
    let mut engine = LongestPathEngine::new();
    for n in 1..=5 {
        for g in all_labeled(n) {
            assert_matches_dfs(&mut engine, &g);
        }
    }
}

#[test]
fn dp_matches_dfs_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut engine = LongestPathEngine::new();
    for _ in 0..1000 {
        let n = rng.gen_range(1..=8);
        let g = random_graph(&mut rng, n);
        assert_matches_dfs(&mut engine, &g);
    }
}

#[test]
fn hamiltonian_agrees_with_dfs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut engine = LongestPathEngine::new();
    for _ in 0..300 {
        let n = rng.gen_range(1..=9);
        let g = random_graph(&mut rng, n);
        assert_eq!(engine.hamiltonian_path_exists(&g), dfs_longest(&g).0 == n);
    }
}
