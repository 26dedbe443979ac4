use std::fs;

use longpath_core::verify::published_count;
use longpath_core::{
    encode_graph6, enumerate_connected, verify_n, witness_graph, Checkpoint, Error,
    GenerationShard, Source, SweepReport, VerifyOptions,
};

fn strip_run_fields(mut r: SweepReport) -> SweepReport {
    r.wall_time = 0.0;
    r.shard_count = 0;
    r.shards_done.clear();
    r
}

#[test]
fn small_orders_certify() {
    for n in 1..=7 {
        let r = verify_n(&VerifyOptions::new(n)).unwrap();
        assert!(r.certifies(), "n={n}: {r:?}");
        assert_eq!(Some(r.graphs_total), published_count(n));
        assert!(r.graphs_with_distinct_pairs <= r.graphs_total);
        assert!(r.ell_violation_histogram.is_empty());
    }
}

#[test]
fn report_does_not_depend_on_shards_or_jobs() {
    let base = strip_run_fields(verify_n(&VerifyOptions::new(8)).unwrap());
    for (shards, jobs) in [(1, 1), (5, 3), (64, 4), (200, 2)] {
        let opts = VerifyOptions {
            shard_count: shards,
            jobs,
            ..VerifyOptions::new(8)
        };
        assert_eq!(
            strip_run_fields(verify_n(&opts).unwrap()),
            base,
            "shards={shards} jobs={jobs}"
        );
    }
}

#[test]
fn interrupted_sweep_resumes_to_the_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("n8.json");
    let full = verify_n(&VerifyOptions::new(8)).unwrap();

    let partial_opts = VerifyOptions {
        checkpoint: Some(cp.clone()),
        max_new_shards: Some(10),
        jobs: 2,
        ..VerifyOptions::new(8)
    };
    let partial = verify_n(&partial_opts).unwrap();
    assert!(!partial.complete);
    assert_eq!(partial.shards_done.len(), 10);
    assert!(!partial.certifies());
    let stored = Checkpoint::load(&cp).unwrap().unwrap();
    assert_eq!(stored.completed.len(), 10);
    assert_eq!(stored.partial_counts.graphs_total, partial.graphs_total);

    // A second partial step, then the rest.
    verify_n(&partial_opts).unwrap();
    let resumed = verify_n(&VerifyOptions {
        checkpoint: Some(cp.clone()),
        jobs: 3,
        ..VerifyOptions::new(8)
    })
    .unwrap();
    assert!(resumed.complete);
    assert_eq!(
        resumed.to_json_without_timing().unwrap(),
        full.to_json_without_timing().unwrap()
    );
}

#[test]
fn checkpoint_mismatch_and_corruption_are_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("cp.json");
    verify_n(&VerifyOptions {
        checkpoint: Some(cp.clone()),
        max_new_shards: Some(1),
        ..VerifyOptions::new(6)
    })
    .unwrap();

    let other_n = VerifyOptions {
        checkpoint: Some(cp.clone()),
        ..VerifyOptions::new(7)
    };
    assert!(matches!(verify_n(&other_n), Err(Error::ShardMismatch(_))));
    let other_shards = VerifyOptions {
        checkpoint: Some(cp.clone()),
        shard_count: 8,
        ..VerifyOptions::new(6)
    };
    assert!(matches!(
        verify_n(&other_shards),
        Err(Error::ShardMismatch(_))
    ));

    fs::write(&cp, "{ not json").unwrap();
    assert!(verify_n(&VerifyOptions {
        checkpoint: Some(cp.clone()),
        ..VerifyOptions::new(6)
    })
    .is_err());
}

#[test]
fn external_source_matches_internal() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("n7.g6");
    let text: String = enumerate_connected(GenerationShard::whole(7).unwrap())
        .iter()
        .map(|g| encode_graph6(g) + "\n")
        .collect();
    fs::write(&path, text).unwrap();

    let internal = verify_n(&VerifyOptions::new(7)).unwrap();
    let external = verify_n(&VerifyOptions {
        source: Source::Graph6File(path.clone()),
        jobs: 2,
        ..VerifyOptions::new(7)
    })
    .unwrap();
    assert_eq!(external.graphs_total, internal.graphs_total);
    assert_eq!(
        external.graphs_with_distinct_pairs,
        internal.graphs_with_distinct_pairs
    );
    assert_eq!(external.ell_histogram, internal.ell_histogram);
    assert!(external.certifies());
    assert!(external.source.starts_with("g6:"));

    let with_cp = VerifyOptions {
        source: Source::Graph6File(path),
        checkpoint: Some(dir.path().join("cp.json")),
        ..VerifyOptions::new(7)
    };
    assert!(matches!(verify_n(&with_cp), Err(Error::Checkpoint(_))));
}

#[test]
fn external_source_finds_the_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.g6");
    fs::write(&path, encode_graph6(&witness_graph()) + "\n").unwrap();
    let opts = VerifyOptions {
        source: Source::Graph6File(path),
        all_violations: true,
        ..VerifyOptions::new(11)
    };
    let r = verify_n(&opts).unwrap();
    assert!(!r.holds());
    assert_eq!(r.violations.len(), 2);
    assert_eq!(r.ell_violation_histogram.get(&9), Some(&2));
    assert!(!r.separates_up_to(9));
    assert!(r.separates_up_to(8));
    for v in &r.violations {
        v.revalidate().unwrap();
    }
}

#[test]
fn external_source_rejects_wrong_orders() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mixed.g6");
    fs::write(&path, "Bw\nC~\n").unwrap();
    let opts = VerifyOptions {
        source: Source::Graph6File(path),
        ..VerifyOptions::new(3)
    };
    assert!(matches!(
        verify_n(&opts),
        Err(Error::OrderMismatch { line: 2, .. })
    ));
}

#[test]
fn small_intersections_separate_up_to_eight() {
    for n in 1..=8 {
        let r = verify_n(&VerifyOptions::new(n)).unwrap();
        assert!(r.separates_up_to(5), "n={n}");
        assert!(r.separates_up_to(n), "n={n}");
    }
}
