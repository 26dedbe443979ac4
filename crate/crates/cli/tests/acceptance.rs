//! Acceptance gates. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use longpath_core::{
    check_builtin_witness, decode_graph6, encode_graph6, enumerate_connected, Error,
    GenerationShard, LongestPathEngine, SmallGraph,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<String, String>;

fn longpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_longpath"))
        .args(args)
        .output()
        .expect("run longpath")
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn json_stdout(out: &Output) -> Result<Value, String> {
    serde_json::from_slice(&out.stdout).map_err(|e| {
        format!(
            "bad JSON ({e}); stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn witness() -> Check {
    let start = Instant::now();
    let rec = check_builtin_witness().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(rec.ell == 9, format!("ell = {}", rec.ell))?;
    ensure(
        rec.set_p.len() == 10 && rec.set_q.len() == 10,
        "longest paths are not 10 vertices",
    )?;
    ensure(
        rec.complement().len() == 2 && rec.complement_components == 1,
        format!("remainder {}", rec.complement()),
    )?;
    ensure(
        elapsed < Duration::from_secs(1),
        format!("took {elapsed:?}"),
    )?;

    let out = longpath(&["witness", "--json"]);
    ensure(
        out.status.code() == Some(0),
        format!("exit {:?}", out.status.code()),
    )?;
    let v = json_stdout(&out)?;
    ensure(v["violation"]["ell"] == 9, "CLI did not report ell = 9")?;
    Ok(format!(
        "ell=9, remainder {} connected, {elapsed:.1?}",
        rec.complement()
    ))
}

const COUNTS: [u64; 10] = [1, 1, 2, 6, 21, 112, 853, 11117, 261080, 11716571];

/// Runs `verify --n-max 9` once; criteria 2 and 4 both read it.
fn sweep_up_to_nine(dir: &Path) -> Result<Vec<Value>, String> {
    let report = dir.join("n9.json");
    let out = longpath(&[
        "verify",
        "--n-max",
        "9",
        "--report",
        report.to_str().unwrap(),
    ]);
    ensure(
        out.status.code() == Some(0),
        format!("exit {:?}", out.status.code()),
    )?;
    match read_json(&report)? {
        Value::Array(rs) => Ok(rs),
        other => Err(format!("expected a list of reports, got {other}")),
    }
}

fn theorem_up_to_nine(reports: &[Value]) -> Check {
    ensure(reports.len() == 9, format!("{} reports", reports.len()))?;
    let mut total = 0;
    for (r, &want) in reports.iter().zip(&COUNTS) {
        let n = r["n"].as_u64().unwrap_or(0);
        let got = r["graphs_total"].as_u64().unwrap_or(0);
        ensure(got == want, format!("n={n}: {got} graphs, expected {want}"))?;
        ensure(r["complete"] == true, format!("n={n} incomplete"))?;
        ensure(
            r["violations"].as_array().is_some_and(|v| v.is_empty()),
            format!("n={n} has violations"),
        )?;
        total += got;
    }
    Ok(format!("{total} graphs for n<=9, 0 violations"))
}

fn theorem_at_ten(dir: &Path) -> Check {
    let start = Instant::now();
    let report = dir.join("n10.json");
    let checkpoint = dir.join("n10.ckpt");
    let out = longpath(&[
        "verify",
        "--n",
        "10",
        "--report",
        report.to_str().unwrap(),
        "--checkpoint",
        checkpoint.to_str().unwrap(),
    ]);
    ensure(
        out.status.code() == Some(0),
        format!("exit {:?}", out.status.code()),
    )?;
    let r = read_json(&report)?;
    let got = r["graphs_total"].as_u64().unwrap_or(0);
    ensure(got == COUNTS[9], format!("{got} graphs"))?;
    ensure(
        r["violations"].as_array().is_some_and(|v| v.is_empty()),
        "violations found",
    )?;
    Ok(format!(
        "{got} graphs, 0 violations, {:.0?}",
        start.elapsed()
    ))
}

fn prior_results(reports: &[Value]) -> Check {
    for r in reports {
        let n = r["n"].as_u64().unwrap_or(0);
        let hist = r["ell_violation_histogram"]
            .as_object()
            .ok_or("missing histogram")?;
        for (ell, c) in hist {
            let ell: u64 = ell.parse().map_err(|_| "bad key")?;
            let c = c.as_u64().unwrap_or(0);
            ensure(
                !(ell <= 5 && c > 0),
                format!("n={n}: {c} violating pairs with ell={ell}"),
            )?;
            ensure(!(n <= 7 && c > 0), format!("n={n}: {c} violating pairs"))?;
        }
    }
    let pairs: u64 = reports
        .iter()
        .flat_map(|r| r["ell_histogram"].as_object().into_iter().flatten())
        .filter(|(ell, _)| ell.parse::<u64>().is_ok_and(|e| e <= 5))
        .map(|(_, c)| c.as_u64().unwrap_or(0))
        .sum();
    Ok(format!(
        "{pairs} pairs with ell<=5 all separate; every pair separates for n<=7"
    ))
}

fn lemma_catalog() -> Check {
    let start = Instant::now();
    let out = longpath(&["lemmas", "--json"]);
    let elapsed = start.elapsed();
    let v = json_stdout(&out)?;
    ensure(
        out.status.code() == Some(0),
        format!("exit {:?}", out.status.code()),
    )?;
    let (passed, failed) = (
        v["passed"].as_u64().unwrap_or(0),
        v["failed"].as_u64().unwrap_or(1),
    );
    ensure(
        failed == 0 && passed > 0,
        format!("{passed} passed, {failed} failed"),
    )?;
    let kinds: BTreeSet<&str> = v["checks"]
        .as_array()
        .into_iter()
        .flatten()
        .filter_map(|c| c["lemma"].as_str())
        .collect();
    ensure(kinds.len() == 3, format!("lemmas covered: {kinds:?}"))?;
    ensure(
        elapsed < Duration::from_secs(10),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!("{passed}/{passed} replays pass, {elapsed:.1?}"))
}

fn dfs_longest(g: &SmallGraph) -> (usize, BTreeSet<u16>) {
    fn go(g: &SmallGraph, v: usize, seen: u16, best: &mut (usize, BTreeSet<u16>)) {
        let k = seen.count_ones() as usize;
        if k > best.0 {
            *best = (k, BTreeSet::new());
        }
        if k == best.0 {
            best.1.insert(seen);
        }
        for u in g.neighbors(v).iter() {
            if seen >> u & 1 == 0 {
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

fn engine_oracle() -> Check {
    let mut engine = LongestPathEngine::new();
    let mut compare = |g: &SmallGraph| -> Result<(), String> {
        let p = engine.profile(g);
        let dp: BTreeSet<u16> = p.sets().iter().map(|s| s.bits()).collect();
        ensure(
            (p.order(), dp) == dfs_longest(g),
            format!("mismatch on {}", encode_graph6(g)),
        )
    };
    let mut classes = 0;
    for n in 1..=6 {
        for g in enumerate_connected(GenerationShard::new(n, 0, 1).unwrap()) {
            compare(&g)?;
            classes += 1;
        }
    }
    ensure(classes == 143, format!("{classes} classes"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=8);
        let p: f64 = rng.gen_range(0.1..0.9);
        let mut g = SmallGraph::empty(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        compare(&g)?;
    }
    Ok(format!("{classes} classes and 1000 random graphs match"))
}

fn graph6_round_trip() -> Check {
    let mut classes = 0;
    for n in 1..=6 {
        for g in enumerate_connected(GenerationShard::new(n, 0, 1).unwrap()) {
            let s = encode_graph6(&g);
            let back = decode_graph6(s.as_bytes()).map_err(|e| e.to_string())?;
            ensure(back == g, format!("decode(encode) differs for {s}"))?;
            ensure(
                encode_graph6(&back) == s,
                format!("encode(decode({s})) differs"),
            )?;
            classes += 1;
        }
    }
    let malformed: [(&[u8], usize); 7] = [
        (b"", 0),
        (b"~??~", 0),
        (b"R", 0),
        (b"B", 1),
        (b"Bww", 2),
        (b"A~", 1),
        (b"C~ ", 2),
    ];
    for (input, want) in malformed {
        match decode_graph6(input) {
            Err(Error::Graph6 { offset, .. }) if offset == want => {}
            other => return Err(format!("{:?}: {other:?}", String::from_utf8_lossy(input))),
        }
    }
    let out = longpath(&["analyze", "--graph6", "A~"]);
    let stderr = String::from_utf8_lossy(&out.stderr);
    ensure(
        out.status.code() == Some(2) && stderr.contains("byte 1"),
        format!("CLI on malformed input: {:?} {stderr}", out.status.code()),
    )?;
    Ok(format!(
        "{classes} classes round-trip, {} malformed inputs rejected",
        malformed.len()
    ))
}

fn without_wall_time(path: &Path) -> Result<String, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    Ok(text
        .lines()
        .filter(|l| !l.trim_start().starts_with("\"wall_time\""))
        .collect::<Vec<_>>()
        .join("\n"))
}

fn determinism(dir: &Path) -> Check {
    let mut texts = Vec::new();
    for jobs in ["1", "8"] {
        let report = dir.join(format!("n8-j{jobs}.json"));
        let out = longpath(&[
            "verify",
            "--n",
            "8",
            "--jobs",
            jobs,
            "--report",
            report.to_str().unwrap(),
        ]);
        ensure(
            out.status.code() == Some(0),
            format!("jobs={jobs}: exit {:?}", out.status.code()),
        )?;
        texts.push(without_wall_time(&report)?);
    }
    ensure(texts[0] == texts[1], "reports differ")?;
    Ok(format!("{} bytes identical", texts[0].len()))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let sweep = sweep_up_to_nine(dir.path());
    let results: Vec<(&str, Check)> = vec![
        ("1 witness", witness()),
        (
            "2 theorem n<=9",
            sweep
                .as_deref()
                .map_err(Clone::clone)
                .and_then(theorem_up_to_nine),
        ),
        ("3 theorem n=10", theorem_at_ten(dir.path())),
        (
            "4 prior results",
            sweep
                .as_deref()
                .map_err(Clone::clone)
                .and_then(prior_results),
        ),
        ("5 lemma catalog", lemma_catalog()),
        ("6 engine oracle", engine_oracle()),
        ("7 graph6 round trip", graph6_round_trip()),
        ("8 determinism", determinism(dir.path())),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(msg) => println!("PASS  {name:<20} {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name:<20} {msg}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
