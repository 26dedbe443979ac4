mod analyze;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use longpath_core::lemmas::{forbidden_pairs_catalog, lollipop_catalog, min_distance_catalog};
use longpath_core::verify::published_count;
use longpath_core::{
    check_builtin_witness, check_witness, decode_graph6, encode_graph6, verify_n, Error,
    GenerationShard, Generator, LemmaReport, SmallGraph, Source, SweepReport, VerifyOptions,
};

/// Exhaustive checks of whether two longest paths of a small connected
/// graph always meet in a separator.
#[derive(Parser, Debug)]
#[command(name = "longpath", version)]
struct Cli {
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// More logging (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sweep every connected graph of the given orders.
    Verify(VerifyArgs),
    /// Check the 11-vertex counterexample, or a graph from an edge list.
    Witness {
        #[arg(long)]
        edges: Option<PathBuf>,
    },
    /// Print the longest-path profile of graphs.
    Analyze(AnalyzeArgs),
    /// Write connected graphs of order n as graph6.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// 0-based shard index and shard count, as `i/of`.
        #[arg(long, value_parser = parse_shard)]
        shard: Option<(usize, usize)>,
        #[arg(long)]
        out_g6: Option<PathBuf>,
    },
    /// Count connected graphs of order n.
    Count {
        #[arg(long)]
        n: usize,
    },
    /// Replay the configuration lemmas. With no selection, runs all of them.
    Lemmas {
        /// Consecutive q-neighbors give a Hamiltonian path.
        #[arg(long)]
        remark: bool,
        #[arg(long)]
        lollipop: bool,
        #[arg(long)]
        forbidden_pairs: bool,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Order to sweep; with --n-max, the first order of the range.
    #[arg(long, required_unless_present = "n_max")]
    n: Option<usize>,
    /// Last order of the range (starts at 1 without --n).
    #[arg(long)]
    n_max: Option<usize>,
    /// Worker threads [default: available parallelism].
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    /// Checkpoint file, resumed from if present.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Directory for default checkpoint files.
    #[arg(long, env = "LONGPATH_CHECKPOINT_DIR", hide_env_values = true)]
    checkpoint_dir: Option<PathBuf>,
    /// Write the report JSON here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// `internal` or `g6:<file>`.
    #[arg(long, default_value = "internal", value_parser = parse_source)]
    source: Source,
    /// Number of generation shards.
    #[arg(long, default_value_t = longpath_core::verify::DEFAULT_SHARD_COUNT, value_parser = parse_positive)]
    shards: usize,
    /// Record every violating pair, not only the first per graph.
    #[arg(long)]
    all: bool,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct AnalyzeArgs {
    /// Edge-list file: "n m" then m lines "u v", 1-based.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// A single graph6 string.
    #[arg(long)]
    graph6: Option<String>,
    /// A graph6 stream file.
    #[arg(long)]
    in_g6: Option<PathBuf>,
}

fn parse_shard(s: &str) -> Result<(usize, usize), String> {
    let (i, of) = s.split_once('/').ok_or("expected i/of")?;
    let i: usize = i.trim().parse().map_err(|e| format!("shard index: {e}"))?;
    let of: usize = of.trim().parse().map_err(|e| format!("shard count: {e}"))?;
    if of == 0 || i >= of {
        return Err(format!("need 0 <= i < of, got {i}/{of}"));
    }
    Ok((i, of))
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_source(s: &str) -> Result<Source, String> {
    match s {
        "internal" => Ok(Source::Internal),
        _ => match s.strip_prefix("g6:") {
            Some(p) if !p.is_empty() => Ok(Source::Graph6File(p.into())),
            _ => Err("expected `internal` or `g6:<file>`".into()),
        },
    }
}

/// Result of a subcommand whose inputs were valid.
struct Outcome {
    ok: bool,
    json: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    match run(&cli) {
        Ok(out) => {
            if cli.json {
                emit(&(serde_json::to_string_pretty(&out.json).expect("serializable") + "\n"));
            } else {
                emit(&out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                if !cli.json {
                    eprintln!("{}", json!({ "ok": false, "details": out.json }));
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let msg = format!("{e:#}");
            if cli.json {
                emit(&format!("{}\n", json!({ "ok": false, "error": msg })));
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn emit(s: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Verify(args) => verify(args),
        Command::Witness { edges } => witness(edges.as_deref()),
        Command::Analyze(args) => analyze(args),
        Command::Enumerate { n, shard, out_g6 } => enumerate(*n, *shard, out_g6.as_deref()),
        Command::Count { n } => count(*n),
        Command::Lemmas {
            remark,
            lollipop,
            forbidden_pairs,
        } => lemmas(*remark, *lollipop, *forbidden_pairs),
    }
}

fn verify(args: &VerifyArgs) -> anyhow::Result<Outcome> {
    let (lo, hi) = match (args.n, args.n_max) {
        (Some(n), None) => (n, n),
        (n, Some(m)) => (n.unwrap_or(1), m),
        (None, None) => unreachable!("clap requires one of them"),
    };
    if lo == 0 || lo > hi {
        bail!("empty order range {lo}..={hi}");
    }
    if args.source != Source::Internal && lo != hi {
        bail!("an external source covers a single order; use --n");
    }
    let jobs = match args.jobs {
        Some(j) => j as usize,
        None => std::thread::available_parallelism().map_or(1, |p| p.get()),
    };

    let mut reports = Vec::new();
    let mut text = String::new();
    for n in lo..=hi {
        let checkpoint = match (&args.checkpoint, &args.checkpoint_dir) {
            _ if args.source != Source::Internal => None,
            (Some(p), _) if lo == hi => Some(p.clone()),
            (Some(p), _) => Some(suffixed(p, n)),
            (None, Some(dir)) => Some(dir.join(format!("verify-n{n}.json"))),
            (None, None) => None,
        };
        let opts = VerifyOptions {
            n,
            shard_count: args.shards,
            jobs,
            checkpoint,
            source: args.source.clone(),
            all_violations: args.all,
            max_new_shards: None,
        };
        let r = verify_n(&opts).with_context(|| format!("verify n={n}"))?;
        text += &summary_line(&r);
        reports.push(r);
    }

    let report_json = if reports.len() == 1 {
        serde_json::to_value(&reports[0])?
    } else {
        serde_json::to_value(&reports)?
    };
    if let Some(path) = &args.report {
        fs::write(path, serde_json::to_string_pretty(&report_json)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let ok = reports.iter().all(SweepReport::certifies);
    Ok(Outcome {
        ok,
        json: json!({ "ok": ok, "reports": report_json }),
        text,
    })
}

fn suffixed(p: &Path, n: usize) -> PathBuf {
    let mut s = p.as_os_str().to_owned();
    s.push(format!(".n{n}"));
    s.into()
}

fn summary_line(r: &SweepReport) -> String {
    let expected = r
        .graphs_expected
        .map(|e| format!(" (expected {e})"))
        .unwrap_or_default();
    let mut line = format!(
        "n={}: {} graphs{expected}, {} with distinct longest-path sets, {} violations, {:.1}s\n",
        r.n,
        r.graphs_total,
        r.graphs_with_distinct_pairs,
        r.violations.len(),
        r.wall_time
    );
    if !r.complete {
        line += &format!(
            "  incomplete: {}/{} shards\n",
            r.shards_done.len(),
            r.shard_count
        );
    }
    for v in &r.violations {
        line += &format!(
            "  violation: {}\n",
            serde_json::to_string(v).unwrap_or_default()
        );
    }
    line
}

fn witness(edges: Option<&Path>) -> anyhow::Result<Outcome> {
    let result = match edges {
        None => check_builtin_witness(),
        Some(path) => {
            let g = read_edge_list(path)?;
            check_witness(&g, None)
        }
    };
    match result {
        Ok(rec) => {
            let text = format!(
                "witness holds: ell={}, complement {} has {} component(s)\n{}\n",
                rec.ell,
                rec.complement(),
                rec.complement_components,
                serde_json::to_string(&rec)?
            );
            Ok(Outcome {
                ok: true,
                json: json!({ "ok": true, "violation": rec }),
                text,
            })
        }
        Err(e @ (Error::WitnessFailure(_) | Error::Precondition(_))) => Ok(Outcome {
            ok: false,
            json: json!({ "ok": false, "error": e.to_string() }),
            text: format!("witness check failed: {e}\n"),
        }),
        Err(e) => Err(e.into()),
    }
}

fn read_edge_list(path: &Path) -> anyhow::Result<SmallGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    SmallGraph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn analyze(args: &AnalyzeArgs) -> anyhow::Result<Outcome> {
    let graphs = if let Some(path) = &args.edges {
        vec![read_edge_list(path)?]
    } else if let Some(s) = &args.graph6 {
        vec![decode_graph6(s.as_bytes()).with_context(|| format!("decoding {s:?}"))?]
    } else if let Some(path) = &args.in_g6 {
        let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
        longpath_core::graph6::Graph6Reader::new(io::BufReader::new(file))
            .filter_map(|item| match item {
                Ok(longpath_core::graph6::StreamItem::Graph { graph, .. }) => Some(Ok(graph)),
                Ok(longpath_core::graph6::StreamItem::Skipped { line }) => {
                    log::warn!("line {line}: skipping non-graph6 record");
                    None
                }
                Err(e) => Some(Err(e)),
            })
            .collect::<Result<Vec<_>, _>>()
            .with_context(|| format!("reading {}", path.display()))?
    } else {
        unreachable!("clap requires one input")
    };

    let reports = graphs
        .iter()
        .map(analyze::analyze)
        .collect::<Result<Vec<_>, _>>()?;
    let mut text = String::new();
    for r in &reports {
        text += &serde_json::to_string_pretty(r)?;
        text.push('\n');
    }
    let json = if reports.len() == 1 {
        serde_json::to_value(&reports[0])?
    } else {
        serde_json::to_value(&reports)?
    };
    Ok(Outcome {
        ok: true,
        json,
        text,
    })
}

fn enumerate(
    n: usize,
    shard: Option<(usize, usize)>,
    out: Option<&Path>,
) -> anyhow::Result<Outcome> {
    let (i, of) = shard.unwrap_or((0, 1));
    let shard = GenerationShard::new(n, i, of)?;
    let mut sink: Box<dyn Write> = match out {
        Some(p) => Box::new(BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut io_err = None;
    let count = Generator::new().visit_connected(shard, |g| {
        if io_err.is_none() {
            if let Err(e) = writeln!(sink, "{}", encode_graph6(g)) {
                io_err = Some(e);
            }
        }
    });
    match io_err {
        Some(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
        Some(e) => return Err(e.into()),
        None => sink.flush()?,
    }
    drop(sink);
    log::info!("n={n} shard {i}/{of}: {count} graphs");
    // Graphs go to stdout when there is no --out-g6, so keep the summary off it.
    let text = match out {
        Some(p) => format!("{count} graphs written to {}\n", p.display()),
        None => String::new(),
    };
    Ok(Outcome {
        ok: true,
        json: json!({ "n": n, "shard": i, "shard_count": of, "count": count }),
        text,
    })
}

fn count(n: usize) -> anyhow::Result<Outcome> {
    let c = longpath_core::count_connected(n)?;
    let expected = published_count(n);
    let ok = expected.is_none_or(|e| e == c);
    Ok(Outcome {
        ok,
        json: json!({ "n": n, "count": c, "expected": expected, "ok": ok }),
        text: format!("{c}\n"),
    })
}

fn lemmas(remark: bool, lollipop: bool, forbidden: bool) -> anyhow::Result<Outcome> {
    let all = !(remark || lollipop || forbidden);
    let mut report = LemmaReport::default();
    if all || remark {
        min_distance_catalog(&mut report)?;
    }
    if all || lollipop {
        lollipop_catalog(&mut report)?;
    }
    if all || forbidden {
        forbidden_pairs_catalog(&mut report)?;
    }
    let mut text = String::new();
    for c in &report.checks {
        let tuple = match (c.i, c.j, c.k) {
            (Some(i), Some(j), Some(k)) => format!("i={i} j={j} k={k}"),
            _ => String::new(),
        };
        text += &format!(
            "{} {:<14} n={:<2} {:<16} {}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.lemma,
            c.n,
            tuple,
            c.detail
        );
    }
    text += &format!("{} passed, {} failed\n", report.passed, report.failed);
    Ok(Outcome {
        ok: report.all_passed(),
        json: serde_json::to_value(&report)?,
        text,
    })
}
