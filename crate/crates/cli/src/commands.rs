use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rand::Rng;
use serde::Serialize;
use trilink::diffusion::{make_seed, rank_stability, SeedKind, Trpr};
use trilink::experiments::{
    derive_rng, run_pairwise_experiment, run_standard_linkpred, write_linkpred, write_pairwise,
    CandidateRule, LinkPredConfig, LinkPredMethod, Method, PairwiseConfig, PairwiseInput,
    ProtocolSpec,
};
use trilink::synth::{generate_gpa, GpaParams};
use trilink::{build_graph, enumerate_triangles, load_edge_list, DiffusionParams, EdgeList, Graph};

use crate::args::{required, DiagnoseArgs, GenGpaArgs, LinkpredArgs, PairwiseArgs, TrianglesArgs};
use crate::UsageError;

/// `println!` that tolerates a closed stdout (e.g. piped into `head`).
macro_rules! say {
    ($($t:tt)*) => {{
        let _ = writeln!(io::stdout(), $($t)*);
    }};
}

fn read_edges(path: &Path, has_timestamps: bool) -> Result<EdgeList> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let edges = load_edge_list(BufReader::new(file), has_timestamps)?;
    if edges.self_loops_dropped > 0 {
        log::info!("dropped {} self-loops", edges.self_loops_dropped);
    }
    Ok(edges)
}

fn read_graph(path: &Path) -> Result<Graph> {
    Ok(build_graph(&read_edges(path, false)?)?)
}

fn params(alpha: Option<f64>, iterations: Option<usize>, tolerance: Option<f64>) -> DiffusionParams {
    let d = DiffusionParams::default();
    DiffusionParams {
        alpha: alpha.unwrap_or(d.alpha),
        iterations: iterations.unwrap_or(d.iterations),
        tolerance,
    }
}

fn parse_list<T>(names: Option<Vec<String>>, defaults: Vec<T>) -> Result<Vec<T>>
where
    T: std::str::FromStr<Err = trilink::Error>,
{
    match names {
        None => Ok(defaults),
        Some(names) => names
            .iter()
            .map(|s| s.trim().parse::<T>().map_err(|e| UsageError(e.to_string()).into()))
            .collect(),
    }
}

fn usage<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> Result<T> {
    r.map_err(|e| UsageError(e.to_string()).into())
}

fn print_paths(paths: &[PathBuf]) {
    for p in paths {
        say!("wrote {}", p.display());
    }
}

pub fn pairwise(a: PairwiseArgs) -> Result<()> {
    let input = required(a.input, "input")?;
    let protocol = match a.protocol.as_deref().unwrap_or("holdout") {
        "holdout" => ProtocolSpec::Holdout { test_fraction: a.fraction.unwrap_or(0.3) },
        "temporal" => ProtocolSpec::Temporal { train_fraction: a.fraction.unwrap_or(0.8) },
        "loeto" => ProtocolSpec::Loeto,
        other => return Err(UsageError(format!("unknown protocol `{other}`")).into()),
    };
    let truth_mode = usage(a.truth_mode.as_deref().unwrap_or("and").parse())?;
    let candidate_rule = match a.candidate_rule.as_deref() {
        None => None,
        Some("adjacent-to-either") => Some(CandidateRule::AdjacentToEither),
        Some("adjacent-to-both") => Some(CandidateRule::AdjacentToBoth),
        Some(other) => return Err(UsageError(format!("unknown candidate rule `{other}`")).into()),
    };
    let cfg = PairwiseConfig {
        protocol,
        methods: parse_list(a.methods, Method::defaults())?,
        ks: a.k.unwrap_or_else(|| vec![5, 25]),
        truth_mode,
        candidate_rule,
        trials: a.trials.unwrap_or(500),
        rng_seed: a.seed.unwrap_or(0),
        params: params(a.alpha, a.iterations, a.tolerance),
        allow_empty_truth: a.allow_empty_truth,
    };
    let timed = matches!(protocol, ProtocolSpec::Temporal { .. });
    let edges = read_edges(&input, timed)?;
    say!(
        "pairwise: {} edges, protocol {}, {} trials, {} methods",
        edges.len(),
        protocol.name(),
        cfg.trials,
        cfg.methods.len()
    );
    let out = run_pairwise_experiment(&PairwiseInput::Edges(edges), &cfg)?;
    for row in &out.summary {
        say!("  {:<10} k={:<3} sp={:.4}", row.method, row.k, row.mean_sp);
    }
    if out.metadata.discards > 0 {
        say!("  {} seed draws discarded", out.metadata.discards);
    }
    let dir = a.out.unwrap_or_else(|| PathBuf::from("."));
    print_paths(&write_pairwise(&out, &dir)?);
    Ok(())
}

pub fn linkpred(a: LinkpredArgs) -> Result<()> {
    let g = read_graph(&required(a.input, "input")?)?;
    let cfg = LinkPredConfig {
        test_fraction: a.fraction.unwrap_or(0.2),
        num_nodes: a.num_nodes.unwrap_or(100),
        methods: parse_list(a.methods, LinkPredMethod::defaults())?,
        rng_seed: a.seed.unwrap_or(0),
        params: params(a.alpha, a.iterations, a.tolerance),
    };
    let out = run_standard_linkpred(&g, &cfg)?;
    say!(
        "linkpred: cohort {} nodes, {} evaluated, {} skipped",
        out.cohort.len(),
        out.metadata.evaluated_nodes,
        out.skipped.len()
    );
    for s in &out.summary {
        say!(
            "  {:<10} auc={:.4} delta={:+.4} dist={:.4}",
            s.method, s.mean_auc, s.mean_delta_vs_baseline, s.mean_dist_to_diag
        );
    }
    let dir = a.out.unwrap_or_else(|| PathBuf::from("."));
    print_paths(&write_linkpred(&out, &dir)?);
    Ok(())
}

#[derive(Serialize)]
struct DiagnoseMeta {
    tool: &'static str,
    version: &'static str,
    seed_u: String,
    seed_v: String,
    rng_seed: Option<u64>,
    alpha: f64,
    weighted: bool,
    max_iters: usize,
    top: usize,
    nodes: usize,
    edges: usize,
    triangles: usize,
}

/// Writes one CSV row; `NaN` marks correlations that are undefined.
fn stability_row(w: &mut impl Write, iter: &str, delta: f64, prev: &[f64], next: &[f64], top: usize) -> Result<()> {
    let (sf, kf) = rank_stability(prev, next, None).unwrap_or((f64::NAN, f64::NAN));
    let (st, kt) = rank_stability(prev, next, Some(top)).unwrap_or((f64::NAN, f64::NAN));
    writeln!(w, "{iter},{delta:e},{sf},{kf},{st},{kt}")?;
    Ok(())
}

pub fn diagnose(a: DiagnoseArgs) -> Result<()> {
    let g = read_graph(&required(a.input, "input")?)?;
    let (u, v, rng_seed) = match (a.seed_u, a.seed_v) {
        (Some(su), Some(sv)) => {
            let (u, v) = (g.node(&su)?, g.node(&sv)?);
            if u == v {
                return Err(UsageError("seed endpoints must differ".into()).into());
            }
            (u, v, None)
        }
        _ => {
            let seed = a.seed.unwrap_or(0);
            let edges: Vec<(usize, usize)> = g.edges().collect();
            if edges.is_empty() {
                return Err(trilink::Error::Empty("edge list").into());
            }
            let (u, v) = edges[derive_rng(seed, 0).gen_range(0..edges.len())];
            (u, v, Some(seed))
        }
    };
    let max_iters = a.max_iters.unwrap_or(200);
    let top = a.top.unwrap_or(100);
    let alpha = a.alpha.unwrap_or(DiffusionParams::default().alpha);
    if max_iters == 0 || top == 0 {
        return Err(UsageError("--max-iters and --top must be at least 1".into()).into());
    }
    let ts = enumerate_triangles(&g);
    let seed = make_seed(SeedKind::Pair(u, v), &g)?;
    let mut it = Trpr::new(&g, &ts, &seed, alpha, a.weighted)?;

    let dir = a.out.unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)?;
    let csv_path = dir.join("diagnose.csv");
    let mut w = BufWriter::new(File::create(&csv_path)?);
    writeln!(w, "iter,l1_delta,spearman_full,kendall_full,spearman_top{top},kendall_top{top}")?;
    let mut prev = it.state().to_vec();
    let mut tenth = None;
    for i in 1..=max_iters {
        let delta = it.step();
        stability_row(&mut w, &i.to_string(), delta, &prev, it.state(), top)?;
        prev.copy_from_slice(it.state());
        if i == 10 {
            tenth = Some(prev.clone());
        }
    }
    if let Some(x10) = tenth.filter(|_| max_iters > 10) {
        let gap: f64 = x10.iter().zip(&prev).map(|(a, b)| (a - b).abs()).sum();
        stability_row(&mut w, &format!("10-vs-{max_iters}"), gap, &x10, &prev, top)?;
    }
    w.flush()?;

    let meta = DiagnoseMeta {
        tool: "trilink",
        version: env!("CARGO_PKG_VERSION"),
        seed_u: g.label(u).to_owned(),
        seed_v: g.label(v).to_owned(),
        rng_seed,
        alpha,
        weighted: a.weighted,
        max_iters,
        top,
        nodes: g.n(),
        edges: g.m(),
        triangles: ts.count(),
    };
    let meta_path = dir.join("diagnose_meta.json");
    let mut mw = BufWriter::new(File::create(&meta_path)?);
    serde_json::to_writer_pretty(&mut mw, &meta)?;
    writeln!(mw)?;
    mw.flush()?;
    say!(
        "diagnose: seed edge ({}, {}), {} triangles, {} iterations",
        meta.seed_u, meta.seed_v, meta.triangles, max_iters
    );
    print_paths(&[csv_path, meta_path]);
    Ok(())
}

pub fn triangles(a: TrianglesArgs) -> Result<()> {
    let g = read_graph(&a.input)?;
    let ts = enumerate_triangles(&g);
    say!("nodes {}\nedges {}\ntriangles {}", g.n(), g.m(), ts.count());
    if let Some(path) = a.out {
        let mut w = BufWriter::new(File::create(&path)?);
        for t in ts.triples() {
            writeln!(w, "{}\t{}\t{}", g.label(t[0]), g.label(t[1]), g.label(t[2]))?;
        }
        w.flush()?;
        say!("wrote {}", path.display());
    }
    Ok(())
}

pub fn gen_gpa(a: GenGpaArgs) -> Result<()> {
    let g = generate_gpa(&GpaParams {
        p_edge: a.p_edge,
        steps: a.steps,
        seed_clique: a.clique,
        rng_seed: a.seed,
    })?;
    match a.out {
        Some(path) => {
            g.write_edge_list(BufWriter::new(File::create(&path)?))?;
            eprintln!("gen-gpa: {} nodes, {} edges -> {}", g.n(), g.m(), path.display());
        }
        None => g.write_edge_list(BufWriter::new(io::stdout().lock()))?,
    }
    Ok(())
}
