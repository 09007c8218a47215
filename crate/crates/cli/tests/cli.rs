use std::path::Path;
use std::process::{Command, Output};

fn trilink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trilink")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = trilink(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// A 600-step GPA graph written through the CLI itself.
fn gpa_file(dir: &Path) -> String {
    let f = dir.join("g.tsv");
    ok(&["gen-gpa", "--steps", "600", "--seed", "3", "--out", path(&f)]);
    path(&f).to_owned()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn pairwise_summary_has_a_row_per_method_and_k() {
    let dir = tempfile::tempdir().unwrap();
    let g = gpa_file(dir.path());
    let out = dir.path().join("out");
    ok(&[
        "pairwise", "--input", &g, "--protocol", "holdout", "--fraction", "0.3", "--methods",
        "pairseed,trpr,trprw,aa,js,pa", "--k", "5,25", "--trials", "40", "--seed", "7", "--out", path(&out),
    ]);
    let summary = read(&out, "pairwise_summary.csv");
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(lines[0], "method,k,trials,discards,mean_sp");
    assert_eq!(lines.len(), 1 + 12);
    let trials = read(&out, "pairwise_trials.csv");
    assert!(trials.starts_with("method,seed_u,seed_v,truth_count,best_rank,sp,k\n"));
    let meta: serde_json::Value = serde_json::from_str(&read(&out, "pairwise_meta.json")).unwrap();
    assert_eq!(meta["rng_seed"], 7);
    assert_eq!(meta["protocol"]["kind"], "holdout");
}

#[test]
fn outputs_do_not_depend_on_runs_or_threads() {
    let dir = tempfile::tempdir().unwrap();
    let g = gpa_file(dir.path());
    let run = |name: &str, threads: &str, cmd: &str| {
        let out = dir.path().join(name);
        let mut args = vec!["--threads", threads, cmd, "--input", &g, "--seed", "11", "--out", path(&out)];
        if cmd == "pairwise" {
            args.extend(["--trials", "25"]);
        } else {
            args.extend(["--num-nodes", "15"]);
        }
        ok(&args);
        let prefix = if cmd == "pairwise" { "pairwise" } else { "linkpred" };
        let mut files: Vec<_> = std::fs::read_dir(&out)
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.file_name().unwrap().to_str().unwrap().starts_with(prefix))
            .collect();
        files.sort();
        files.iter().map(|f| std::fs::read(f).unwrap()).collect::<Vec<_>>()
    };
    for cmd in ["pairwise", "linkpred"] {
        let a = run(&format!("{cmd}-a"), "1", cmd);
        assert_eq!(a.len(), 3);
        assert_eq!(a, run(&format!("{cmd}-b"), "1", cmd));
        assert_eq!(a, run(&format!("{cmd}-c"), "3", cmd));
    }
}

#[test]
fn loeto_and_temporal_protocols_run() {
    let dir = tempfile::tempdir().unwrap();
    let g = gpa_file(dir.path());
    let out = dir.path().join("loeto");
    ok(&["pairwise", "--input", &g, "--protocol", "loeto", "--k", "5", "--trials", "10", "--out", path(&out)]);
    assert_eq!(read(&out, "pairwise_summary.csv").lines().count(), 1 + 13);

    // stamp edges in a scrambled order so the temporal prefix is not degenerate
    let text = std::fs::read_to_string(&g).unwrap();
    let timed: String = text
        .lines()
        .enumerate()
        .map(|(i, l)| format!("{l}\t{}\n", (i * 7919) % 1009))
        .collect();
    let tf = dir.path().join("timed.tsv");
    std::fs::write(&tf, timed).unwrap();
    let out = dir.path().join("temporal");
    ok(&[
        "pairwise", "--input", path(&tf), "--protocol", "temporal", "--fraction", "0.8", "--truth-mode", "or",
        "--methods", "pairseed,oracle", "--trials", "10", "--out", path(&out),
    ]);
    let meta: serde_json::Value = serde_json::from_str(&read(&out, "pairwise_meta.json")).unwrap();
    assert_eq!(meta["truth_mode"], "or");
    assert_eq!(meta["candidate_rule"], "adjacent-to-both");
    assert!(read(&out, "pairwise_summary.csv").contains("oracle,25,10,0,1.0"));
}

#[test]
fn linkpred_small_graph_shrinks_cohort() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("tiny.tsv");
    std::fs::write(&f, "a b\nb c\nc a\nc d\nd e\ne c\na e\n").unwrap();
    let out_dir = dir.path().join("lp");
    let out = trilink(&["linkpred", "--input", path(&f), "--num-nodes", "10", "--out", path(&out_dir)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cohort shrinks"));
    let meta: serde_json::Value = serde_json::from_str(&read(&out_dir, "linkpred_meta.json")).unwrap();
    assert!(meta["cohort_size"].as_u64().unwrap() <= 10);
    let summary = read(&out_dir, "linkpred_summary.csv");
    assert!(summary.starts_with("method,mean_auc,mean_delta_vs_baseline,mean_dist_to_diag\n"));
    assert!(read(&out_dir, "linkpred_nodes.csv").starts_with("node,degree,method,auc\n"));
}

#[test]
fn diagnose_trace_and_footer() {
    let dir = tempfile::tempdir().unwrap();
    let g = gpa_file(dir.path());
    let out = dir.path().join("d");
    ok(&["diagnose", "--input", &g, "--seed", "2", "--out", path(&out)]);
    let csv = read(&out, "diagnose.csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "iter,l1_delta,spearman_full,kendall_full,spearman_top100,kendall_top100");
    assert_eq!(lines.len(), 1 + 200 + 1);
    assert!(lines[201].starts_with("10-vs-200,"));
    assert!(lines[1..201].iter().enumerate().all(|(i, l)| l.starts_with(&format!("{},", i + 1))));
}

#[test]
fn diagnose_without_triangles_is_pagerank() {
    use trilink::diffusion::{make_seed, pagerank_steps, SeedKind};
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("tree.tsv");
    std::fs::write(&f, "0 1\n1 2\n1 3\n3 4\n4 5\n").unwrap();
    let out = dir.path().join("d");
    ok(&["diagnose", "--input", path(&f), "--seed-u", "0", "--seed-v", "1", "--max-iters", "20", "--out", path(&out)]);
    let g = trilink::build_graph(&trilink::load_edge_list(std::fs::read(&f).unwrap().as_slice(), false).unwrap()).unwrap();
    let seed = make_seed(SeedKind::Pair(0, 1), &g).unwrap();
    let trace: Vec<Vec<f64>> = (0..=20).map(|i| pagerank_steps(&g, &seed, 0.85, i).unwrap().into_inner()).collect();
    let csv = read(&out, "diagnose.csv");
    for (i, line) in csv.lines().skip(1).take(20).enumerate() {
        let delta: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        let want: f64 = trace[i].iter().zip(&trace[i + 1]).map(|(x, y)| (x - y).abs()).sum();
        assert!((delta - want).abs() <= 1e-12, "iter {}: {delta} vs {want}", i + 1);
    }
}

#[test]
fn config_file_fills_unset_flags() {
    let dir = tempfile::tempdir().unwrap();
    let g = gpa_file(dir.path());
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"methods": ["js", "aa"], "k": [3], "trials": 5, "seed": 1}"#).unwrap();
    let out = dir.path().join("o");
    ok(&["pairwise", "--config", path(&cfg), "--input", &g, "--trials", "8", "--out", path(&out)]);
    let summary = read(&out, "pairwise_summary.csv");
    assert_eq!(summary.lines().count(), 3);
    assert!(summary.lines().skip(1).all(|l| l.contains(",3,8,")));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = gpa_file(dir.path());
    let code = |args: &[&str]| trilink(args).status.code().unwrap();
    assert_eq!(code(&["pairwise", "--no-such-flag"]), 1);
    assert_eq!(code(&["pairwise"]), 1);
    assert_eq!(code(&["pairwise", "--input", &g, "--methods", "bogus"]), 1);
    assert_eq!(code(&["pairwise", "--input", &g, "--alpha", "1.5", "--trials", "2"]), 1);
    assert_eq!(code(&["pairwise", "--input", "/no/such/file"]), 2);
    let bad = dir.path().join("bad.tsv");
    std::fs::write(&bad, "a b\nlonely\n").unwrap();
    assert_eq!(code(&["triangles", "--input", path(&bad)]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn gen_gpa_and_triangles() {
    let stdout = ok(&["gen-gpa", "--steps", "0"]);
    assert_eq!(stdout.lines().count(), 10);
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("k5.tsv");
    std::fs::write(&f, &stdout).unwrap();
    let tri = dir.path().join("tri.tsv");
    let report = ok(&["triangles", "--input", path(&f), "--out", path(&tri)]);
    assert!(report.contains("triangles 10"));
    assert_eq!(std::fs::read_to_string(&tri).unwrap().lines().count(), 10);
}
