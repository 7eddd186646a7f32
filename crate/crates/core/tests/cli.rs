use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn weakties(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weakties"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = weakties(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(dir: &Path, args: &[&str]) -> i32 {
    weakties(dir, args).status.code().unwrap()
}

fn manifest(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

/// synth -> build -> detect -> ties -> stats -> sample, all under `root`.
fn pipeline(root: &Path, seed: &str) {
    ok(
        root,
        &[
            "synth",
            "--seed",
            seed,
            "--output-dir",
            "syn",
            "planted",
            "--n",
            "120",
            "--blocks",
            "4",
            "--p-in",
            "0.3",
            "--p-out",
            "0.01",
        ],
    );
    ok(
        root,
        &[
            "build",
            "syn/graph.txt",
            "--visited",
            "all.ids",
            "--output-dir",
            "core",
        ],
    );
    ok(
        root,
        &[
            "detect",
            "--seed",
            seed,
            "--graph",
            "core/core.txt",
            "--truth",
            "syn/truth.txt",
            "--output-dir",
            "det",
        ],
    );
    ok(
        root,
        &[
            "ties",
            "--graph",
            "core/core.txt",
            "--partition",
            "det/partition.txt",
            "--output-dir",
            "ties",
        ],
    );
    ok(
        root,
        &[
            "stats",
            "--graph",
            "core/core.txt",
            "--partition",
            "det/partition.txt",
            "--labeling",
            "ties/labeling.txt",
            "--output-dir",
            "stats",
        ],
    );
    ok(
        root,
        &[
            "sample",
            "--seed",
            seed,
            "--threads",
            "2",
            "--graph",
            "core/core.txt",
            "--output-dir",
            "walk",
            "mhrw",
            "--steps",
            "200",
            "--walkers",
            "4",
        ],
    );
}

fn write_all_ids(root: &Path, n: usize) {
    let ids: String = (0..n).map(|i| format!("{i}\n")).collect();
    fs::write(root.join("all.ids"), ids).unwrap();
}

#[test]
fn pipeline_writes_every_output_and_manifest() {
    let tmp = TempDir::new().unwrap();
    let root = tmp.path();
    write_all_ids(root, 120);
    pipeline(root, "3");

    for (dir, files) in [
        ("syn", &["graph.txt", "truth.txt", "synth_report.json"][..]),
        ("core", &["core.txt", "build_report.json"]),
        (
            "det",
            &[
                "partition.txt",
                "level_0.txt",
                "dendrogram.csv",
                "detect_report.json",
            ],
        ),
        (
            "ties",
            &[
                "labeling.txt",
                "node_ties.csv",
                "degree_ties.csv",
                "ties_summary.json",
            ],
        ),
        (
            "stats",
            &[
                "ccdf.csv",
                "sizes.csv",
                "density.csv",
                "linkfraction.csv",
                "linkfraction_communities.csv",
                "fit.csv",
                "stats_summary.json",
            ],
        ),
        (
            "walk",
            &["trace.csv", "visited.txt", "crawl.txt", "bias.json"],
        ),
    ] {
        let m = manifest(&root.join(dir));
        let listed: Vec<&str> = m["outputs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|o| o["path"].as_str().unwrap())
            .collect();
        for f in files {
            assert!(root.join(dir).join(f).exists(), "{dir}/{f} missing");
            assert!(listed.contains(f), "{dir}/{f} not in manifest");
        }
        assert!(m["timings"].as_array().is_some());
    }

    let det = manifest(&root.join("det"));
    assert_eq!(det["command"], "detect");
    assert!(det["seeds"]["louvain"].as_u64().is_some());
    assert_eq!(det["inputs"].as_array().unwrap().len(), 2);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(root.join("det/detect_report.json")).unwrap())
            .unwrap();
    assert!(report["nmi_vs_truth"].as_f64().unwrap() >= 0.95);

    let trace = fs::read_to_string(root.join("walk/trace.csv")).unwrap();
    assert_eq!(trace.lines().next(), Some("step,proposed,accepted,current"));
    assert_eq!(trace.lines().count(), 1 + 4 * 201);

    let labeling = fs::read_to_string(root.join("ties/labeling.txt")).unwrap();
    let core = fs::read_to_string(root.join("core/core.txt")).unwrap();
    let edges = core.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(labeling.lines().count(), edges);
    assert!(labeling
        .lines()
        .all(|l| l.ends_with(" S") || l.ends_with(" W")));
}

#[test]
fn same_seed_gives_identical_outputs() {
    let tmp = TempDir::new().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for root in [&a, &b] {
        fs::create_dir_all(root).unwrap();
        write_all_ids(root, 120);
        pipeline(root, "11");
    }
    for dir in ["syn", "core", "det", "ties", "stats", "walk"] {
        for entry in fs::read_dir(a.join(dir)).unwrap() {
            let name = entry.unwrap().file_name();
            if name == "manifest.json" {
                continue;
            }
            let (x, y) = (
                fs::read(a.join(dir).join(&name)).unwrap(),
                fs::read(b.join(dir).join(&name)).unwrap(),
            );
            assert!(x == y, "{dir}/{name:?} differs");
        }
        let (ma, mb) = (manifest(&a.join(dir)), manifest(&b.join(dir)));
        assert_eq!(ma["outputs"], mb["outputs"]);
        assert_eq!(ma["seeds"], mb["seeds"]);
    }
}

#[test]
fn different_seeds_change_samples() {
    let tmp = TempDir::new().unwrap();
    let root = tmp.path();
    ok(
        root,
        &[
            "synth",
            "--seed",
            "1",
            "--output-dir",
            "g",
            "pa",
            "--n",
            "300",
            "--m",
            "2",
        ],
    );
    ok(
        root,
        &[
            "sample",
            "--seed",
            "1",
            "--graph",
            "g/graph.txt",
            "--output-dir",
            "s1",
            "rw",
            "--steps",
            "100",
        ],
    );
    ok(
        root,
        &[
            "sample",
            "--seed",
            "2",
            "--graph",
            "g/graph.txt",
            "--output-dir",
            "s2",
            "rw",
            "--steps",
            "100",
        ],
    );
    assert_ne!(
        fs::read(root.join("s1/trace.csv")).unwrap(),
        fs::read(root.join("s2/trace.csv")).unwrap()
    );
}

#[test]
fn build_merges_samples_and_keeps_visited_core() {
    let tmp = TempDir::new().unwrap();
    let root = tmp.path();
    // ego lists: 1 and 2 crawled in the first sample, 2 and 3 in the second
    fs::write(root.join("a.txt"), "# sample a\n1 2\n1 9\n2 1\n2 3\n").unwrap();
    fs::write(root.join("b.txt"), "2\t3\n3 2\n3 1\n3 8\n3 3\n").unwrap();
    let out = ok(root, &["build", "a.txt", "b.txt", "--output-dir", "o"]);
    assert!(out.contains("overlap 1"), "{out}");
    let core = fs::read_to_string(root.join("o/core.txt")).unwrap();
    let edges: Vec<&str> = core.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(edges, ["1 2", "1 3", "2 3"]);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(root.join("o/build_report.json")).unwrap())
            .unwrap();
    assert_eq!(report["core"]["frontier_edges_dropped"], 2);
    assert_eq!(report["core"]["self_loops_dropped"], 1);
    assert_eq!(report["merges"][0]["overlap"], 1);
}

#[test]
fn stats_series_and_skip_flag() {
    let tmp = TempDir::new().unwrap();
    let root = tmp.path();
    write_all_ids(root, 120);
    pipeline(root, "5");
    ok(
        root,
        &[
            "stats",
            "--graph",
            "core/core.txt",
            "--partition",
            "det/partition.txt",
            "--labeling",
            "ties/labeling.txt",
            "--series",
            "weak",
            "--log-bins",
            "5",
            "--skip-link-fraction",
            "--output-dir",
            "s2",
        ],
    );
    assert!(!root.join("s2/linkfraction.csv").exists());
    let ccdf = fs::read_to_string(root.join("s2/ccdf.csv")).unwrap();
    assert_eq!(ccdf.lines().next(), Some("x,prob"));
    assert!(ccdf.lines().count() <= 1 + 6);
    let density = fs::read_to_string(root.join("stats/density.csv")).unwrap();
    assert_eq!(density.lines().next(), Some("s1,s2,count"));
}

#[test]
fn exit_codes() {
    let tmp = TempDir::new().unwrap();
    let root = tmp.path();
    fs::write(root.join("g.txt"), "1 2\n2 3\n3 1\n3 4\n").unwrap();
    fs::write(root.join("bad.txt"), "1 2\n2 oops\n").unwrap();
    fs::write(root.join("part.txt"), "1 0\n2 0\n").unwrap();

    assert_eq!(code(root, &["--help"]), 0);
    assert_eq!(code(root, &[]), 1);
    assert_eq!(code(root, &["detect"]), 1);
    assert_eq!(
        code(root, &["detect", "--graph", "g.txt", "--threads", "0"]),
        1
    );
    assert_eq!(
        code(
            root,
            &["build", "g.txt", "--visited", "a", "--visited", "b"]
        ),
        1
    );
    assert_eq!(
        code(
            root,
            &["sample", "--graph", "g.txt", "mhrw", "--steps", "5", "--start", "77"]
        ),
        1
    );
    assert_eq!(code(root, &["detect", "--graph", "missing.txt"]), 2);
    assert_eq!(code(root, &["detect", "--graph", "bad.txt"]), 2);
    assert_eq!(
        code(
            root,
            &["ties", "--graph", "g.txt", "--partition", "part.txt"]
        ),
        2
    );
    assert_eq!(
        code(
            root,
            &["synth", "planted", "--n", "10", "--blocks", "2", "--p-in", "0.1", "--p-out", "0.5"]
        ),
        1
    );
    assert_eq!(
        code(root, &["detect", "--graph", "g.txt", "--min-gain", "-1"]),
        1
    );

    let out = weakties(root, &["detect", "--graph", "bad.txt"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}
