use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use congkit::WordGraph;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_congkit")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn count(args: &[&str]) -> u64 {
    let out = stdout(args);
    assert_eq!(out.lines().count(), 1, "{out:?}");
    out.trim().parse().unwrap()
}

fn cycle(period: u32) -> WordGraph {
    WordGraph::new(
        1,
        period as usize,
        (0..period).map(|i| (i, 0, (i + 1) % period)).collect(),
    )
    .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn enum_counts() {
    let count_enum = |p: &str, n: &str, extra: &[&str]| {
        let mut args = vec!["enum", "-p", p, "-n", n, "--count-only"];
        args.extend_from_slice(extra);
        count(&args)
    };
    assert_eq!(count_enum(&fixture("catalan4.p"), "14", &[]), 575);
    assert_eq!(
        count_enum(
            &fixture("catalan4.p"),
            "14",
            &["--threads", "2", "--deduction", "naive"]
        ),
        575
    );
    assert_eq!(count_enum(&fixture("free1.p"), "2", &[]), 3);
    assert_eq!(count_enum(&fixture("heineken.p"), "2", &[]), 4);
    assert_eq!(count_enum(&fixture("heineken.p"), "2", &["--exact"]), 3);
    assert_eq!(
        count_enum(&fixture("cyclic6.p"), "6", &["--side", "left", "--audit"]),
        4
    );
}

#[test]
fn enum_writes_standard_graphs() {
    let out = stdout(&["enum", "-p", &fixture("cyclic6.p"), "-n", "6"]);
    let graphs: Vec<WordGraph> = out.lines().map(|l| WordGraph::from_json(l).unwrap()).collect();
    let mut sizes: Vec<usize> = graphs.iter().map(|g| g.node_count()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 2, 3, 6]);
    assert!(graphs.iter().all(|g| g.is_standard().unwrap()));
}

#[test]
fn enum_with_containing_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let pairs = write(dir.path(), "pairs.txt", "aa = 1\n");
    let containing = pairs.to_str().unwrap();
    // the divisors of 6 that divide 2
    assert_eq!(
        count(&[
            "enum",
            "-p",
            &fixture("cyclic6.p"),
            "-n",
            "6",
            "--containing",
            containing,
            "--count-only"
        ]),
        2
    );
}

#[test]
fn lattice_counts() {
    assert_eq!(count(&["lattice", "--gens", &fixture("t3.gens"), "--count-only"]), 7);
    assert_eq!(count(&["lattice", "--gens", &fixture("i3.gens"), "--count-only"]), 7);
    assert_eq!(
        count(&["lattice", "--gens", &fixture("t3.gens"), "--count-only", "--no-reduce"]),
        7
    );
    assert_eq!(
        count(&[
            "lattice",
            "--table",
            &fixture("p2.table"),
            "--count-only",
            "--engine",
            "group"
        ]),
        13
    );
    assert_eq!(
        count(&[
            "lattice",
            "--family",
            "catalan:4",
            "--kind",
            "right",
            "--principal-only"
        ]),
        67
    );
    let dir = tempfile::tempdir().unwrap();
    let trivial = write(dir.path(), "trivial.table", "1\n0\n");
    assert_eq!(
        count(&["lattice", "--table", trivial.to_str().unwrap(), "--count-only"]),
        1
    );
}

#[test]
fn lattice_formats() {
    let json: serde_json::Value = serde_json::from_str(&stdout(&["lattice", "--gens", &fixture("t3.gens")])).unwrap();
    assert_eq!(json["elements"].as_array().unwrap().len(), 7);
    let dot = stdout(&["lattice", "--gens", &fixture("t3.gens"), "--format", "dot"]);
    assert!(dot.starts_with("digraph"));
}

#[test]
fn greens_output() {
    let json: serde_json::Value = serde_json::from_str(&stdout(&[
        "greens",
        "--table",
        &fixture("c2_table.table"),
        "--side",
        "twosided",
    ]))
    .unwrap();
    assert_eq!(json["elements"], 2);
    assert_eq!(json["r_classes"], 2);
    assert_eq!(
        json["representatives"].as_array().unwrap().len(),
        json["j_classes"].as_u64().unwrap() as usize
    );
    let scc = count(&["greens", "--gens", &fixture("t3.gens"), "--count-only"]);
    let group = count(&[
        "greens",
        "--gens",
        &fixture("t3.gens"),
        "--engine",
        "group",
        "--count-only",
    ]);
    assert_eq!(scc, group);
}

#[test]
fn join_meet_and_standardize() {
    let dir = tempfile::tempdir().unwrap();
    let c2 = write(dir.path(), "c2.json", &cycle(2).to_json());
    let c3 = write(dir.path(), "c3.json", &cycle(3).to_json());
    let (c2, c3) = (c2.to_str().unwrap(), c3.to_str().unwrap());
    let join = WordGraph::from_json(&stdout(&["join", c2, c3])).unwrap();
    assert_eq!(join.node_count(), 1);
    let meet = WordGraph::from_json(&stdout(&["meet", c2, c3, "-p", &fixture("cyclic6.p")])).unwrap();
    assert_eq!(meet.node_count(), 6);
    let order2 = write(dir.path(), "order2.p", "alphabet: a\nrelation: aa = 1\n");
    assert_eq!(
        run(&["join", c2, c3, "-p", order2.to_str().unwrap()]).status.code(),
        Some(2)
    );

    let shuffled = WordGraph::new(1, 3, vec![(0, 0, 2), (2, 0, 1), (1, 0, 0)]).unwrap();
    let path = write(dir.path(), "shuffled.json", &shuffled.to_json());
    let once = stdout(&["standardize", path.to_str().unwrap()]);
    assert!(WordGraph::from_json(&once)
        .unwrap()
        .equal_as_congruences(&cycle(3))
        .unwrap());
    let again = write(dir.path(), "again.json", &once);
    assert_eq!(stdout(&["standardize", again.to_str().unwrap()]), once);
}

#[test]
fn bench_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write(
        dir.path(),
        "bench.toml",
        &format!(
            "[[case]]\nname = \"C4\"\npresentation = \"{}\"\nmax_classes = 14\nthreads = [1, 2, 4]\nexpected = 575\n",
            fixture("catalan4.p")
        ),
    );
    let out = stdout(&["bench", manifest.to_str().unwrap()]);
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let counts: Vec<String> = reader.records().map(|r| r.unwrap()[6].to_string()).collect();
    assert_eq!(counts, vec!["575"; 3]);

    let missing = write(
        dir.path(),
        "missing.toml",
        "[[case]]\nname = \"x\"\npresentation = \"nope.p\"\nmax_classes = 2\n",
    );
    assert_eq!(run(&["bench", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["enum", "-p", "/nonexistent.p", "-n", "2"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.p", "alphabet: ab\nrelation: ac = 1\n");
    let out = run(&["enum", "-p", bad.to_str().unwrap(), "-n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let budget = run(&[
        "enum",
        "-p",
        &fixture("triangle.p"),
        "-n",
        "50",
        "--step-budget",
        "100",
        "--count-only",
    ]);
    assert_eq!(budget.status.code(), Some(3));
    assert_eq!(run(&["lattice", "--family", "nope:3"]).status.code(), Some(2));
}

#[test]
fn run_report_on_stderr() {
    let out = run(&["enum", "-p", &fixture("free1.p"), "-n", "3", "--count-only"]);
    let report: serde_json::Value = serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert!(report.is_object());
}
