use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const EDGES: &[(u64, u64)] = &[
    (1, 8),
    (2, 8),
    (3, 8),
    (1, 9),
    (3, 9),
    (3, 4),
    (5, 8),
    (3, 6),
    (5, 6),
    (5, 7),
    (1, 2),
    (1, 3),
    (4, 8),
    (3, 5),
    (6, 7),
];
const TARGETS: &[(u64, u64)] = &[(1, 2), (1, 3), (4, 8), (3, 5), (6, 7)];

fn write_pairs(path: &Path, pairs: &[(u64, u64)]) {
    let text: String = pairs.iter().map(|(a, b)| format!("{a} {b}\n")).collect();
    fs::write(path, text).unwrap();
}

fn read_pairs(path: &Path) -> BTreeSet<(u64, u64)> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with(['#', '%']))
        .map(|l| {
            let mut it = l.split_whitespace().map(|x| x.parse::<u64>().unwrap());
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            (a.min(b), a.max(b))
        })
        .collect()
}

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Workspace {
        let dir = tempfile::tempdir().unwrap();
        write_pairs(&dir.path().join("graph.txt"), EDGES);
        write_pairs(&dir.path().join("targets.txt"), TARGETS);
        Workspace { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn tpp(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_tpp"))
            .current_dir(self.dir.path())
            .args(args)
            .output()
            .unwrap()
    }
}

fn assert_ok(out: &Output) {
    assert!(
        out.status.success(),
        "exit {:?}\nstdout:\n{}\nstderr:\n{}",
        out.status,
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn protect(ws: &Workspace, out: &str, extra: &[&str]) {
    let mut args = vec!["protect", "--graph", "graph.txt", "--out", out];
    args.extend_from_slice(extra);
    assert_ok(&ws.tpp(&args));
}

#[test]
fn protect_is_byte_reproducible() {
    let ws = Workspace::new();
    let common = [
        "--sample-targets",
        "4",
        "--method",
        "rdt",
        "--k-sweep",
        "1..3",
        "--reps",
        "3",
        "--seed",
        "9",
    ];
    protect(&ws, "a", &common);
    protect(&ws, "b", &common);
    for file in [
        "sweep.csv",
        "manifest.txt",
        "rep0/selection.csv",
        "rep2/released.txt",
        "rep1/targets.txt",
    ] {
        let a = fs::read(ws.path("a").join(file)).unwrap();
        let b = fs::read(ws.path("b").join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between identical runs");
    }
}

#[test]
fn sweep_has_one_row_per_rep_and_budget() {
    let ws = Workspace::new();
    protect(
        &ws,
        "out",
        &[
            "--targets",
            "targets.txt",
            "--method",
            "sgb",
            "--k-sweep",
            "1..4",
            "--reps",
            "2",
        ],
    );
    let sweep = fs::read_to_string(ws.path("out/sweep.csv")).unwrap();
    let mut lines = sweep.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("motif,method,restricted,division,rep,seed,k"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 8);
    let keys: Vec<(&str, &str)> = rows.iter().map(|r| (r[4], r[6])).collect();
    assert_eq!(
        keys,
        [
            ("0", "1"),
            ("0", "2"),
            ("0", "3"),
            ("0", "4"),
            ("1", "1"),
            ("1", "2"),
            ("1", "3"),
            ("1", "4")
        ]
    );
    // The two repetitions use distinct derived seeds.
    assert_ne!(rows[0][5], rows[4][5]);
    let manifest = fs::read_to_string(ws.path("out/manifest.txt")).unwrap();
    assert!(manifest.lines().any(|l| l == "reps=2"));
    assert!(manifest.lines().any(|l| l.starts_with("seed_scheme=")));
}

#[test]
fn released_is_original_minus_targets_and_protectors() {
    let ws = Workspace::new();
    protect(
        &ws,
        "out",
        &[
            "--targets",
            "targets.txt",
            "--method",
            "ct",
            "--restricted",
            "--k",
            "3",
        ],
    );
    let original = read_pairs(&ws.path("graph.txt"));
    let targets = read_pairs(&ws.path("out/rep0/targets.txt"));
    let released = read_pairs(&ws.path("out/rep0/released.txt"));
    let selection = fs::read_to_string(ws.path("out/rep0/selection.csv")).unwrap();
    let header: Vec<&str> = selection.lines().next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let (pu, pv) = (col("edge_u"), col("edge_v"));
    let protectors: BTreeSet<(u64, u64)> = selection
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            let (a, b): (u64, u64) = (f[pu].parse().unwrap(), f[pv].parse().unwrap());
            (a.min(b), a.max(b))
        })
        .collect();
    assert!(!protectors.is_empty());
    let expected: BTreeSet<_> = original
        .difference(&targets)
        .filter(|e| !protectors.contains(e))
        .copied()
        .collect();
    assert_eq!(released, expected);
}

#[test]
fn evaluate_enforces_full_protection() {
    let ws = Workspace::new();
    protect(
        &ws,
        "out",
        &[
            "--targets",
            "targets.txt",
            "--method",
            "sgb",
            "--k-sweep",
            "1..",
        ],
    );
    let protected = ws.tpp(&[
        "evaluate",
        "graph.txt",
        "out/rep0/released.txt",
        "targets.txt",
        "--out",
        "eval",
        "--expect-full-protection",
    ]);
    assert_ok(&protected);
    let attacks = fs::read_to_string(ws.path("eval/attacks.csv")).unwrap();
    assert_eq!(attacks.lines().count(), 1 + TARGETS.len());
    let header = attacks.lines().next().unwrap();
    for index in [
        "jaccard",
        "adamic_adar",
        "resource_allocation",
        "motif_count",
    ] {
        assert!(
            header.contains(index),
            "attacks header {header:?} lacks {index}"
        );
    }
    let utility = fs::read_to_string(ws.path("eval/utility.csv")).unwrap();
    assert!(utility.starts_with("metric,original,released,ulr"));

    let remaining: Vec<(u64, u64)> = EDGES
        .iter()
        .filter(|e| !TARGETS.contains(e))
        .copied()
        .collect();
    write_pairs(&ws.path("unprotected.txt"), &remaining);
    let args = [
        "evaluate",
        "graph.txt",
        "unprotected.txt",
        "targets.txt",
        "--out",
        "eval2",
    ];
    assert_ok(&ws.tpp(&args));
    let strict = ws.tpp(&[&args[..], &["--expect-full-protection"]].concat());
    assert!(!strict.status.success());
}

#[test]
fn bench_rows_follow_a_fixed_order() {
    let ws = Workspace::new();
    let out = ws.tpp(&[
        "bench",
        "--graph",
        "graph.txt",
        "--targets",
        "targets.txt",
        "--methods",
        "ct,rd",
        "--k-sweep",
        "1..2",
        "--reps",
        "2",
        "--out",
        "bench.csv",
    ]);
    assert_ok(&out);
    let csv = fs::read_to_string(ws.path("bench.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "motif,method,restricted,division,k,rep,seconds"
    );
    let keys: Vec<String> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert!(f[6].parse::<f64>().unwrap() >= 0.0);
            f[1..6].join(",")
        })
        .collect();
    let expected = [
        "ct,false,tbd,1,0",
        "ct,false,tbd,1,1",
        "ct,false,tbd,2,0",
        "ct,false,tbd,2,1",
        "ct,true,tbd,1,0",
        "ct,true,tbd,1,1",
        "ct,true,tbd,2,0",
        "ct,true,tbd,2,1",
        "rd,false,,1,0",
        "rd,false,,1,1",
        "rd,false,,2,0",
        "rd,false,,2,1",
    ];
    assert_eq!(keys, expected);
}

#[test]
fn sample_targets_writes_distinct_graph_edges() {
    let ws = Workspace::new();
    assert_ok(&ws.tpp(&[
        "sample-targets",
        "--graph",
        "graph.txt",
        "-n",
        "6",
        "--seed",
        "3",
        "--out",
        "t.txt",
    ]));
    let sampled = read_pairs(&ws.path("t.txt"));
    assert_eq!(sampled.len(), 6);
    assert!(sampled.is_subset(&read_pairs(&ws.path("graph.txt"))));
    assert_ok(&ws.tpp(&[
        "sample-targets",
        "--graph",
        "graph.txt",
        "-n",
        "6",
        "--seed",
        "3",
        "--out",
        "u.txt",
    ]));
    assert_eq!(
        fs::read(ws.path("t.txt")).unwrap(),
        fs::read(ws.path("u.txt")).unwrap()
    );
}

#[test]
fn bad_input_reports_an_error() {
    let ws = Workspace::new();
    let out = ws.tpp(&[
        "protect",
        "--graph",
        "missing.txt",
        "--sample-targets",
        "2",
        "--k",
        "1",
        "--out",
        "o",
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    let out = ws.tpp(&[
        "protect",
        "--graph",
        "graph.txt",
        "--sample-targets",
        "2",
        "--k-sweep",
        "5..2",
        "--out",
        "o",
    ]);
    assert!(!out.status.success());
}
