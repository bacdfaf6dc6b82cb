use std::process::{Command, Output};

fn cobweb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobweb"))
        .args(args)
        .env_remove("COBWEB_SEQ")
        .env_remove("COBWEB_SEQ_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = cobweb(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn parse_csv(text: &str) -> Vec<Vec<i128>> {
    text.lines().map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect()
}

#[test]
fn fibonomial_value() {
    assert_eq!(stdout(&["fnomial", "5", "2", "--seq", "fibonacci"]), "15\n");
    assert_eq!(stdout(&["fnomial", "4", "2"]), "6\n");
}

#[test]
fn zeta_times_mobius_is_identity() {
    for seq in ["natural", "fibonacci", "gaussian", "constant:2"] {
        let zeta = parse_csv(&stdout(&["zeta", "4", "--seq", seq, "--format", "csv"]));
        let mu = parse_csv(&stdout(&["mobius", "4", "--seq", seq, "--format", "csv"]));
        let n = zeta.len();
        for i in 0..n {
            for j in 0..n {
                let dot: i128 = (0..n).map(|k| zeta[i][k] * mu[k][j]).sum();
                assert_eq!(dot, i128::from(i == j), "{seq} at ({i}, {j})");
            }
        }
    }
}

#[test]
fn fibonacci_staircase_rows() {
    let text = stdout(&["scala", "6", "--seq", "fibonacci"]);
    let zeros: Vec<usize> = text.lines().map(|l| l.split(' ').filter(|c| *c == "0").count()).collect();
    // Level 5 holds labels 8..=12; its first row shows 5_F - 1 = 4 zeros.
    assert_eq!(zeros[7], 4);
    assert_eq!(zeros.len(), 20);
}

#[test]
fn check_suite_passes_on_reference_sequences() {
    for seq in ["natural", "fibonacci", "gaussian", "constant:2"] {
        let out = cobweb(&["check", "--seq", seq, "--levels", "4"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    }
    assert_eq!(cobweb(&["check", "--seq", "natural", "--levels", "5"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cobweb(&["zeta", "3", "--seq", "no-such-sequence"]).status.code(), Some(2));
    assert_eq!(cobweb(&["zeta"]).status.code(), Some(2));
    assert_eq!(cobweb(&["scala", "3", "--format", "json"]).status.code(), Some(2));
    assert_eq!(cobweb(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cobweb(&["structure", "4", "--cap", "5"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["tile", "3", "5"][..],
        &["structure", "3", "--format", "json"],
        &["poset", "4", "--seq", "fibonacci", "--format", "dot"],
        &["chains", "1", "4", "--format", "csv"],
        &["join-demo"],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn join_demo_reports_two_tuples() {
    let text = stdout(&["join-demo"]);
    assert_eq!(text.matches("vs reference").count(), 2);
    assert!(text.contains("(x2, z3, y1)"));
}

#[test]
fn tiling_outputs() {
    let text = stdout(&["tile", "2", "3"]);
    assert!(text.starts_with("3 tiles cover the 2 x 3 box"));
    let json: serde_json::Value = serde_json::from_str(&stdout(&["tile", "3", "4", "--seq", "fibonacci", "--format", "json"])).unwrap();
    assert_eq!(json["tiles"].as_array().unwrap().len(), 3);
    assert_eq!(json["box"]["extents"], serde_json::json!([1, 2, 3]));
}

#[test]
fn node_limit_leaves_tiling_undecided() {
    let out = cobweb(&["tile", "4", "6", "--cap", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("undecided"));
}

#[test]
fn chains_listing_matches_count() {
    let text = stdout(&["chains", "2", "4", "--format", "csv"]);
    assert_eq!(text.lines().count(), 24);
    let summary = stdout(&["chains", "2", "4"]);
    assert!(summary.contains("4 blocks of size 6"));
}

#[test]
fn output_file_and_sequence_directory() {
    let dir = std::env::temp_dir().join(format!("cobweb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("pell.txt"), "1\n2\n5\n12\n29\n").unwrap();
    let target = dir.join("whitney.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_cobweb"))
        .args(["whitney", "3", "--seq", "pell", "--format", "csv", "--out"])
        .arg(&target)
        .env("COBWEB_SEQ_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&target).unwrap();
    assert_eq!(text.lines().next(), Some("rank,first_kind,second_kind"));
    assert_eq!(text.lines().count(), 5);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn poset_exports() {
    let dot = stdout(&["poset", "3", "--format", "dot"]);
    assert!(dot.starts_with("digraph"));
    let json: serde_json::Value = serde_json::from_str(&stdout(&["poset", "3", "--format", "json"])).unwrap();
    assert_eq!(json["sizes"], serde_json::json!([1, 2, 3]));
}
