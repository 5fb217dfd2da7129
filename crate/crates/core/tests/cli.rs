use std::fs;

use tetra_horn::cli::main_with_args;

fn run(args: &[&str]) -> i32 {
    main_with_args(std::iter::once("tetra-horn").chain(args.iter().copied()))
}

fn strip_timestamp(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with("# timestamp")).collect::<Vec<_>>().join("\n")
}

const MEMBER: &str = "# realized by diagonal matrices\n[2.0,0.0]\n[1.0,1.0]\n[3.0,1.0]\n[1.0,1.0]\n[4.0,2.0]\n[2.0,2.0]\n";

#[test]
fn symmetry_without_input_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sym.txt");
    assert_eq!(run(&["symmetry", "--report", out.to_str().unwrap()]), 0);
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("element ")).count(), 48);
    assert!(text.contains("order 48"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["check-tetra", "--tuple", "x", "--no-such-flag"]), 2);
    assert_eq!(run(&["frobnicate"]), 2);
    assert_eq!(run(&["--help"]), 0);
    assert_eq!(run(&["--cap", "0", "symmetry"]), 2);
}

#[test]
fn malformed_tuple_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "[1.0,0.0]\n[1.0]\n").unwrap();
    assert_eq!(run(&["check-tetra", "--tuple", bad.to_str().unwrap(), "--kmax", "2"]), 2);
    let trace = dir.path().join("trace.txt");
    fs::write(&trace, "[1.0,0.0]\n[1.0,0.0]\n[5.0,0.0]\n[1.0,0.0]\n[3.0,0.0]\n[2.0,0.0]\n").unwrap();
    assert_eq!(run(&["check-tetra", "--tuple", trace.to_str().unwrap(), "--kmax", "2"]), 2);
}

#[test]
fn cap_violation_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("m.txt");
    fs::write(&t, MEMBER).unwrap();
    assert_eq!(run(&["--cap", "16", "check-tetra", "--tuple", t.to_str().unwrap(), "--kmax", "5", "--mode", "inequalities"]), 2);
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("m.txt");
    fs::write(&t, MEMBER).unwrap();
    let mut texts = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("r{i}.txt"));
        let json = dir.path().join(format!("r{i}.json"));
        let code = run(&[
            "check-tetra",
            "--tuple",
            t.to_str().unwrap(),
            "--kmax",
            "3",
            "--report",
            out.to_str().unwrap(),
            "--json",
            json.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let sidecar: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
        assert_eq!(sidecar["verdict"], "pass");
        texts.push(strip_timestamp(&fs::read_to_string(&out).unwrap()));
    }
    assert_eq!(texts[0], texts[1]);
    for key in ["# config tuple=", "# seed 0", "# tolerance slack=", "# cache hits="] {
        assert!(texts[0].contains(key), "missing {key}");
    }
}

#[test]
fn horn_non_member_is_negative() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.txt");
    let code = run(&["horn", "--a", "2,0", "--b", "1,0", "--c", "1.5,1.5", "--kmax", "10", "--report", out.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(fs::read_to_string(&out).unwrap().contains("first_violation 8"));
    assert_eq!(run(&["horn", "--a", "1,0", "--b", "1,0", "--c", "1,1", "--kmax", "6", "--coupling", "--report", out.to_str().unwrap()]), 0);
}

#[test]
fn slice_writes_grid() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.txt");
    let out = dir.path().join("r.txt");
    let code = run(&["slice", "--la", "5", "--lb", "7", "--ld", "6", "--steps", "13", "--out", grid.to_str().unwrap(), "--report", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&grid).unwrap();
    assert_eq!(text.lines().next(), Some("lc le lf triangle cm member"));
    assert_eq!(text.lines().count(), 1 + 13 * 13 * 13);
}

#[test]
fn remaining_subcommands_run() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("m.txt");
    fs::write(&t, MEMBER).unwrap();
    let out = dir.path().join("r.txt");
    let o = out.to_str().unwrap();
    assert_eq!(run(&["sixj", "--k", "3", "--report", o]), 0);
    assert_eq!(run(&["sixj", "--label", "[1];[1];[2];[1];[3];[2]", "--samples", "200", "--a", "1,0.3", "--b", "1,0", "--d", "0.5,0.5", "--report", o]), 0);
    assert_eq!(run(&["sample", "--x", "0.7,0.3", "--k", "6", "--y", "0.5,0.5", "--report", o]), 0);
    assert_eq!(run(&["entropy", "--samples", "20", "--n", "3", "--report", o]), 0);
    assert_eq!(run(&["asymptotics", "--tuple", t.to_str().unwrap(), "--k", "2,4", "--report", o]), 0);
    assert!(fs::read_to_string(&out).unwrap().contains("compensated_slope"));
    let cache = dir.path().join("cache");
    assert_eq!(run(&["--cache-dir", cache.to_str().unwrap(), "sixj", "--k", "2", "--report", o]), 0);
    assert!(fs::read_dir(&cache).unwrap().count() > 0);
}
