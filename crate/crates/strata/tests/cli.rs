use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use strata::format::Document;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn strata(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strata"))
        .args(args)
        .env_remove("STRATA_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("UTF-8 output")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("UTF-8 output")
}

fn path(p: &Path) -> &str {
    p.to_str().expect("UTF-8 path")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("strata-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).expect("temp dir is writable");
    p
}

#[test]
fn jh_verify_a2() {
    let o = strata(&["jh-verify", path(&data("a2.quiver")), "--bound", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("3 sequences, factors {1,1}, PASS"));
}

#[test]
fn kronecker_demo_over_f5() {
    let o = strata(&["kronecker-demo", "--prime", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("orthogonality PASS"));
    assert!(out.contains("orthogonal pairs 30/30"));
}

#[test]
fn empty_file_is_a_parse_error() {
    let p = temp_file("empty.quiver", "");
    let o = strata(&["jh-verify", path(&p)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn parse_errors_cite_the_line() {
    let p = temp_file("cycle.quiver", "field Q\nvertices 2\narrow a 1 2\n\narrow b 2 1\n");
    let o = strata(&["exc-enum", path(&p)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 5"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(strata(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(strata(&["jh-verify"]).status.code(), Some(2));
    assert_eq!(strata(&["kronecker-demo", "--prime", "4"]).status.code(), Some(2));
    assert_eq!(strata(&["hom", path(&data("a2.quiver"))]).status.code(), Some(2));
    // A projective generator has no Bongartz complement.
    let o = strata(&["bongartz", path(&data("a3_sequence.quiver"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("ERROR: generator is projective"));
}

#[test]
fn json_output_is_deterministic_across_thread_counts() {
    let a3 = data("a3.quiver");
    let run = |threads: &str| {
        let o = strata(&["jh-verify", path(&a3), "--bound", "3", "--json", "--threads", threads]);
        assert_eq!(o.status.code(), Some(0));
        o.stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("1"));
    let env = Command::new(env!("CARGO_BIN_EXE_strata"))
        .args(["jh-verify", path(&a3), "--bound", "3", "--json"])
        .env("STRATA_THREADS", "3")
        .output()
        .expect("binary runs");
    assert_eq!(env.stdout, one);
}

#[test]
fn reports_embed_the_canonical_hash() {
    let file = data("kronecker_preinjective.quiver");
    let text = std::fs::read_to_string(&file).unwrap();
    let hash = Document::parse(&text, None).unwrap().hash();
    let o = strata(&["perp", path(&file), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["input_hash"], hash.as_str());
    assert_eq!(v["report"]["vertex_count"], 1);
    assert_eq!(v["status"], "PASS");
    let o = strata(&["perp", path(&file)]);
    assert!(stdout(&o).contains(&format!("input sha256 {hash}")));
}

#[test]
fn golden_jh_verify_report() {
    let o = strata(&["jh-verify", path(&data("a2.quiver")), "--bound", "2", "--json"]);
    let golden = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/jh_verify_a2.json"))
        .expect("golden file present");
    assert_eq!(stdout(&o), golden);
}

#[test]
fn every_verb_runs_on_sample_data() {
    let cases: &[(&str, &str, &[&str], &str)] = &[
        ("hom", "a3_modules.quiver", &[], "has dimension 0"),
        ("ext", "a3_modules.quiver", &[], "Euler form -1: PASS"),
        ("decompose", "sum.quiver", &[], "2 isotypic part(s)"),
        ("exc-enum", "kronecker.quiver", &["--bound", "5"], "6 exceptional"),
        ("seq-enum", "a3.quiver", &["--bound", "3"], "16 complete exceptional sequence(s)"),
        ("tilting-check", "a3_tilting.quiver", &[], "tilting: true"),
        ("perp", "a3_tilting.quiver", &[], "projective P_1"),
        ("bongartz", "kronecker_preinjective.quiver", &[], "M + X tilting: PASS"),
        ("stratify", "a3.quiver", &[], "standard stratification of length 3"),
        ("stratify", "a3_sequence.quiver", &[], "sequence stratification of length 3"),
        ("ringel-check", "a3.quiver", &["--bound", "3"], "5 tilting module(s) checked: PASS"),
    ];
    for (verb, file, extra, needle) in cases {
        let f = data(file);
        let mut args = vec![*verb, path(&f)];
        args.extend_from_slice(extra);
        let o = strata(&args);
        assert_eq!(o.status.code(), Some(0), "{verb}: {}", stderr(&o));
        assert!(stdout(&o).contains(needle), "{verb}: {}", stdout(&o));
    }
}

#[test]
fn prime_flag_switches_the_field() {
    let o = strata(&["seq-enum", path(&data("a3.quiver")), "--bound", "3", "--prime", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["field"], "Fp 2");
    assert_eq!(v["report"]["sequence_count"], 16);
}

#[test]
fn in_process_runs_match_the_binary() {
    let f = data("a2.quiver");
    let args = ["strata", "jh-verify", path(&f), "--bound", "2"];
    let inproc = strata::run_args(args);
    let bin = strata(&args[1..]);
    assert_eq!(inproc.code, 0);
    assert_eq!(inproc.stdout.as_bytes(), bin.stdout.as_slice());
}
