use std::path::PathBuf;

use omega_terms::cli::{run, EXIT_GUARD, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};
use omega_terms::semigroup::FiniteSemigroup;

fn omega(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("omega").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn table_file(name: &str, rows: Vec<Vec<usize>>) -> PathBuf {
    let path = std::env::temp_dir().join(format!("omega-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, FiniteSemigroup::new(rows).unwrap().to_json()).unwrap();
    path
}

#[test]
fn info() {
    let (code, out, _) = omega(&["info", "(a)ab(b)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "term=(a)ab(b)\nrank=1\nlength=8\nmu=16\nnormal=true");
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["nf", "check", "(a)ab(b)"], EXIT_OK),
        (&["nf", "check", "(ba)"], EXIT_NEGATIVE),
        (&["nf", "check", "(a"], EXIT_USAGE),
        (&["nf", "check", "()"], EXIT_USAGE),
        (&["nf", "normalize", "(ba)"], EXIT_OK),
        (&["eq", "(a)(a)", "(a)"], EXIT_OK),
        (&["eq", "(a)", "(b)"], EXIT_NEGATIVE),
        (&["eq", "--method", "language", "(a)", "(a)b"], EXIT_NEGATIVE),
        (&["eq", "--method", "language", "(a)(a)", "(a)"], EXIT_USAGE),
        (&["lang", "member", "((a)b)", "-n", "3", "aaabaaabaaab"], EXIT_OK),
        (&["lang", "member", "((a)b)", "-n", "3", "aabaaabaaab"], EXIT_NEGATIVE),
        (&["lang", "starfree", "(a)ab(b)", "-n", "2"], EXIT_OK),
        (&["lang", "starfree", "((a)ab(b)aabb)", "-n", "1"], EXIT_NEGATIVE),
        (&["lang", "disjoint", "(a)b", "(b)a", "-n", "17"], EXIT_OK),
        (&["lang", "build", "((a)b)", "-n", "100000"], EXIT_GUARD),
        (&["bogus"], EXIT_USAGE),
    ];
    for (args, expected) in cases {
        let (code, out, err) = omega(args);
        assert_eq!(code, *expected, "{args:?}: {out}{err}");
    }
}

#[test]
fn semigroup_commands() {
    // {0, 1} under multiplication, and Z/2
    let mult = table_file("mult", vec![vec![0, 0], vec![0, 1]]);
    let z2 = table_file("z2", vec![vec![0, 1], vec![1, 0]]);
    let m = mult.to_str().unwrap();
    let z = z2.to_str().unwrap();
    assert_eq!(omega(&["sgp", "aperiodic", "--table", m]).0, EXIT_OK);
    assert_eq!(omega(&["sgp", "aperiodic", "--table", z]).0, EXIT_NEGATIVE);
    let (code, out, _) = omega(&["sgp", "ind", "--table", m]);
    assert_eq!((code, out.trim()), (EXIT_OK, "1"));
    let (code, out, _) = omega(&["sgp", "eval", "(a)b", "--table", m, "--assign", "a=1,b=0"]);
    assert_eq!((code, out.trim()), (EXIT_OK, "0"));
    assert_eq!(
        omega(&["sgp", "eval", "(a)c", "--table", m, "--assign", "a=1"]).0,
        EXIT_USAGE
    );
    let _ = std::fs::remove_file(mult);
    let _ = std::fs::remove_file(z2);
}

#[test]
fn json_errors() {
    let (code, out, err) = omega(&["--json", "nf", "check", "(a"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert!(v.get("error").is_some() && v.get("message").is_some());
}

#[test]
fn json_output_parses() {
    for args in [
        &["--json", "info", "((a)b)"][..],
        &["--json", "nf", "check", "(ba)"],
        &["--json", "nf", "normalize", "(ba)"],
        &["--json", "eq", "(a)(a)", "(a)"],
        &["--json", "lang", "starfree", "(a)b", "-n", "14"],
    ] {
        let (_, out, _) = omega(args);
        serde_json::from_str::<serde_json::Value>(out.trim()).unwrap_or_else(|e| panic!("{args:?}: {e}: {out}"));
    }
}

#[test]
fn deterministic_output() {
    for args in [
        &["nf", "normalize", "--trace", "b((ba))"][..],
        &["lang", "build", "((a)b)", "-n", "3", "--format", "json"],
        &["lang", "build", "(a)ab(b)", "-n", "2", "--format", "dot"],
        &["fuzz", "--seed", "3", "--count", "20"],
        &["eq", "--method", "both", "(ab)a", "a(ba)"],
    ] {
        let first = omega(args);
        let second = omega(args);
        assert_eq!(first, second, "{args:?}");
    }
}

#[test]
fn trace_round_trip() {
    let (code, out, _) = omega(&["nf", "normalize", "--trace", "(aaba)(a)"]);
    assert_eq!(code, EXIT_OK);
    let trace = omega_terms::normal_form::RewriteTrace::parse(&out).unwrap();
    assert!(omega_terms::normal_form::verify_trace(&trace));
    assert_eq!(trace.end.to_string(), "aab(aaab)aaabaaaa(a)");
}

#[test]
fn binary_runs() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_omega"))
        .args(["nf", "check", "(a)(a)"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_NEGATIVE));
}
