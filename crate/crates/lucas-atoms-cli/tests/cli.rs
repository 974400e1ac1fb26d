//! End-to-end tests of the binary: output formats, exit codes, and
//! determinism.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lucas-atoms"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn atom_six_prints_canonical_text() {
    let out = run(&["atom", "6"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "s^2 + 3*t\n");
}

#[test]
fn lucas_handles_negative_indices() {
    let out = run(&["lucas", "--", "-3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn quotient_gate_failure_exits_two_with_reason() {
    let out = run(&["quotient", "--num", "2", "--den", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("a_4 = 0 < b_4 = 1"), "{:?}", stdout(&out));

    let out = run(&["--format", "json", "quotient", "--num", "2", "--den", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["error"], "not_polynomial");
    assert_eq!(value["reason"], "a_4 = 0 < b_4 = 1");
}

#[test]
fn catalan_h4_specializes_to_280() {
    let out = run(&["catalan", "--group", "H4", "--k", "1", "--eval", "2,-1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "280\n");
}

#[test]
fn json_polynomials_round_trip_through_the_parser() {
    use lucas_atoms::{IntPoly2, VarPair};
    use num_bigint::BigInt;
    use std::str::FromStr;

    for args in [
        vec!["atom", "12"],
        vec!["lucas", "9"],
        vec!["cyclotomic", "105"],
        vec!["lucanomial", "6", "3"],
        vec!["quotient", "--num", "1,2,3,4,5", "--den", "5,1,2,1,2,3"],
    ] {
        let mut full = vec!["--format", "json"];
        full.extend(&args);
        let out = run(&full);
        assert!(out.status.success(), "{:?}", args);
        let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        let vars = if args[0] == "cyclotomic" { VarPair::Q } else { VarPair::ST };
        let rebuilt = IntPoly2::from_terms(
            vars,
            value["poly"].as_array().unwrap().iter().map(|t| {
                let triple = t.as_array().unwrap();
                (
                    triple[0].as_u64().unwrap() as u32,
                    triple[1].as_u64().unwrap() as u32,
                    BigInt::from_str(triple[2].as_str().unwrap()).unwrap(),
                )
            }),
        );
        // Compare against the text form of the same command.
        let text_out = run(&args);
        let expected = IntPoly2::parse(stdout(&text_out).trim(), vars).unwrap();
        assert_eq!(rebuilt, expected, "{:?}", args);
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["atom", "30", "--format", "json"],
        vec!["verify", "gate-oracle", "--count", "50"],
        vec!["two-square", "21"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "{:?}", args);
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn jobs_flag_does_not_change_output() {
    let serial = run(&["verify", "mod-evaluations", "--max-n", "60"]);
    let parallel = run(&["verify", "mod-evaluations", "--max-n", "60", "--jobs", "4"]);
    assert_eq!(serial.stdout, parallel.stdout);
    assert!(serial.status.success());
}

#[test]
fn usage_errors_exit_one() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["atom"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["verify", "unknown-suite"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn two_square_witness_and_rejection() {
    let out = run(&["verify", "two-square", "--n", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("G = s^2 - t"), "{}", text);
    assert!(text.contains("H = s"), "{}", text);

    let out = run(&["two-square", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("no_two_square_analogue"));
}

#[test]
fn identity_suite_subselection() {
    let out = run(&["verify", "identities", "--suite", "TILE_SQ", "--max-m", "60"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("instances: 60"), "{}", text);
    assert!(text.contains("failures: 0"), "{}", text);
}

#[test]
fn failing_suite_exits_three() {
    let out = run(&["verify", "coxeter", "--max-rank", "2", "--max-k", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("H3 at k = 2"));
}

#[test]
fn eval_command_handles_both_contexts() {
    let out = run(&["eval", "s^4 + 3*s^2*t + t^2", "--at", "1,1"]);
    assert_eq!(stdout(&out), "5\n");
    let out = run(&["eval", "q^2+q+1", "--at", "2"]);
    assert_eq!(stdout(&out), "7\n");
}

#[test]
fn cache_ceiling_env_only_limits_caching() {
    let out = bin()
        .env("LUCAS_ATOM_CACHE_MAX", "10")
        .args(["atom", "50"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let unrestricted = run(&["atom", "50"]);
    assert_eq!(out.stdout, unrestricted.stdout);
}

#[test]
fn narayana_classical_index() {
    // Nar(A_2, 1) with the group written as A2 (rank 2, so n = 3).
    let out = run(&["narayana", "--group", "A2", "--k", "1", "--i", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "s^2 + t\n");

    let out = run(&["narayana", "--group", "E8", "--k", "1", "--i", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn narayana_gate_exception_is_a_mathematical_rejection() {
    let out = run(&["narayana", "--group", "H3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("a_6 = 0 < b_6 = 1"));
}
