use std::process::{Command, Output};

fn partnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_partnorm"))
        .args(args)
        .env_remove("PARTNORM_ENUM_CEILING")
        .env_remove("PARTNORM_MAX_SERIES_ORDER")
        .env_remove("PARTNORM_MACMAHON_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn assert_round_trips(text: &str) {
    for line in text.lines().filter(|l| !l.is_empty()) {
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&value).unwrap(), line);
    }
}

#[test]
fn enum_csv_rows() {
    let out = partnorm(&["enum", "4", "--class", "all", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "parts,size,length,norm,rank");
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[1], "4,4,1,4,3");
    assert_eq!(lines[5], "1 1 1 1,4,4,1,-3");
}

#[test]
fn enum_rr_jsonl() {
    let out = partnorm(&["enum", "7", "--class", "rr"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    assert_eq!(
        text.lines().next().unwrap(),
        r#"{"parts":[7],"size":7,"length":1,"norm":"7","rank":6}"#
    );
    assert_round_trips(&text);
}

#[test]
fn enum_unknown_class_is_usage_error() {
    let out = partnorm(&["enum", "3", "--class", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("nosuch"));
}

#[test]
fn enum_respects_ceiling_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_partnorm"))
        .args(["enum", "10"])
        .env("PARTNORM_ENUM_CEILING", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

fn last_line(args: &[&str]) -> String {
    let out = partnorm(args);
    assert!(out.status.success(), "{}", stderr(&out));
    stdout(&out).lines().last().unwrap().to_string()
}

#[test]
fn seq_last_lines() {
    assert_eq!(last_line(&["seq", "max-norm", "10"]), "10 36");
    assert_eq!(last_line(&["seq", "p", "10"]), "10 42");
    assert_eq!(last_line(&["seq", "p-dot", "4"]), "4 14");
    assert_eq!(last_line(&["seq", "lehmer", "3"]), "3 11/6");
    assert_eq!(last_line(&["seq", "lehmer-distinct", "3"]), "3 5/6");
    assert_eq!(last_line(&["seq", "mult-partitions", "12"]), "12 4");
    assert_eq!(last_line(&["seq", "max-norm-rr", "10"]), "10 24");
}

#[test]
fn seq_b_file_starts_at_zero() {
    let out = partnorm(&["seq", "max-norm", "3"]);
    assert_eq!(stdout(&out), "0 1\n1 1\n2 2\n3 3\n");
}

#[test]
fn seq_json_round_trips() {
    let out = partnorm(&["seq", "p", "5", "--format", "json"]);
    let text = stdout(&out);
    assert!(text.starts_with(r#"[{"n":0,"value":"1"},"#));
    assert_round_trips(&text);
}

#[test]
fn seq_unknown_name_is_usage_error() {
    assert_eq!(partnorm(&["seq", "nosuch", "5"]).status.code(), Some(2));
}

#[test]
fn zeta_exact_fixed_length() {
    assert_eq!(
        last_line(&["zeta", "fixed-length", "--s", "2", "--k", "2", "--exact"]),
        "7/360 * pi^4"
    );
    let out = partnorm(&["zeta", "fixed-length", "--s", "3", "--k", "2", "--exact"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zeta_primes_product() {
    let out = partnorm(&[
        "zeta", "product", "--set", "primes", "--s", "2", "--tol", "1e-10",
    ]);
    assert!(out.status.success());
    let value: f64 = stdout(&out).lines().next().unwrap().parse().unwrap();
    assert!((value - std::f64::consts::PI.powi(2) / 6.0).abs() <= 1e-10);
    assert!(stdout(&out).starts_with("1.6449340668"));
}

#[test]
fn zeta_domain_errors_exit_2() {
    let out = partnorm(&["zeta", "product", "--set", "primes", "--s", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("s > 1"));
    let out = partnorm(&["zeta", "product", "--set", "from:1", "--s", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zeta_json_round_trips() {
    let out = partnorm(&[
        "zeta",
        "nuclear-dirichlet",
        "--s",
        "3",
        "--nu-max",
        "100",
        "--format",
        "json",
    ]);
    let text = stdout(&out);
    assert!(text.contains(r#""tail_bound":null"#));
    assert_round_trips(&text);
    let out = partnorm(&["zeta", "golden", "--terms", "13", "--format", "json"]);
    assert_round_trips(&stdout(&out));
}

#[test]
fn verify_fine_counts() {
    let out = partnorm(&["verify", "fine", "--n-max", "20"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(
        text.lines()
            .filter(|l| l.starts_with("ExactPass fine"))
            .count(),
        21
    );
}

#[test]
fn verify_rr_flags_pass_unless_strict() {
    let out = partnorm(&["verify", "extremal-rr", "--n-max", "40"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("published formula gives 48, witness product 24"));
    let strict = partnorm(&[
        "verify",
        "extremal-rr",
        "--n-max",
        "40",
        "--allow-paper-flags",
        "false",
    ]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn verify_json_round_trips() {
    let out = partnorm(&[
        "verify",
        "extremal-distinct",
        "--n-max",
        "10",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains(r#""known_issue":"DistinctDecompositionGap""#));
    assert_round_trips(&text);
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    assert_eq!(partnorm(&["verify", "nosuch"]).status.code(), Some(2));
}

#[test]
fn verify_all_passes() {
    let out = partnorm(&["verify", "all", "--quiet"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().count(), 19);
}

#[test]
fn sampling_is_reproducible() {
    let a = stdout(&partnorm(&["sample", "8", "--count", "50"]));
    let b = stdout(&partnorm(&["sample", "8", "--count", "50"]));
    let c = stdout(&partnorm(&["sample", "8", "--count", "50", "--seed", "7"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert_eq!(a.lines().count(), 50);
    for line in a.lines() {
        let parts: Vec<u64> = serde_json::from_str(line).unwrap();
        assert_eq!(parts.iter().sum::<u64>(), 8);
    }
}
