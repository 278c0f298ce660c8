//! End-to-end runs of the binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncforms")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden").join(name)
}

#[test]
fn trace_table_is_byte_identical() {
    let o = run(&["--format", "csv", "--threads", "2", "traces", "--all", "--primes", "5..23,73"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), std::fs::read_to_string(golden("table8.csv")).unwrap());
}

#[test]
fn single_trace_and_refusals() {
    let o = run(&["traces", "gamma_24.6.1^6", "--primes", "7"]);
    assert!(stdout(&o).trim_end().ends_with("4, -188"));
    let o = run(&["traces", "gamma_x", "--primes", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("gamma_24.6.1^6 (1a)"));
    assert_eq!(run(&["traces", "1a", "--primes", "3"]).status.code(), Some(2));
}

#[test]
fn expansions() {
    let e6 = run(&["expand", "E6", "--order", "4"]);
    assert_eq!(stdout(&e6).trim(), "1 + 12q + 36q^2 + 12q^3 + O(q^4)");
    let h1 = stdout(&run(&["expand", "gamma_24.6.1^6", "h1", "--order", "8"]));
    let eta = stdout(&run(&["expand", "eta", "1:4,2:-6,4:20", "--root", "3", "--order", "8"]));
    assert_eq!(h1, eta);
    assert!(h1.contains("- 850/243 q^5"));
    let csv = stdout(&run(&["--format", "csv", "expand", "1b", "h2", "--order", "3"]));
    assert_eq!(csv, "exponent,coefficient\n1/3,1/1\n7/3,-16/3\n");
}

#[test]
fn aswd_against_golden() {
    let o = run(&["aswd", "gamma_24.6.1^6", "--pmax", "47", "--golden", "table10.csv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("golden table10.csv: 0 mismatches"));

    let text = std::fs::read_to_string(golden("table10.csv")).unwrap().replace("\n7,47,", "\n7,48,");
    let path = std::env::temp_dir().join(format!("ncforms-perturbed-{}.csv", std::process::id()));
    std::fs::write(&path, text).unwrap();
    let o = run(&["aswd", "1a", "--pmax", "13", "--golden", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1));
    let failures: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(failures["failures"][0]["column"], "aa");
    assert_eq!(failures["failures"][0]["p"], 7);
}

#[test]
fn aswd_case_split_for_18_6() {
    let o = run(&["--format", "csv", "aswd", "gamma_18.6.3^3.1^3", "--pmax", "37"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for line in text.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let p: u64 = cells[1].parse().unwrap();
        assert_eq!(cells[2], if p % 3 == 1 { "case1" } else { "case2" }, "{line}");
        assert_eq!(cells[11], "true");
    }
    let json = stdout(&run(&["--format", "json", "aswd", "3a", "--pmax", "5"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let pattern = &v[0]["alpha"]["powerPattern"];
    assert!(pattern.as_array().unwrap().iter().any(|e| e[0] == 3 && e[1]["value"] == 25 - 9));
}

#[test]
fn structure_commands() {
    let o = run(&["noncongruence", "--all"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches(": noncongruence").count(), 8);
    let o = run(&["noncongruence", "--widths", "27,3,1,1,1,1,1,1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["--format", "json", "dim", "--group", "gamma_24.6.1^6"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v[0]["dim"].as_i64(), v[0]["u"].as_i64(), v[0]["u_irr"].as_i64()), (Some(2), Some(8), Some(0)));
    let o = run(&["--format", "json", "catalog"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 9);
}

#[test]
fn isogeny_checks() {
    let o = run(&["isogeny", "--pair", "1a", "--mode", "sampled", "--primes", "101,103"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("pass"));
    let o = run(&["isogeny", "--pair", "families", "--mode", "sampled"]);
    assert!(o.status.success());
    let o = run(&["isogeny", "--pair", "1a", "--modpoly", "/nonexistent"]);
    assert!(o.status.success(), "Phi_1 is built in");
    let o = run(&["isogeny", "--pair", "2a", "--modpoly", "/nonexistent"]);
    assert_eq!(o.status.code(), Some(2));
}
