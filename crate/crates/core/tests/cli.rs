//! Command-line behaviour through the built binary.

use std::process::{Command, Output};

use tempfile::tempdir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grassmann-radon"))
        .args(args)
        .env_remove("GRASSMANN_RADON_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const MANIFEST: &str = r#"
[[check]]
id = "gamma_integral"
samples = 5000

[[check]]
id = "frac_semigroup"

[[check]]
id = "bistiefel_ii"
field = "C"
n = 4
k = 1
kp = 2
samples = 5000
"#;

#[test]
fn list_checks_names_all_fourteen() {
    let o = run(&["list-checks"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 14);
    for id in ["gamma_integral", "capelli_inverse", "lemma45_limit", "inversion_k1"] {
        assert!(out.contains(id), "{id} missing");
    }
}

#[test]
fn passing_check_exits_zero_with_parseable_json() {
    let o = run(&["check", "gamma_integral", "--field", "H", "--samples", "5000"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["reports"][0]["check_id"], "gamma_integral");
    assert_eq!(v["header"]["seed"], 42);
    assert_eq!(v["summary"]["passed"], 1);
    assert!(v["header"]["command"].as_str().unwrap().contains("--seed 42"));
}

#[test]
fn failing_check_exits_one() {
    let o = run(&["check", "gamma_integral", "--samples", "5000", "--z", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_and_infeasible_configurations_exit_two() {
    assert_eq!(run(&["check", "gamma_integral", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["check", "no_such_check"]).status.code(), Some(2));
    let o = run(&["check", "bistiefel_i", "--n", "3", "--k", "1", "--kprime", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("k + k' <= n"));
}

#[test]
fn suite_csv_has_header_plus_one_line_per_check() {
    let dir = tempdir().unwrap();
    let manifest = dir.path().join("m.toml");
    std::fs::write(&manifest, MANIFEST).unwrap();
    let out = dir.path().join("r.csv");
    let o = run(&["suite", manifest.to_str().unwrap(), "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn seed_flag_env_and_default_take_precedence_in_that_order() {
    let seed_of = |cmd: &mut Command| {
        let o = cmd.output().unwrap();
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["header"]["seed"].as_u64().unwrap()
    };
    let bin = env!("CARGO_BIN_EXE_grassmann-radon");
    let base = ["check", "capelli_inverse"];
    assert_eq!(seed_of(Command::new(bin).args(base).env_remove("GRASSMANN_RADON_SEED")), 42);
    assert_eq!(seed_of(Command::new(bin).args(base).env("GRASSMANN_RADON_SEED", "0x10")), 16);
    assert_eq!(seed_of(Command::new(bin).args(base).args(["--seed", "7"]).env("GRASSMANN_RADON_SEED", "0x10")), 7);
}

#[test]
fn reruns_are_identical_apart_from_the_trailer() {
    let args = ["check", "polar_measure", "--field", "C", "--samples", "4000", "--seed", "123"];
    let strip = |o: Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("trailer");
        v
    };
    assert_eq!(strip(run(&args)), strip(run(&args)));
}

#[test]
fn gamma_prints_closed_form_values() {
    let o = run(&["gamma", "--field", "R", "--k", "1", "--lambda", "1.5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let text = v.to_string();
    assert!(text.contains("0.886226925452"), "{text}");
}

#[test]
fn radon_eval_reports_the_closed_form() {
    let o = run(&["radon-eval", "--field", "C", "--n", "3", "--k", "1", "--kprime", "2", "--samples", "20000"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let row = &v["rows"][0];
    assert!(row["closed_form"].is_number());
    assert_eq!(row["pass"], true);
}

#[test]
fn profile_and_inversion_write_csv() {
    let o = run(&["profile", "--field", "R", "--n", "4", "--samples", "2000", "--grid", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 6);
    let o = run(&["invert-k1", "--field", "C", "--n", "3", "--samples", "20000", "--points", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 4);
}
