//! End-to-end tests of the command-line interface, driving the compiled
//! binary the way a user would.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicU64, Ordering};

static DIR_COUNTER: AtomicU64 = AtomicU64::new(0);

fn scratch_dir(tag: &str) -> PathBuf {
    let unique = DIR_COUNTER.fetch_add(1, Ordering::Relaxed);
    let dir = std::env::temp_dir().join(format!(
        "asym-ea-cli-{}-{tag}-{unique}",
        std::process::id()
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn binary(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asym-ea"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout_of(output: &Output) -> String {
    assert!(
        output.status.success(),
        "exit {:?}, stderr: {}",
        output.status.code(),
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn run_prints_a_complete_record() {
    let output = binary(&[
        "run",
        "--n",
        "300",
        "--algorithm",
        "static-asym",
        "--seed",
        "4",
    ]);
    let text = stdout_of(&output);
    assert!(text.contains("algorithm: static-asym"));
    assert!(text.contains("target: all-ones (n = 300)"));
    assert!(text.contains("seed: 4"));
    assert!(text.contains("optimum reached after"));
    assert!(text.contains("final fitness: 300 of 300"));
}

#[test]
fn run_requires_an_explicit_seed() {
    let output = binary(&["run", "--n", "50", "--algorithm", "standard"]);
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("--seed"));
}

#[test]
fn run_writes_a_strength_trace_on_request() {
    let dir = scratch_dir("trace");
    let trace_path = dir.join("trace.csv");
    let output = binary(&[
        "run",
        "--n",
        "400",
        "--algorithm",
        "self-adjusting-asym",
        "--seed",
        "9",
        "--trace",
        trace_path.to_str().unwrap(),
    ]);
    let text = stdout_of(&output);
    assert!(text.contains("strength trace:"));
    let trace = std::fs::read_to_string(&trace_path).unwrap();
    let mut lines = trace.lines();
    assert_eq!(lines.next(), Some("run_id,phase,r0,b,direction"));
    let first = lines.next().expect("at least one phase row");
    assert!(first.starts_with("9,1,"), "unexpected row: {first}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn oracle_reports_the_exact_hand_computable_probability() {
    let output = binary(&[
        "oracle",
        "--profile",
        "0,2,0,2",
        "--p0",
        "0.5",
        "--p1",
        "0.25",
    ]);
    let text = stdout_of(&output);
    // Gains ~ Bin(2, 1/2), losses ~ Bin(2, 1/4):
    // P(G > L) = 33/64 + 9/256 - 3/128 = 0.515625.
    assert!(text.contains("exact improvement probability: 0.515625"));
}

#[test]
fn oracle_rejects_malformed_profiles() {
    let output = binary(&["oracle", "--profile", "1,2,3", "--p0", "0.5", "--p1", "0.5"]);
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("profile"));
}

#[test]
fn verify_lemma_emits_csv_and_a_clean_exit_on_the_default_grid() {
    let output = binary(&["verify-lemma", "--zeros", "1,10", "--ones", "1,10"]);
    let text = stdout_of(&output);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("zeros,ones,r0,beta,lhs,rhs,margin,satisfied")
    );
    // 2 zeros x 2 ones x 7 r0 x 4 beta = 112 combinations, all valid.
    assert_eq!(lines.count(), 112);
    assert!(!text.contains("false"));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("112 combinations, 0 violations"));
}

#[test]
fn experiment_and_compare_work_together() {
    let dir = scratch_dir("pipeline");
    let config_path = dir.join("sweep.conf");
    let output_dir = dir.join("out");
    std::fs::write(
        &config_path,
        format!(
            "n_values = 120\nalgorithms = standard, static-asym\nruns = 25\n\
             master_seed = 3\noutput = {}\nparallelism = 1\n",
            output_dir.display()
        ),
    )
    .unwrap();

    let output = binary(&["experiment", "--config", config_path.to_str().unwrap()]);
    let text = stdout_of(&output);
    assert!(text.contains("standard"));
    assert!(text.contains("static-asym"));

    let runs_csv = output_dir.join("runs.csv");
    let comparison_csv = dir.join("comparison.csv");
    let output = binary(&[
        "compare",
        runs_csv.to_str().unwrap(),
        runs_csv.to_str().unwrap(),
        "--algorithm-a",
        "standard",
        "--algorithm-b",
        "static-asym",
        "--csv",
        comparison_csv.to_str().unwrap(),
    ]);
    let text = stdout_of(&output);
    assert!(text.contains("mann-whitney U ="));
    assert!(text.contains("25 runs"));

    let comparison = std::fs::read_to_string(&comparison_csv).unwrap();
    let mut lines = comparison.lines();
    assert_eq!(
        lines.next(),
        Some("count_a,mean_a,std_a,count_b,mean_b,std_b,u,p_two_sided")
    );
    let row = lines.next().expect("one data row");
    assert!(row.starts_with("25,"), "unexpected row: {row}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn experiment_quick_preset_is_accepted_with_overrides() {
    let dir = scratch_dir("preset");
    // Shrink the preset grid's work by overriding runs; the dimensions stay.
    let output = binary(&[
        "experiment",
        "--preset",
        "quick",
        "--runs",
        "2",
        "--output",
        dir.to_str().unwrap(),
        "--parallelism",
        "1",
    ]);
    let text = stdout_of(&output);
    for n in ["1000", "2000", "4000"] {
        assert!(text.contains(n), "missing dimension {n} in:\n{text}");
    }
    for name in ["standard", "static-asym", "self-adjusting-asym"] {
        assert!(text.contains(name), "missing operator {name} in:\n{text}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn experiment_requires_a_config_or_a_preset() {
    let output = binary(&["experiment"]);
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("--config") || stderr.contains("--preset"));
}

#[test]
fn config_errors_surface_with_the_field_name() {
    let dir = scratch_dir("bad-config");
    let config_path = dir.join("bad.conf");
    std::fs::write(
        &config_path,
        "n_values = 100\nalgorithms = standard\nalpha = 0.3\n",
    )
    .unwrap();
    let output = binary(&["experiment", "--config", config_path.to_str().unwrap()]);
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("alpha"), "stderr was: {stderr}");
    std::fs::remove_dir_all(&dir).unwrap();
}