//! End-to-end tests of the cubeiso binary: output shapes, exit codes, and
//! determinism of repeated runs.

use std::path::Path;
use std::process::{Command, Output};

fn cubeiso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubeiso"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = cubeiso(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn exit_code(args: &[&str]) -> i32 {
    cubeiso(args).status.code().expect("an exit code")
}

fn write_family(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn edges_of_a_constructed_family() {
    let out = stdout_of(&[
        "edges",
        "--n",
        "3",
        "--r",
        "2",
        "--construct",
        "subcube",
        "--d",
        "3",
    ]);
    assert_eq!(out.trim(), "24");
}

#[test]
fn edges_of_a_family_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_family(
        dir.path(),
        "fam.json",
        r#"{"n":3,"vertices":["000","100","010","110"]}"#,
    );
    assert_eq!(
        stdout_of(&["edges", "--family", &path, "--r", "1"]).trim(),
        "4"
    );
    assert_eq!(
        stdout_of(&["boundary", "--family", &path, "--r", "1"]).trim(),
        "4"
    );
    let json = stdout_of(&["edges", "--family", &path, "--r", "2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["edges"], 6);
    assert_eq!(doc["m"], 4);
}

#[test]
fn construct_pipes_into_family_input() {
    let dir = tempfile::tempdir().unwrap();
    let built = stdout_of(&[
        "construct",
        "--construct",
        "hamming-ball",
        "--n",
        "5",
        "--k",
        "1",
    ]);
    let path = write_family(dir.path(), "ball.json", built.trim());
    // the radius-1 ball is complete at distance 2
    assert_eq!(
        stdout_of(&["edges", "--family", &path, "--r", "2"]).trim(),
        "15"
    );
}

#[test]
fn normalize_writes_normal_form_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_family(
        dir.path(),
        "fam.json",
        r#"{"n":3,"vertices":["010","011"]}"#,
    );
    let trace = dir.path().join("trace.jsonl");
    let out = stdout_of(&[
        "normalize",
        "--family",
        &path,
        "--r",
        "2",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(out.trim(), r#"{"n":3,"vertices":["000","100"]}"#);
    let trace_text = std::fs::read_to_string(&trace).unwrap();
    assert!(trace_text.ends_with('\n'));
    let lines: Vec<&str> = trace_text.lines().collect();
    assert_eq!(lines.len(), 2);
    for line in lines {
        let step: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(step["op"] == "down" || step["op"] == "left");
        assert!(step["rank_sum_after"].as_u64() < step["rank_sum_before"].as_u64());
    }
}

#[test]
fn bound_values_match_the_library() {
    assert_eq!(
        stdout_of(&["bound", "--theorem", "kkl", "--n", "4", "--r", "2"]).trim(),
        "24"
    );
    assert_eq!(
        stdout_of(&["bound", "--theorem", "distance-two", "--n", "4", "--m", "9"]).trim(),
        "108"
    );
    assert_eq!(
        stdout_of(&["bound", "--theorem", "weight", "--m", "8"]).trim(),
        "24"
    );
    assert_eq!(
        stdout_of(&[
            "bound",
            "--theorem",
            "kleitman-threshold",
            "--n",
            "10",
            "--r",
            "4"
        ])
        .trim(),
        "56"
    );
    let csv = stdout_of(&[
        "bound",
        "--theorem",
        "even-power",
        "--n",
        "16",
        "--m",
        "256",
        "--t",
        "2",
        "--format",
        "csv",
    ]);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "theorem,n,m,t_or_r,ell,ell_prime,beta,beta_prime,bound"
    );
    assert!(lines
        .next()
        .unwrap()
        .starts_with("even-power,16,256,2,8,8,11,16,"));
}

#[test]
fn solve_reports_value_and_witnesses() {
    let plain = stdout_of(&[
        "solve",
        "--n",
        "4",
        "--m",
        "5",
        "--r",
        "2",
        "--backend",
        "exhaustive",
    ]);
    assert_eq!(plain.lines().next().unwrap(), "value 10");
    assert_eq!(plain.lines().nth(1).unwrap(), "witnesses 16");

    let json = stdout_of(&[
        "solve", "--n", "4", "--m", "8", "--r", "2", "--format", "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["value"], 24);
    assert_eq!(doc["backend"], "compressed");
    assert!(doc.get("wall_time_ms").is_none(), "timings are opt-in");

    let timed = stdout_of(&[
        "solve",
        "--n",
        "3",
        "--m",
        "4",
        "--r",
        "1",
        "--format",
        "json",
        "--timings",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&timed).unwrap();
    assert!(doc["wall_time_ms"].is_u64());
}

#[test]
fn solve_output_is_deterministic() {
    let args = [
        "solve", "--n", "4", "--m", "7", "--r", "2", "--format", "json",
    ];
    assert_eq!(stdout_of(&args), stdout_of(&args));
}

#[test]
fn verify_single_suite_passes() {
    let out = stdout_of(&["verify", "--suite", "harper-small"]);
    assert_eq!(out.trim(), "harper-small: pass (checks 3, violations 0)");
    let json = stdout_of(&["verify", "--suite", "analytic", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc[0]["suite"], "analytic");
    assert_eq!(doc[0]["pass"], true);
}

#[test]
fn table_rows_are_csv() {
    let out = stdout_of(&[
        "table",
        "--theorem",
        "even-power",
        "--n",
        "12",
        "--r",
        "2",
        "--k-cap",
        "4",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "theorem,n,r,t,k,m,ell,ell_prime,beta,beta_prime,bound,achieved,ratio"
    );
    assert_eq!(lines.len(), 5);
    for line in &lines[1..] {
        let ratio: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(ratio >= 1.0);
    }
}

#[test]
fn bad_inputs_exit_two() {
    // unmet hypothesis: m = 2^n is not below the cube size
    assert_eq!(
        exit_code(&[
            "bound",
            "--theorem",
            "distance-two",
            "--n",
            "4",
            "--m",
            "16"
        ]),
        2
    );
    // invalid radius
    assert_eq!(
        exit_code(&[
            "edges",
            "--n",
            "3",
            "--r",
            "9",
            "--construct",
            "subcube",
            "--d",
            "2"
        ]),
        2
    );
    // unknown suite
    assert_eq!(exit_code(&["verify", "--suite", "nope"]), 2);
    // over the search budget
    assert_eq!(
        exit_code(&[
            "solve",
            "--n",
            "20",
            "--m",
            "7",
            "--r",
            "2",
            "--backend",
            "exhaustive"
        ]),
        2
    );
    // missing construction parameter
    assert_eq!(
        exit_code(&[
            "edges",
            "--n",
            "4",
            "--r",
            "1",
            "--construct",
            "hamming-ball"
        ]),
        2
    );
    // a family file that is not a family
    let dir = tempfile::tempdir().unwrap();
    let path = write_family(dir.path(), "bad.json", r#"{"n":3,"vertices":["00"]}"#);
    assert_eq!(exit_code(&["edges", "--family", &path, "--r", "1"]), 2);
}

#[cfg(unix)]
#[test]
fn closed_pipe_does_not_panic() {
    // 6196 vertex rows overflow the pipe buffer after head exits, so the
    // binary sees the closed pipe mid-write; it must die quietly.
    let out = Command::new("sh")
        .arg("-c")
        .arg(format!(
            "{} --format csv construct --construct hamming-ball --n 20 --k 4 | head -n 1",
            env!("CARGO_BIN_EXE_cubeiso")
        ))
        .output()
        .expect("the pipeline runs");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        !stderr.contains("panicked"),
        "panicked on a closed pipe: {stderr}"
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "vertex");
}

#[test]
fn threads_flag_is_accepted() {
    let out = stdout_of(&[
        "solve",
        "--n",
        "4",
        "--m",
        "6",
        "--r",
        "2",
        "--threads",
        "2",
    ]);
    assert_eq!(out.lines().next().unwrap(), "value 13");
}
