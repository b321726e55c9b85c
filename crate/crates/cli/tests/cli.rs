//! End-to-end fixture battery for the binary: commands, documents, exit
//! codes.

use std::path::Path;
use std::process::{Command, Output};

fn thinkit(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thinkit"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.display().to_string()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|_| {
        panic!(
            "stdout is not JSON: {:?}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

const C4: &str = "p thin 4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n";

#[test]
fn thinness_of_c4_is_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c4.g", C4);
    let out = thinkit(&["thinness", &g], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let value = stdout_json(&out);
    assert_eq!(value["thinness"], 2);
    assert_eq!(value["ordering"].as_array().unwrap().len(), 4);
    assert!(value["elapsedMs"].is_number());
}

#[test]
fn pthinness_of_claw_is_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "claw.g", "p thin 4 3\ne 0 1\ne 0 2\ne 0 3\n");
    let out = thinkit(&["pthinness", &g], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["properThinness"], 2);
}

#[test]
fn check_rep_on_generated_claw_tower() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("claw2.g").display().to_string();
    let rep = dir.path().join("claw2.rep").display().to_string();
    let out = thinkit(
        &[
            "generate", "--family", "claw", "--params", "2", "--out", &g, "--rep-out", &rep,
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let out = thinkit(&["check-rep", &g, "--rep", &rep, "--strong"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["consistent"], true);
}

#[test]
fn check_rep_reports_inconsistent_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c4.g", C4);
    let rep = write(
        dir.path(),
        "bad.rep",
        "mode weak\norder 0 1 2 3\nclasses 0 0 0 0\n",
    );
    let out = thinkit(&["check-rep", &g, "--rep", &rep], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["consistent"], false);
}

#[test]
fn min_partition_and_order_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c4.g", C4);
    let ord = write(dir.path(), "c4.order", "0 1 2 3\n");
    let out = thinkit(&["min-partition", &g, "--order", &ord], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let value = stdout_json(&out);
    assert_eq!(value["count"], 2);

    // one class on the cycle admits no consistent order
    let part = write(dir.path(), "one.part", "0 0 0 0\n");
    let out = thinkit(&["order-for-partition", &g, "--partition", &part], dir.path());
    assert_eq!(out.status.code(), Some(1));

    let singles = write(dir.path(), "singles.part", "0 1 2 3\n");
    let out = thinkit(
        &["order-for-partition", &g, "--partition", &singles, "--strong"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn solve_stable_set_document() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c4.g", C4);
    let spec = write(
        dir.path(),
        "mwss.json",
        r#"{"r":1,"sense":"maximize","weights":[[1,1,1,1]],"c":[[1]],
            "lists":[[[],[0]],[[],[0]],[[],[0]],[[],[0]]],"matrix":[[0]]}"#,
    );
    let rep = write(
        dir.path(),
        "c4.rep",
        "mode weak\norder 0 1 2 3\nclasses 0 1 1 1\n",
    );
    let out = thinkit(&["solve", &g, "--spec", &spec, "--rep", &rep], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let value = stdout_json(&out);
    assert_eq!(value["objective"], 2);
    assert_eq!(value["sets"][0], serde_json::json!([0, 2]));
}

#[test]
fn solve_proper_reports_infeasible_efficient_domination() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c4.g", C4);
    let spec = write(
        dir.path(),
        "eds.json",
        r#"{"r":2,"sense":"minimize","weights":[[1,1,1,1]],"c":[[1,0]],
            "lists":[[[0],[1]],[[0],[1]],[[0],[1]],[[0],[1]]],
            "matrix":[["*","*"],["*","*"]],
            "neighborhoodBounds":[
              {"i":0,"j":0,"kind":"closed","l":1,"u":1},
              {"i":0,"j":1,"kind":"closed","l":1,"u":1}]}"#,
    );
    let rep = write(
        dir.path(),
        "c4.rep",
        "mode strong\norder 0 1 2 3\nclasses 0 1 0 1\n",
    );
    let out = thinkit(
        &["solve-proper", &g, "--spec", &spec, "--rep", &rep],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["feasible"], false);
}

#[test]
fn widths_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "p4.g", "p thin 4 3\ne 0 1\ne 1 2\ne 2 3\n");
    let out = thinkit(&["widths", &g, "--which", "cutw"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["cutwidth"], 1);
    let out = thinkit(&["widths", &g, "--which", "lmimw"], dir.path());
    assert_eq!(stdout_json(&out)["lmimw"], 1);
    let out = thinkit(&["widths", &g, "--which", "isop"], dir.path());
    assert_eq!(stdout_json(&out)["isoperimetricPeak"], 1);
}

#[test]
fn reduce_nb_emits_graph_and_partition() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(
        dir.path(),
        "nb.txt",
        "elements a b c\ntriple a b c\n",
    );
    let gpath = dir.path().join("reduced.g").display().to_string();
    let ppath = dir.path().join("reduced.part").display().to_string();
    let out = thinkit(
        &[
            "reduce-nb",
            "--instance",
            &inst,
            "--graph-out",
            &gpath,
            "--partition-out",
            &ppath,
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let value = stdout_json(&out);
    assert_eq!(value["n"], 6);
    assert_eq!(value["edges"].as_array().unwrap().len(), 4);
    // reduced files feed straight back into order-for-partition
    let out = thinkit(
        &["order-for-partition", &gpath, "--partition", &ppath],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn rainbow_fixture_values() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = write(dir.path(), "k2.g", "p thin 2 1\ne 0 1\n");
    let out = thinkit(&["rainbow", &k2, "--t", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let value = stdout_json(&out);
    assert_eq!(value["weight"], 2);
    assert_eq!(value["route"], "proper-dp");

    let p3 = write(dir.path(), "p3.g", "p thin 3 2\ne 0 1\ne 1 2\n");
    let out = thinkit(&["rainbow", &p3, "--t", "2"], dir.path());
    assert_eq!(stdout_json(&out)["weight"], 2);
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = thinkit(&["thinness", "missing.g"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let bad = write(dir.path(), "bad.g", "p thin 3 1\ne 0 5\n");
    let out = thinkit(&["thinness", &bad], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn size_caps_exit_three_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let edges: String = (1..12).map(|v| format!("e {} {}\n", v - 1, v)).collect();
    let g = write(dir.path(), "p12.g", &format!("p thin 12 11\n{edges}"));
    let out = thinkit(&["thinness", &g], dir.path());
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_thinkit"))
        .args(["thinness", &g])
        .env("THINKIT_SIZE_CAP", "12")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["thinness"], 1);
}

#[test]
fn generate_writes_parsable_documents() {
    let dir = tempfile::tempdir().unwrap();
    for (family, params, n) in [
        ("complement-matching", vec!["3"], 6),
        ("grid", vec!["3"], 9),
        ("mary-tree", vec!["2", "2"], 7),
        ("gk", vec!["2"], 7),
    ] {
        let mut args = vec!["generate", "--family", family, "--params"];
        args.extend(params.iter().map(|s| &**s));
        let out = thinkit(&args, dir.path());
        assert_eq!(out.status.code(), Some(0), "family {family}");
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(text.starts_with("p thin"), "family {family}");
        let header: Vec<&str> = text.lines().next().unwrap().split(' ').collect();
        assert_eq!(header[2].parse::<usize>().unwrap(), n, "family {family}");
    }
    let out = thinkit(&["generate", "--family", "nope", "--params", "1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}
