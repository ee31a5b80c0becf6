//! End-to-end runs of the `votelab` binary.

use std::path::Path;
use std::process::{Command, Output};

fn votelab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_votelab"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "expected success, got {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn invalid_study_type_fails_with_range() {
    let dir = tempfile::tempdir().unwrap();
    let out = votelab(&["table1", "--type", "5"], dir.path());
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1, 2, 3, or 4"), "stderr: {err}");
}

#[test]
fn unknown_flag_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = votelab(&["table1", "--tirals", "5"], dir.path());
    assert!(!out.status.success());
}

#[test]
fn flag_overrides_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "run.toml",
        "type = 3\ncandidates = 3\nvoters = 9\ntrials = 20\nseed = 5\n",
    );
    let run = |extra: &[&str]| {
        let mut args = vec!["table1", "--config", &config, "--workers", "1"];
        args.extend_from_slice(extra);
        stdout(&votelab(&args, dir.path()))
    };
    let from_config = run(&[]);
    let overridden = run(&["--type", "1"]);
    assert!(from_config.contains("\"study_type\":\"Type3\""), "{from_config}");
    assert!(overridden.contains("\"study_type\":\"Type1\""), "{overridden}");
}

/// The five-voter two-candidate example where MJ and MR disagree.
#[test]
fn election_reports_mj_and_mr_disagreement() {
    let dir = tempfile::tempdir().unwrap();
    let ballots = write(dir.path(), "votes.csv", "A,B\n1,2\n2,3\n3,4\n4,1\n4,1\n");
    let text = stdout(&votelab(&["election", &ballots], dir.path()));
    assert!(text.contains("mj_winner,A\n"), "{text}");
    assert!(text.contains("mr_winner,B\n"), "{text}");
    assert!(text.contains("condorcet_winner,B\n"), "{text}");
    assert!(text.contains("mj_median A,3\n"), "{text}");
}

/// A blank cell grades the skipped candidate at the scale bottom: B's
/// column becomes (1, 6), which turns the head-to-head race into an exact
/// tie while A still wins on medians.
#[test]
fn election_imputes_blank_cells_to_bottom() {
    let dir = tempfile::tempdir().unwrap();
    let ballots = write(dir.path(), "votes.csv", "A,B\n5,\n4,6\n");
    let text =
        stdout(&votelab(&["election", &ballots, "--format", "json"], dir.path()));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["mj_winner"], "A");
    assert_eq!(v["result"]["margins"][0]["margin"], 0);
    assert_eq!(v["result"]["mr_winner"], serde_json::Value::Null);
    assert_eq!(v["result"]["mj_medians"][1]["value"], 1.0);
}

#[test]
fn ragged_ballot_file_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let ballots = write(dir.path(), "votes.csv", "A,B\n1,2\n3\n");
    let out = votelab(&["election", &ballots], dir.path());
    assert!(!out.status.success());
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("row 3"), "stderr: {err}");
}

#[test]
fn rerun_is_byte_identical_and_worker_independent() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (name, workers) in [("a.csv", "1"), ("b.csv", "2"), ("c.csv", "3")] {
        let path = dir.path().join(name);
        let out = votelab(
            &[
                "dropout2", "--trials", "40", "--seed", "11", "--voters", "25",
                "--workers", workers, "--out", path.to_str().unwrap(),
            ],
            dir.path(),
        );
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        outputs.push(std::fs::read(path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[1], outputs[2]);
    let text = String::from_utf8(outputs[0].clone()).unwrap();
    assert!(text.starts_with("# dropout2 {"), "{text}");
    assert!(text.contains("\"master_seed\":11"), "{text}");
}

#[test]
fn table1_csv_file_and_companion() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("study.csv");
    let out = votelab(
        &[
            "table1", "--candidates", "3", "--voters", "9", "--trials", "30",
            "--seed", "2", "--out", path.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty(), "file output writes nothing to stdout");

    let main = std::fs::read_to_string(&path).unwrap();
    assert_eq!(main.lines().count(), 12, "{main}");
    assert!(main.lines().nth(1) == Some("line,label,percent"), "{main}");

    let full = std::fs::read_to_string(dir.path().join("study.full.csv")).unwrap();
    assert!(full.contains("numerator,denominator"), "{full}");
    assert!(full.contains("consumed"), "{full}");
}

#[test]
fn json_output_parses_and_echoes_config() {
    let dir = tempfile::tempdir().unwrap();
    let text = stdout(&votelab(
        &[
            "table1", "--candidates", "4", "--voters", "7", "--trials", "25",
            "--seed", "3", "--format", "json",
        ],
        dir.path(),
    ));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["command"], "table1");
    assert_eq!(v["config"]["candidates"], 4);
    assert_eq!(v["config"]["master_seed"], 3);
    assert_eq!(v["result"]["kept"], 25);
    assert_eq!(v["result"]["lines"].as_array().unwrap().len(), 10);
}
