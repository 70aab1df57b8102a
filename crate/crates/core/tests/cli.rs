//! End-to-end checks of the binary: output formats, report schema,
//! and the exit-code contract.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtown"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn count_prints_bare_values_in_text_mode() {
    let out = run(&["count", "--q", "3", "--n", "4", "--what", "qint"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "40");

    let out = run(&["count", "--q", "3", "--n", "4", "--k", "2", "--what", "qbinom"]);
    assert_eq!(stdout(&out).trim(), "130");

    let out = run(&["count", "--q", "2", "--n", "3", "--what", "subspaces"]);
    assert_eq!(stdout(&out).trim(), "16");
}

#[test]
fn count_json_uses_decimal_strings() {
    let out = run(&[
        "count", "--q", "5", "--n", "8", "--k", "4", "--what", "qbinom", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["command"], "count");
    assert!(v["value"].is_string(), "large counts are strings, not floats");
    assert_eq!(v["value"].as_str(), Some("200525284806"));
}

#[test]
fn enumerate_points_lists_canonical_representatives() {
    let out = run(&["enumerate", "--q", "2", "--n", "2", "--what", "points"]);
    assert_eq!(stdout(&out), "0 1\n1 0\n1 1\n");
}

#[test]
fn enumerate_subspaces_emits_a_loadable_family_file() {
    let out = run(&[
        "enumerate", "--q", "2", "--n", "2", "--what", "subspaces", "--k", "1",
    ]);
    let text = stdout(&out);
    let family = qtown::cli::parse_family(&text).unwrap();
    assert_eq!(family.len(), 3);
    for m in family.members() {
        assert_eq!(m.dim(), 1);
    }
}

#[test]
fn construct_output_roundtrips() {
    let out = run(&["construct", "--kind", "f1", "--q", "2", "--n", "2"]);
    let family = qtown::cli::parse_family(&stdout(&out)).unwrap();
    assert_eq!(family.len(), 3);
    let out = run(&["construct", "--kind", "f3", "--q", "3", "--n", "4"]);
    let family = qtown::cli::parse_family(&stdout(&out)).unwrap();
    assert_eq!(family.len(), 13);
    // f2 wants odd n
    let out = run(&["construct", "--kind", "f2", "--q", "3", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_report_schema_is_complete() {
    let out = run(&[
        "search",
        "--kind",
        "oddtown",
        "--q",
        "3",
        "--n",
        "2",
        "--deterministic",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for key in [
        "command",
        "q",
        "n",
        "kind",
        "bound",
        "bound_status",
        "max_size",
        "proven_optimal",
        "witness",
        "nodes_explored",
        "elapsed_ms",
        "point_order_hash",
        "verdict",
    ] {
        assert!(!v[key].is_null(), "missing report field {key}");
    }
    assert_eq!(v["max_size"].as_u64(), Some(4));
    assert_eq!(v["proven_optimal"].as_bool(), Some(true));
    assert_eq!(v["bound"].as_str(), Some("4"), "bounds are decimal strings");
    assert_eq!(v["bound_status"].as_str(), Some("proven"));
    assert_eq!(v["verdict"].as_str(), Some("satisfied"));
    let witness = v["witness"].as_array().unwrap();
    assert_eq!(witness.len(), 4);
    // each witness entry is a standalone "k n" block
    for block in witness {
        let block = block.as_str().unwrap();
        assert!(block.starts_with("1 2\n"));
    }
}

#[test]
fn fisher_search_needs_k() {
    let out = run(&["search", "--kind", "fisher", "--q", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "search", "--kind", "fisher", "--q", "2", "--n", "2", "--k", "1", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"].as_str(), Some("fisher(k=1)"));
}

#[test]
fn conjecture_and_explore_guard_q_parity() {
    let out = run(&["conjecture", "--q", "2", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["explore", "--q", "3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["explore", "--q", "6", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2), "q must be a prime power");
}

#[test]
fn explore_without_kind_runs_both_parity_kinds() {
    let out = run(&["explore", "--q", "2", "--n", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let instances = v["instances"].as_array().unwrap();
    assert_eq!(instances.len(), 2);
    for inst in instances {
        assert_eq!(inst["bound_status"].as_str(), Some("open"));
    }
}

#[test]
fn json_report_written_to_out_file() {
    let dir = std::env::temp_dir().join("qtown-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = Command::new(env!("CARGO_BIN_EXE_qtown"))
        .args(["search", "--kind", "oddtown", "--q", "3", "--n", "2", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["command"].as_str(), Some("search"));
}

#[test]
fn verify_reports_rank_witness_for_fisher() {
    // hyperplanes of F_3^3 pairwise intersect in dimension 1
    let dir = std::env::temp_dir().join("qtown-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hyperplanes.fam");
    let status = Command::new(env!("CARGO_BIN_EXE_qtown"))
        .args(["construct", "--kind", "f2", "--q", "3", "--n", "3", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_qtown"))
        .args(["verify", "--kind", "fisher", "--k", "1", "--format", "json", "--family"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["conditions_hold"].as_bool(), Some(true));
    assert_eq!(v["rank_witness"].as_u64(), Some(13));
    assert_eq!(v["size"].as_u64(), Some(13));
    assert_eq!(v["verdict"].as_str(), Some("satisfied"));
}
