use std::path::Path;
use std::process::{Command, Output};

use qmms::ledger;

fn qmms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmms")).args(args).env("QMMS_WORKERS", "2").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gauss_prints_the_value() {
    let o = qmms(&["gauss", "4", "2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "35\n");
    assert_eq!(stdout(&qmms(&["gauss", "3", "5", "2"])), "0\n");
    let o = qmms(&["gauss", "4", "2", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "35");
}

#[test]
fn exit_status_contract() {
    assert_eq!(qmms(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(qmms(&["gauss", "four", "2", "2"]).status.code(), Some(2));
    assert_eq!(qmms(&["enumerate", "3", "2", "6"]).status.code(), Some(2));
    assert_eq!(qmms(&["enumerate", "2", "1", "4", "--modulus", "1,1,1"]).status.code(), Some(0));
    assert_eq!(qmms(&["enumerate", "2", "1", "4", "--modulus", "1,0,1"]).status.code(), Some(2));
    assert_eq!(qmms(&["--help"]).status.code(), Some(0));
}

#[test]
fn tables_csv() {
    let o = qmms(&["tables"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "x,clause_a_q,n_bound,clause_b_q,k_bound\n\
         2,16,3k,32,2\n\
         3,64,5k/2,256,4\n\
         4,384,7k/3,3072,6\n\
         5,3072,9k/4,49152,8\n\
         6,30720,11k/5,983040,10\n"
    );
}

#[test]
fn bounds_json() {
    let o = qmms(&["bounds", "10", "3", "64"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["clause"], "a");
    assert_eq!(v["x"], 2);
    let v: serde_json::Value = serde_json::from_str(&stdout(&qmms(&["bounds", "4", "2", "2"]))).unwrap();
    assert_eq!(v["clause"], "none");
}

#[test]
fn enumerate_lines() {
    let o = qmms(&["enumerate", "4", "2", "2"]);
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 35);
    for (i, l) in lines.iter().enumerate() {
        assert_eq!(l["id"], i);
        assert_eq!(l["rref"].as_array().unwrap().len(), 2);
    }
    assert_eq!(stdout(&qmms(&["enumerate", "6", "3", "2", "--count-only"])), "1395\n");
}

#[test]
fn weight_eval_rejects_a_nonzero_sum() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 3, "q": 2, "weights": [["1","1"],["0","1"],["0","1"],["0","1"],["0","1"],["0","1"],["-1","2"]]}"#).unwrap();
    let o = qmms(&["weight-eval", path(&bad), "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("residual 1/2"), "{}", stderr(&o));

    std::fs::write(&bad, "{\"n\": 3, \"q\": 2,\n\"weights\": [\n[\"1\",\"1\"],\n[\"1\",\"z\"]]}").unwrap();
    let o = qmms(&["weight-eval", path(&bad), "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
}

#[test]
fn witness_round_trip_and_weight_eval() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("w.json");
    let o = qmms(&["search-min", "4", "2", "2", "--mode", "exhaustive", "--witness", path(&witness)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("minimum 7"));
    let o = qmms(&["weight-eval", path(&witness), "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("nonnegative_count,7\n"));

    // the file re-parses to identical rationals
    let text = std::fs::read_to_string(&witness).unwrap();
    let parsed = qmms::format::parse(&text, "w").unwrap();
    assert_eq!(qmms::format::to_string(&parsed.ctx, &parsed.f), text);
}

#[test]
fn dualize_writes_a_sum_zero_weighting() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    let g = dir.path().join("g.json");
    std::fs::write(&f, r#"{"n": 3, "q": 2, "weights": [["6","1"],["-1","1"],["-1","1"],["-1","1"],["-1","1"],["-1","1"],["-1","1"]]}"#).unwrap();
    assert_eq!(qmms(&["dualize", path(&f), "--out", path(&g)]).status.code(), Some(0));
    let dual = qmms::format::read(&g).unwrap();
    // the pencil point lies on three of the seven lines
    let mut values: Vec<String> = dual.f.values().iter().map(ToString::to_string).collect();
    values.sort();
    assert_eq!(values.iter().filter(|v| *v == "4").count(), 3);
    assert_eq!(values.iter().filter(|v| *v == "-3").count(), 4);
}

#[test]
fn heuristic_ledgers_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    let run = |p: &Path, workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_qmms"))
            .args(["search-min", "5", "2", "2", "--budget", "80", "--seed", "11", "--ledger", path(p)])
            .env("QMMS_WORKERS", workers)
            .output()
            .unwrap()
    };
    let oa = run(&a, "1");
    let ob = run(&b, "3");
    assert_eq!(oa.status.code(), Some(0));
    assert_eq!(stdout(&oa), stdout(&ob));
    let (ta, tb) = (std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    assert_eq!(ledger::strip_timestamps(&ta), ledger::strip_timestamps(&tb));

    let entries = ledger::read(&a).unwrap();
    let records = ledger::records(&entries);
    assert_eq!(records.len(), 84);
    let reported = entries.iter().find_map(|e| match e {
        ledger::Entry::Result { min } => *min,
        _ => None,
    });
    assert_eq!(ledger::replay_min(&entries), reported);
    let idx = qmms_core::SubspaceIndex::build(5, 2, 2).unwrap();
    assert_eq!(qmms_core::search::replay_verified(&idx, &records).unwrap(), reported);
}

#[test]
fn checks_report_pass() {
    let o = qmms(&["eigen-check", "4", "2", "3", "--trials", "5", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("PASS\n"));
    let o = qmms(&["bad-config", "5", "2", "3", "--samples", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bound"], "640/3");
    assert_eq!(qmms(&["bad-config", "5", "2", "2"]).status.code(), Some(2));
    let o = qmms(&["verify-lemmas", "5", "2", "3", "--trials", "1", "--c", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = qmms(&["verify-conjecture", "4", "2", "2", "--mode", "exhaustive", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("4,2,2,b,7,7,7,CONFIRMED\n"));
}
