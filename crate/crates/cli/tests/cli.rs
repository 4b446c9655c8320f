use std::fs;
use std::process::{Command, Output};

use qeuler_cli::OutputRecord;
use qeuler_core::exact::rat::rat;
use qeuler_core::exact::render::ratfn_from_json;
use qeuler_core::qfamilies::{q_euler_number, q_genocchi_number};
use serde_json::Value;

fn qeuler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qeuler"))
        .args(args)
        .env_remove("QGEN_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn classical_number() {
    let o = qeuler(&["num", "genocchi", "6", "--format", "plain"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-3\n");
}

#[test]
fn q_number_evaluated_at_a_point() {
    let o = qeuler(&["num", "q-euler", "1", "--eval", "q=1/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-2/5\n");
}

#[test]
fn base_power_and_limit() {
    let o = qeuler(&["num", "q-euler", "1", "--base-power", "2"]);
    assert_eq!(stdout(&o), "(-q^2)/(1+q^4)\n");
    let o = qeuler(&["num", "q-genocchi", "6", "--limit-q1"]);
    assert_eq!(stdout(&o), "-3\n");
    let o = qeuler(&["num", "q-bernoulli", "1", "--limit-q1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("pole at q=1"));
}

#[test]
fn verify_reports_known_failure() {
    let o = qeuler(&[
        "verify",
        "--id",
        "PROP2",
        "--variant",
        "printed",
        "--params",
        "n=1..1,m=1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains("PROP2 printed n=1,m=1: FAILS"),
        "{}",
        stdout(&o)
    );
    let o = qeuler(&[
        "verify",
        "--id",
        "PROP2",
        "--variant",
        "corrected",
        "--params",
        "n=1..3,m=1,2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn verify_json_and_parity_errors() {
    let o = qeuler(&[
        "verify", "--id", "EQ17", "--params", "n=2", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["holds_exact"], Value::Bool(true));
    assert_eq!(v[0]["difference"], "0");

    let o = qeuler(&["verify", "--id", "EQ11", "--params", "n=2,m=2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("m must be odd for this identity"));
    let o = qeuler(&["verify", "--id", "EQ99"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qeuler(&["verify", "--id", "EQ17", "--variant", "corrected"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["num", "tangent", "3"][..],
        &["num", "q-euler", "1", "--eval", "q=0.5"],
        &["num", "euler", "1", "--base-power", "2"],
        &["table", "euler", "--max-n", "3", "--format", "yaml"],
        &["poly", "q-bernoulli", "2"],
        &["oracle", "q-euler", "1", "--q", "3/2", "--tol", "1/100"],
        &["oracle", "euler", "1", "--q", "1/2", "--tol", "1/100"],
        &["bogus"],
    ] {
        assert_eq!(qeuler(args).status.code(), Some(2), "{args:?}");
    }
    let o = qeuler(&["oracle", "q-euler", "1", "--q", "1", "--tol", "1/100"]);
    assert!(stderr(&o).contains("oracle requires rational q in (0,1)"));
}

#[test]
fn max_n_cap() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_qeuler"))
            .args(["num", "euler", "10"])
            .env("QGEN_MAX_N", cap)
            .output()
            .unwrap()
    };
    assert_eq!(run("9").status.code(), Some(2));
    assert_eq!(run("10").status.code(), Some(0));
    assert_eq!(qeuler(&["num", "euler", "65"]).status.code(), Some(2));
}

#[test]
fn tables_in_each_format() {
    let o = qeuler(&["table", "q-euler", "--max-n", "2", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "family,n,value\nq-euler,0,1\nq-euler,1,(-q)/(1+q^2)\nq-euler,2,(-q+q^2)/(1-q+2*q^2-q^3+q^4)\n"
    );
    let o = qeuler(&["table", "q-euler", "--max-n", "2", "--format", "latex"]);
    let body = stdout(&o);
    assert!(body.starts_with("\\begin{tabular}"));
    assert_eq!(
        body.lines()
            .filter(|l| l.starts_with(char::is_numeric))
            .count(),
        3
    );
    let o = qeuler(&["table", "genocchi", "--max-n", "8", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let vals: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["value"].as_str().unwrap())
        .collect();
    assert_eq!(
        vals,
        ["0/1", "1/1", "-1/1", "0/1", "1/1", "0/1", "-3/1", "0/1", "17/1"]
    );
}

#[test]
fn json_values_round_trip() {
    for (family, n, want) in [
        ("q-euler", "5", q_euler_number(5)),
        ("q-genocchi", "4", q_genocchi_number(4)),
    ] {
        let o = qeuler(&["num", family, n, "--format", "json"]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(ratfn_from_json(&v[0]["value"]).unwrap(), want);
        let rec = OutputRecord::from_json(&v[0]).unwrap();
        assert_eq!(rec.to_json(), v[0]);
    }
    let o = qeuler(&["num", "q-euler", "1", "--eval", "q=1/2", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rec = OutputRecord::from_json(&v[0]).unwrap();
    assert_eq!(rec.q, Some(rat(1, 2)));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["table", "q-genocchi", "--max-n", "6", "--format", "json"][..],
        &["poly", "q-euler", "4", "--format", "latex"],
        &[
            "oracle",
            "q-bernoulli",
            "3",
            "--q",
            "2/3",
            "--tol",
            "1/10000000000",
        ],
    ] {
        let a = qeuler(args);
        let b = qeuler(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), Some(0));
    }
}

#[test]
fn oracle_record() {
    let o = qeuler(&[
        "oracle",
        "q-genocchi",
        "1",
        "--x",
        "2",
        "--q",
        "1/2",
        "--tol",
        "1/1000000000000",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in [
        "family",
        "n",
        "x",
        "q",
        "lo",
        "hi",
        "closed_value",
        "contained",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["closed_value"], "1/4");
    assert_eq!(v["contained"], Value::Bool(true));
}

#[test]
fn polynomial_output() {
    let o = qeuler(&["poly", "euler", "2"]);
    assert_eq!(stdout(&o), "-x+x^2\n");
    let o = qeuler(&["poly", "q-genocchi", "1"]);
    assert_eq!(stdout(&o), "X\n");
    let o = qeuler(&["poly", "q-euler", "1", "--at", "x=1"]);
    assert_eq!(stdout(&o), "(1)/(1+q^2)\n");
    let o = qeuler(&["poly", "genocchi", "2", "--at", "x=-1"]);
    assert_eq!(stdout(&o), "-3\n");
}

#[test]
fn suite_with_config_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("suite.cfg");
    let report = dir.path().join("report.json");
    fs::write(
        &cfg,
        "# small run\nEQ17.n = 1..4\nPROP2.n = 1..2\nPROP2.m = 1,2\nTHM3A.n = 1..3\noracle.max_n = 3\noracle.tol_exp = 20\n",
    )
    .unwrap();
    let o = qeuler(&[
        "suite",
        "--config",
        cfg.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("PROP2        printed"));
    assert!(text.contains("THM3A closed form confirmed by the series: with [2]_q"));
    let doc: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["reports"].as_array().unwrap().len(), 4 + 2 * 4 + 2 * 3);
    let prop2 = doc["errata"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["id"] == "PROP2")
        .unwrap();
    assert_eq!(prop2["first_failure"]["n"], 1);
    assert_eq!(prop2["first_failure"]["m"], 1);
    assert_eq!(doc["oracle"]["thm3a_closed_form"], "with [2]_q");
}

#[test]
fn suite_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "EQ99.n = 1\n").unwrap();
    assert_eq!(
        qeuler(&["suite", "--config", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let missing = dir.path().join("absent.cfg");
    assert_eq!(
        qeuler(&["suite", "--config", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let empty = dir.path().join("empty.cfg");
    fs::write(&empty, "").unwrap();
    let o = qeuler(&["suite", "--config", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let o = qeuler(&[
        "table",
        "euler",
        "--max-n",
        "3",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(
        fs::read_to_string(&path).unwrap(),
        "family,n,value\neuler,0,1\neuler,1,-1/2\neuler,2,0\neuler,3,1/4\n"
    );
}
