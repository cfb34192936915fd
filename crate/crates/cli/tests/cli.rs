use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn stein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stein")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

/// Zeroes runtimes so two runs can be compared byte for byte.
fn normalized(out: &Output) -> String {
    let mut v = json(out);
    for c in v["checks"].as_array_mut().unwrap() {
        c["runtime_ms"] = Value::from(0);
    }
    v.to_string()
}

#[test]
fn lattice_examples() {
    for (g, subgroups, frattini) in [("cyclic:8", 4, 4), ("elem:2,2", 5, 1), ("quaternion:8", 6, 2)] {
        let out = stein(&["lattice", "--group", g]);
        assert_eq!(out.status.code(), Some(0));
        let r = json(&out);
        for key in ["schema_version", "suite", "params", "checks", "status"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
        assert_eq!(r["data"]["subgroups"], subgroups);
        assert_eq!(r["data"]["frattini"]["order"], frattini);
    }
}

#[test]
fn steinberg_suite() {
    let out = stein(&["verify", "steinberg", "--n", "2", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let rank = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "rank[borel*sign]").unwrap();
    assert_eq!(rank["actual"], 2);
}

#[test]
fn strata_suite() {
    let out = stein(&["verify", "strata", "--n", "2", "--r", "1", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for prefix in ["projection_lemma", "boxed", "corollary_iso"] {
        assert!(names.iter().any(|n| n.starts_with(prefix)), "{prefix}");
    }
}

#[test]
fn series_suite_and_csv() {
    let out = stein(&["verify", "series", "--group", "cyclic:2", "--n", "1", "--max-degree", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["data"]["phi_rhs"], serde_json::json!(vec![2; 13]));
    assert_eq!(r["data"]["phi_lhs"]["total"], serde_json::json!(vec![2; 13]));

    let out = stein(&["series", "--group", "elem:2,2", "--n", "2", "--max-degree", "8", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("table,key,degree,value\n"));
    let total = |table: &str| -> Vec<String> {
        text.lines().filter(|l| l.starts_with(&format!("{table},total,"))).map(|l| l.rsplit(',').next().unwrap().to_string()).collect()
    };
    assert_eq!(total("phi_lhs"), total("phi_rhs"));
    assert_eq!(total("phi_lhs").len(), 9);
}

#[test]
fn trivial_group_series_is_m_series() {
    let out = stein(&["series", "--group", "trivial", "--n", "2", "--max-degree", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let expect: Vec<u64> = (0..=9).map(|d| (d + 2) / 3).collect();
    assert_eq!(r["data"]["phi_rhs"], serde_json::json!(expect));
    assert_eq!(r["data"]["phi_lhs"]["total"], serde_json::json!(expect));
}

#[test]
fn other_suites_pass() {
    for args in [
        vec!["verify", "frattini", "--group", "quaternion:8"],
        vec!["verify", "homs", "--p", "3"],
        vec!["verify", "gsets", "--group", "cyclic:3", "--max-points", "6"],
    ] {
        let out = stein(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(json(&out)["status"], "pass");
    }
}

#[test]
fn exit_code_two_on_bad_input() {
    assert_eq!(stein(&["lattice", "--group", "nope:3"]).status.code(), Some(2));
    assert_eq!(stein(&["verify", "steinberg", "--n", "2", "--p", "5"]).status.code(), Some(2));
    assert_eq!(stein(&["verify", "steinberg", "--n", "2", "--p", "4"]).status.code(), Some(2));
    assert_eq!(stein(&["verify", "frattini", "--group", "symmetric:3"]).status.code(), Some(2));
    assert_eq!(stein(&["verify", "series", "--max-degree", "40"]).status.code(), Some(2));
    let allowed = stein(&["verify", "steinberg", "--n", "2", "--p", "5", "--allow-large"]);
    assert_eq!(allowed.status.code(), Some(0));
}

#[test]
fn group_file_round_trip() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    // Z/4 with labels
    writeln!(f, "order 4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\nlabels\ne g g2 g3").unwrap();
    let spec = format!("@{}", f.path().display());
    let out = stein(&["lattice", "--group", &spec]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["data"]["subgroups"], 3);

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "order 2\n0 1\n0 1").unwrap();
    let spec = format!("@{}", bad.path().display());
    assert_eq!(stein(&["lattice", "--group", &spec]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "series", "--group", "elem:2,2", "--n", "1", "--max-degree", "6", "--seed", "7"];
    assert_eq!(normalized(&stein(&args)), normalized(&stein(&args)));
}

#[test]
fn strata_wider_than_tall() {
    let out = stein(&["verify", "strata", "--n", "2", "--r", "3", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let empty: Vec<&Value> = r["checks"].as_array().unwrap().iter().filter(|c| c["name"].as_str().unwrap().starts_with("empty_stratum")).collect();
    assert_eq!(empty.len(), 1);
    assert_eq!(r["status"], "pass");
}
