//! End-to-end tests of the `hitlab` binary: output formats and every exit code.

use std::io::Write;
use std::process::{Command, Output};

fn hitlab(args: &[&str]) -> Output {
    hitlab_env(args, &[])
}

fn hitlab_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hitlab"));
    cmd.args(args).env_remove("HITLAB_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON report")
}

fn edge_file(contents: &str) -> tempfile_path::TempPath {
    tempfile_path::TempPath::with_contents(contents)
}

/// Minimal self-deleting temp file, to avoid a dev-dependency for one use.
mod tempfile_path {
    use super::*;
    use std::path::PathBuf;
    use std::sync::atomic::{AtomicUsize, Ordering};

    pub struct TempPath(pub PathBuf);

    impl TempPath {
        pub fn with_contents(contents: &str) -> Self {
            static NEXT: AtomicUsize = AtomicUsize::new(0);
            let name = format!("hitlab-cli-{}-{}.txt", std::process::id(), NEXT.fetch_add(1, Ordering::Relaxed));
            let path = std::env::temp_dir().join(name);
            std::fs::File::create(&path)
                .and_then(|mut f| f.write_all(contents.as_bytes()))
                .expect("temp file");
            TempPath(path)
        }

        pub fn arg(&self) -> &str {
            self.0.to_str().unwrap()
        }
    }

    impl Drop for TempPath {
        fn drop(&mut self) {
            let _ = std::fs::remove_file(&self.0);
        }
    }
}

#[test]
fn hit_lollipop_reports_29() {
    let o = hitlab(&["hit", "--family", "lollipop:3,3", "--x", "0", "--y", "5", "--methods", "oracle,spanning", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["graph"]["n"], 6);
    assert_eq!(v["graph"]["m"], 6);
    assert_eq!(v["graph"]["family"], "lollipop:3,3");
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    for (r, method) in results.iter().zip(["oracle", "spanning"]) {
        assert_eq!(r["method"], method);
        assert_eq!(r["value"], "29/1");
        assert_eq!(r["kind"], "exact");
        assert_eq!(r["x_label"], "x_1");
        assert_eq!(r["y_label"], "y_3");
        assert!(r["bounds"].as_array().unwrap().is_empty());
    }
    assert_eq!(v["agreement"]["exact_ok"], true);
    assert!(v["agreement"]["float_max_rel_err"].is_null());
}

#[test]
fn floats_use_fifteen_significant_digits() {
    let o = hitlab(&["hit", "--family", "cycle:5", "--x", "0", "--y", "2", "--methods", "oracle,spectral", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("x,y,method,kind,value\n"));
    assert!(out.contains("0,2,oracle,exact,6/1\n"), "{out}");
    let spectral = out.lines().find(|l| l.contains("spectral")).unwrap();
    let value = spectral.rsplit(',').next().unwrap();
    let digits = value.chars().filter(char::is_ascii_digit).count();
    assert!(digits <= 15, "{value}");
    assert!((value.parse::<f64>().unwrap() - 6.0).abs() < 1e-9);
}

#[test]
fn tau_resist_commute() {
    let o = hitlab(&["tau", "--family", "complete:5", "--format", "json"]);
    assert_eq!(json(&o)["results"][0]["value"], "125");
    // unit-resistor cycle of 6: R(0,2) = 2 * 4 / 6
    let o = hitlab(&["resist", "--family", "cycle:6", "--x", "0", "--y", "2", "--format", "json"]);
    assert_eq!(json(&o)["results"][0]["value"], "4/3");
    let o = hitlab(&["commute", "--family", "cycle:6", "--x", "0", "--y", "2", "--format", "json"]);
    assert_eq!(json(&o)["results"][0]["value"], "16/1");
}

#[test]
fn edge_list_input() {
    let f = edge_file("# a square\n4 4\n0 1\n1 2\n2 3\n3 0\n");
    let o = hitlab(&["hit", "--input", f.arg(), "--x", "0", "--y", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert!(v["graph"].get("family").is_none());
    assert_eq!(v["results"][0]["value"], "4/1");
    assert_eq!(v["results"][0]["x_label"], "v0");
}

#[test]
fn all_pairs_is_sorted_and_complete() {
    let o = hitlab(&["all-pairs", "--family", "star:4", "--methods", "oracle", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let pairs: Vec<(u64, u64)> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["x"].as_u64().unwrap(), r["y"].as_u64().unwrap()))
        .collect();
    let mut sorted = pairs.clone();
    sorted.sort();
    assert_eq!(pairs, sorted);
    assert_eq!(pairs.len(), 16);
    // leaf to leaf on a star with 3 leaves: 1 + H(center, leaf) = 1 + 5
    let leaf_leaf = &v["results"][6]; // (1, 2)
    assert_eq!(leaf_leaf["value"], "6/1");
}

#[test]
fn invariants_command() {
    let o = hitlab(&["invariants", "--family", "complete:3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let values: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["value"].as_str().unwrap()).collect();
    // R(K_3, d) = 0; Z(K_3, d) = vol^2 tau = 36 * 3
    assert_eq!(values, ["0", "0", "108", "108"]);
    // P_3 weighted 2, 2, 2: R = 4
    let o = hitlab(&["invariants", "--family", "path:3", "--weights", "2,2,2", "--format", "json"]);
    assert_eq!(json(&o)["results"][0]["value"], "4");
}

#[test]
fn bounds_command() {
    let o = hitlab(&["bounds", "--family", "path:4", "--x", "2", "--y", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let bounds = v["results"][0]["bounds"].as_array().unwrap();
    let edge = bounds.iter().find(|b| b["kind"] == "edge").unwrap();
    assert_eq!(edge["bound"], "5");
    assert_eq!(edge["slack"], "0/1");
    assert_eq!(edge["satisfied"], true);
}

#[test]
fn verify_random_graph_passes_and_is_deterministic() {
    let args = ["verify", "--family", "random:n=7,seed=7", "--format", "json"];
    let a = hitlab(&args);
    let b = hitlab(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 9);
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn mc_is_seeded() {
    let args = ["mc", "--family", "lollipop:3,3", "--x", "0", "--y", "5", "--walks", "20000", "--seed", "3", "--format", "json"];
    let a = hitlab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, hitlab(&args).stdout);
    let r = &json(&a)["results"][0];
    assert_eq!(r["kind"], "mc");
    assert_eq!(r["walks"], 20000);
    let mean: f64 = r["value"].as_str().unwrap().parse().unwrap();
    let se: f64 = r["stderr"].as_str().unwrap().parse().unwrap();
    assert!((mean - 29.0).abs() <= 4.0 * se, "{mean} +/- {se}");
}

#[test]
fn exit_1_when_a_check_fails() {
    let o = hitlab(&["verify", "--family", "lollipop:3,3", "--float-tol", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL float_tolerance"));
}

#[test]
fn exit_2_on_input_errors() {
    let dup = edge_file("3 2\n0 1\n0 1\n");
    let lp = edge_file("2 1\n1 1\n");
    let disconnected = edge_file("4 2\n0 1\n2 3\n");
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["hit", "--input", dup.arg(), "--x", "0", "--y", "1"], "line 3"),
        (vec!["hit", "--input", lp.arg(), "--x", "0", "--y", "1"], "line 2"),
        (vec!["hit", "--input", disconnected.arg(), "--x", "0", "--y", "3"], "connected"),
        (vec!["hit", "--input", "/nonexistent/graph.txt", "--x", "0", "--y", "1"], "nonexistent"),
        (vec!["hit", "--family", "blob:3", "--x", "0", "--y", "1"], "blob"),
        (vec!["hit", "--family", "random:n=8", "--x", "0", "--y", "1"], "seed"),
        (vec!["hit", "--family", "path:4", "--x", "0", "--y", "9"], "out of range"),
        (vec!["hit", "--family", "path:4", "--x", "0"], "--y"),
        (vec!["hit", "--family", "path:4", "--x", "0", "--y", "1", "--methods", "magic"], "magic"),
        (vec!["hit", "--x", "0", "--y", "1"], "--family"),
        (vec!["hit", "--family", "path:3", "--input", "g.txt", "--x", "0", "--y", "1"], ""),
        (vec!["frobnicate"], ""),
        (vec!["invariants", "--family", "path:3", "--weights", "1,2"], ""),
    ];
    for (args, needle) in cases {
        let o = hitlab(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).contains(needle), "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty());
    }
    let o = hitlab_env(&["tau", "--family", "path:3"], &[("HITLAB_CAP", "many")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_3_on_cap_and_precedence() {
    let o = hitlab(&["hit", "--family", "path:20", "--x", "0", "--y", "19"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cap"));
    // the oracle alone never enumerates paths
    let o = hitlab(&["hit", "--family", "path:20", "--x", "0", "--y", "19", "--methods", "oracle", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["results"][0]["value"], "361/1");

    let args = ["hit", "--family", "path:6", "--x", "0", "--y", "5", "--methods", "spanning"];
    assert_eq!(hitlab_env(&args, &[("HITLAB_CAP", "5")]).status.code(), Some(3));
    assert_eq!(hitlab_env(&args, &[("HITLAB_CAP", "6")]).status.code(), Some(0));
    let mut with_flag = args.to_vec();
    with_flag.extend(["--cap", "6"]);
    assert_eq!(hitlab_env(&with_flag, &[("HITLAB_CAP", "5")]).status.code(), Some(0));
}

#[test]
fn help_and_version_exit_0() {
    let o = hitlab(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
    assert_eq!(hitlab(&["--version"]).status.code(), Some(0));
}
