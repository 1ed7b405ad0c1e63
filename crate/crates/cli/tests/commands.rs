//! End-to-end command behaviour: report shapes, exit codes, cache paths.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_frobforge"));
    c.env_remove("FROBFORGE_CACHE");
    c
}

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(format!("{name}.frob"))
}

fn run(cmd: &mut Command) -> (Value, i32, String) {
    let Output { stdout, stderr, status } = cmd.output().unwrap();
    let v = serde_json::from_slice(&stdout).unwrap_or(Value::Null);
    (v, status.code().unwrap(), String::from_utf8(stderr).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn kunz_on_the_plane_is_regular() {
    let (v, code, _) = run(bin().arg("kunz").arg(corpus("f2_plane")));
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "frobforge-report/1");
    assert_eq!(v["result"]["verdict"], "regular");
}

#[test]
fn pd_of_k_over_dual_numbers() {
    let (v, code, _) = run(bin().args(["pd", "--module", "K"]).arg(corpus("dual_numbers")));
    assert_eq!(code, 0);
    assert_eq!(v["result"], json!({"pd": "infinite", "witness_degree": 1}));
}

#[test]
fn theorem_b_consistent_on_corpus() {
    for name in ["dual_numbers", "node", "cusp", "f2_plane", "square"] {
        let (v, code, _) = run(bin().args(["verify", "thmB", "--e", "1,2,3"]).arg(corpus(name)));
        assert_eq!(code, 0, "{name}");
        assert_eq!(v["result"]["consistent"], true);
    }
}

#[test]
fn every_command_runs_on_the_node() {
    let file = corpus("node");
    for args in [
        vec!["gb"], vec!["dim"], vec!["depth"], vec!["betti"], vec!["pd"], vec!["bass"], vec!["exnumbers"],
        vec!["tor", "--module", "Rx", "--with", "Rxy"], vec!["ext", "--module", "Rx"], vec!["frobtor", "--e", "1,2"],
        vec!["kunz"], vec!["pushforward", "--e", "1"], vec!["crosscheck", "--e", "1"], vec!["verify", "thmA"],
        vec!["verify", "cor-ext", "--e", "1", "--imax", "1"], vec!["verify", "prop-acyclicity"],
    ] {
        let (v, code, err) = run(bin().args(&args).arg(&file));
        assert_eq!(code, 0, "{args:?}: {err}");
        assert_eq!(v["status"], "ok", "{args:?}");
    }
}

#[test]
fn tor_of_node_modules() {
    // Over xy = 0: R/(x) ⊗ R/(x) = k[y], Tor_1 = (x)/(x^2), and Tor_2 = 0.
    let (v, _, _) = run(bin().args(["tor", "--module", "Rx", "--with", "Rx", "--imax", "2"]).arg(corpus("node")));
    let dims: Vec<&Value> = v["result"]["rows"].as_array().unwrap().iter().map(|r| &r["kdim"]).collect();
    assert_eq!(dims, [&json!("infinite"), &json!(1), &json!(0)]);
    let (v, _, _) = run(bin().args(["tor", "--module", "K", "--imax", "2"]).arg(corpus("node")));
    let dims: Vec<&Value> = v["result"]["rows"].as_array().unwrap().iter().map(|r| &r["kdim"]).collect();
    assert_eq!(dims, [&json!(1), &json!(2), &json!(2)]);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.frob", "ring S = char 4 vars [x] ideal ()\n");
    let (v, code, err) = run(bin().arg("gb").arg(&bad));
    assert_eq!(code, 2);
    assert_eq!(v["status"], "usage-error");
    assert!(err.contains("1:1") && err.contains("4 is not prime"), "{err}");
    let syntax = write(dir.path(), "syntax.frob", "ring R = char 2 vars [x] ideal (x)\nmodule M over R = cokr [[x]]\n");
    let (_, code, err) = run(bin().arg("pd").arg(&syntax));
    assert_eq!(code, 2);
    assert!(err.contains(":2:19"), "{err}");
    let (_, code, _) = run(bin().args(["pd", "--module", "Nope"]).arg(corpus("node")));
    assert_eq!(code, 2);
    let (_, code, _) = run(bin().args(["kunz", "--e", "0"]).arg(corpus("node")));
    assert_eq!(code, 2);
    let (_, code, _) = run(bin().args(["frobnicate"]));
    assert_eq!(code, 2);
}

#[test]
fn resource_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "big.frob", "ring R = char 3 vars [x, y, z] ideal ()\n");
    let (v, code, _) = run(bin().args(["pushforward", "--e", "2"]).arg(&f));
    assert_eq!(code, 3);
    assert_eq!(v["status"], "resource-error");
}

#[test]
fn golden_mismatch_is_a_verification_failure() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(corpus("dual_numbers"), dir.path().join("dual.frob")).unwrap();
    let wrong = json!({"entry": "dual", "checks": [
        {"pointer": "/rings/R/kunz/verdict", "value": "regular", "provenance": "deliberately wrong"}]});
    write(dir.path(), "dual.expected.json", &wrong.to_string());
    let (v, code, _) = run(bin().args(["corpus", "run"]).arg(dir.path()));
    assert_eq!(code, 1);
    let entry = &v["result"]["entries"][0];
    assert_eq!(entry["status"], "verification-failure");
    assert_eq!(entry["golden"]["mismatches"][0]["actual"], "not-regular");
}

#[test]
fn gb_cache_hit_and_corrupt_entry() {
    let cache = tempfile::tempdir().unwrap();
    let file = corpus("fat_line");
    let first = bin().arg("gb").arg(&file).env("FROBFORGE_CACHE", cache.path()).output().unwrap();
    let second = bin().arg("gb").arg(&file).env("FROBFORGE_CACHE", cache.path()).output().unwrap();
    assert_eq!(first.stdout, second.stdout);
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["result"]["basis"], json!(["x*y", "x^2"]));

    let entries: Vec<PathBuf> = walk(cache.path());
    assert_eq!(entries.len(), 1);
    let text = std::fs::read_to_string(&entries[0]).unwrap();
    std::fs::write(&entries[0], text.replace("x*y", "x*y^2")).unwrap();
    let third = bin().arg("gb").arg(&file).arg("--cache-dir").arg(cache.path()).output().unwrap();
    assert_eq!(third.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&third.stderr).contains("warning: discarding corrupt cache entry"));
    assert_eq!(third.stdout, first.stdout);
}

fn walk(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out
}

#[test]
fn config_file_and_table_format() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "session.conf", "e_list = 1\nformat = table\nmax_i = 2\n");
    let out = bin().arg("--config").arg(&cfg).arg("frobtor").arg(corpus("dual_numbers")).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("result.tables[0].e: 1"), "{text}");
    assert!(text.contains("result.max_i: 2"));
    assert!(!text.contains("tables[1]"));
}

#[test]
fn betti_report_is_cached_identically() {
    let cache = tempfile::tempdir().unwrap();
    let args = ["betti", "--module", "K", "--imax", "3"];
    let a = bin().args(args).arg(corpus("square")).arg("--cache-dir").arg(cache.path()).output().unwrap();
    let b = bin().args(args).arg(corpus("square")).arg("--cache-dir").arg(cache.path()).output().unwrap();
    let c = bin().args(args).arg(corpus("square")).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["betti"], json!([1, 2, 3, 4]));
}
