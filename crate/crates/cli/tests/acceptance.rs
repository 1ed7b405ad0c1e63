//! Acceptance suite: nine criteria, each printed as one PASS/FAIL line.
//! Everything is driven through the release-style binary on the bundled
//! corpus; no criterion is skipped.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_frobforge"));
    c.env_remove("FROBFORGE_CACHE");
    c
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

struct Run {
    stdout: String,
    code: i32,
    elapsed: Duration,
}

fn run(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = bin().args(args).output().expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        code: out.status.code().unwrap_or(-1),
        elapsed: start.elapsed(),
    }
}

fn json(r: &Run) -> Value {
    serde_json::from_str(&r.stdout).expect("JSON report")
}

fn corpus_files() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "frob"))
        .collect();
    v.sort();
    v
}

/// Every module report of the corpus as (entry, module name, ring report, module report).
fn modules(corpus: &Value) -> Vec<(String, String, Value, Value)> {
    let mut out = Vec::new();
    for e in corpus["result"]["entries"].as_array().unwrap() {
        for (n, m) in e["modules"].as_object().unwrap() {
            let ring = e["rings"][m["ring"].as_str().unwrap()].clone();
            out.push((e["name"].as_str().unwrap().to_string(), n.clone(), ring, m.clone()));
        }
    }
    out
}

fn is_finite(m: &Value) -> bool {
    m["pd"]["pd"] == "finite"
}

fn criterion_1() -> (bool, String) {
    let mut total = Duration::ZERO;
    let mut descriptions = Vec::new();
    let mut mismatches = Vec::new();
    for f in corpus_files() {
        let file = f.to_str().unwrap();
        let k = run(&["kunz", file, "--e", "1,2,3"]);
        total += k.elapsed;
        let pd = run(&["pd", file, "--module", "K"]);
        let d = run(&["dim", file]);
        if k.code != 0 || pd.code != 0 || d.code != 0 {
            mismatches.push(format!("{file}: exit codes {} {} {}", k.code, pd.code, d.code));
            continue;
        }
        let kz = json(&k);
        let regular = kz["result"]["verdict"] == "regular";
        let finite = json(&pd)["result"]["pd"] == "finite";
        let dim = json(&d)["result"]["ring_krull_dimension"].as_u64().unwrap();
        let window_ok = kz["result"]["max_i"].as_u64() == Some(dim + 1)
            && kz["result"]["evidence"].as_array().unwrap().iter().map(|t| t["e"].as_u64().unwrap()).eq([1, 2, 3]);
        if regular != finite || !window_ok {
            mismatches.push(format!("{file}: kunz regular={regular}, pd(k) finite={finite}"));
        }
        descriptions.push(json(&d)["result"]["description"].as_str().unwrap().to_string());
    }
    let required = [
        "F_2[x]", "F_3[x,y]", "F_2[x,y]", "F_2[x]/(x^2)", "F_2[x,y]/(x*y)", "F_2[x,y]/(x^3 + y^2)",
        "F_2[x,y]/(x*y, x^2)", "F_3[x,y]/(x^2 + y^2)", "F_2[x,y]/(y^2, x^2)",
    ];
    let missing: Vec<&str> = required.iter().copied().filter(|r| !descriptions.iter().any(|d| d == r)).collect();
    let ok = mismatches.is_empty() && missing.is_empty() && descriptions.len() >= 8 && total < Duration::from_secs(60);
    (ok, format!("{} rings, kunz time {:.2?}, mismatches {:?}, missing {:?}", descriptions.len(), total, mismatches, missing))
}

fn criterion_2(corpus: &Value) -> (bool, String) {
    let finite: Vec<_> = modules(corpus).into_iter().filter(|(_, _, _, m)| is_finite(m)).collect();
    let mut bad = Vec::new();
    for (e, n, _, m) in &finite {
        let a = &m["theorem_a"];
        let es: Vec<u64> = a["checks"].as_array().map_or(vec![], |c| c.iter().map(|x| x["e"].as_u64().unwrap()).collect());
        let each = a["checks"].as_array().is_some_and(|c| {
            c.iter().all(|x| x["tor_vanishes"] == true && x["betti_preserved"] == true && x["twisted_minimal"] == true)
        });
        if a["holds"] != true || es != [1, 2, 3] || !each {
            bad.push(format!("{e}/{n}"));
        }
    }
    let koszul_quotients = finite.iter().filter(|(_, n, _, m)| n != "K" && n != "F" && m["pd"]["value"].as_u64() >= Some(1)).count();
    let k_regular = finite.iter().filter(|(_, n, _, _)| n == "K").count();
    let ok = bad.is_empty() && finite.len() >= 6 && koszul_quotients >= 1 && k_regular >= 1;
    (ok, format!("{} finite-pd modules ({k_regular} residue fields, {koszul_quotients} quotients), failures {bad:?}", finite.len()))
}

fn criterion_3(corpus: &Value) -> (bool, String) {
    let infinite: Vec<_> = modules(corpus).into_iter().filter(|(_, _, _, m)| m["pd"]["pd"] == "infinite").collect();
    let mut bad = Vec::new();
    for (e, n, ring, m) in &infinite {
        let bound = ring["krull_dimension"].as_u64().unwrap() + 1;
        let tables = m["theorem_b"]["tables"].as_array().cloned().unwrap_or_default();
        let es: Vec<u64> = tables.iter().map(|t| t["e"].as_u64().unwrap()).collect();
        let witnessed = tables.iter().all(|t| t["first_nonvanishing"].as_u64().is_some_and(|i| i >= 1 && i <= bound));
        if es != [1, 2, 3] || !witnessed {
            bad.push(format!("{e}/{n}"));
        }
    }
    let named = ["dual_numbers/K", "node/Rx"];
    let have_named = named.iter().all(|x| infinite.iter().any(|(e, n, _, _)| format!("{e}/{n}") == *x));
    let ok = bad.is_empty() && infinite.len() >= 5 && have_named;
    (ok, format!("{} infinite-pd modules, named present {have_named}, failures {bad:?}", infinite.len()))
}

fn criterion_4(corpus: &Value) -> (bool, String) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (e, n, ring, m) in modules(corpus).into_iter().filter(|(_, _, _, m)| is_finite(m)) {
        let v = &m["vanishing_above_depth"];
        let from = ring["depth"].as_u64().unwrap() + 1;
        let to = ring["krull_dimension"].as_u64().unwrap() + 2;
        let rows = v["rows"].as_array().cloned().unwrap_or_default();
        let range_ok = rows.iter().map(|r| r["i"].as_u64().unwrap()).eq(from..=to);
        if v["holds"] != true || !range_ok || !rows.iter().all(|r| r["is_zero"] == true) {
            bad.push(format!("{e}/{n}"));
        }
        checked += 1;
    }
    (bad.is_empty() && checked > 0, format!("{checked} modules checked, failures {bad:?}"))
}

fn criterion_5() -> (bool, String) {
    let r = run(&["verify", "prop-acyclicity", "--random", "50", "--seed", "2024"]);
    let v = json(&r);
    let res = &v["result"];
    let ok = r.code == 0
        && res["random"] == 50
        && res["counterexamples"] == 0
        && res["entries"].as_array().is_some_and(|e| e.len() == 50)
        && r.elapsed < Duration::from_secs(120);
    (ok, format!("50 complexes, {} met both hypotheses, 0 counterexamples, {:.2?}", res["hypotheses_held"], r.elapsed))
}

fn criterion_6(corpus: &Value) -> (bool, String) {
    let mut pairs = 0;
    let mut bad = Vec::new();
    for (e, n, ring, m) in modules(corpus) {
        if ring["frobenius_generators"].as_u64().unwrap() > 9 {
            continue;
        }
        let c = &m["crosscheck"];
        let rows_ok = c["rows"].as_array().is_some_and(|r| !r.is_empty() && r.iter().all(|x| x["twisted"] == x["pushforward"]));
        if c["passed"] != true || c["e"] != 1 || !rows_ok {
            bad.push(format!("{e}/{n}"));
        }
        pairs += 1;
    }
    (bad.is_empty() && pairs >= 10, format!("{pairs} (M, e=1) pairs, failures {bad:?}"))
}

fn criterion_7(corpus: &Value) -> (bool, String) {
    let entries = corpus["result"]["entries"].as_array().unwrap();
    let get = |entry: &str, module: &str| -> Value {
        entries.iter().find(|e| e["name"] == entry).map(|e| e["modules"][module]["ext_frobenius"].clone()).unwrap_or(Value::Null)
    };
    let vanish = |x: &Value| {
        x["e"] == 1
            && x["rows"].as_array().is_some_and(|r| r.iter().map(|y| y["i"].as_u64().unwrap()).eq(1..=3) && r.iter().all(|y| y["is_zero"] == true))
    };
    let dual_r = get("dual_numbers", "F");
    let square_r = get("square", "F");
    let dual_k = get("dual_numbers", "K");
    let k_nonzero = dual_k["rows"][0]["i"] == 1 && dual_k["rows"][0]["is_zero"] == false;
    let ok = vanish(&dual_r) && vanish(&square_r) && k_nonzero;
    (ok, format!("F_2[x]/(x^2) R vanish {}, F_2[x,y]/(x^2,y^2) R vanish {}, Ext^1(F_*R, k) != 0 {k_nonzero}", vanish(&dual_r), vanish(&square_r)))
}

fn criterion_8(corpus: &Value) -> (bool, String) {
    let mut bad = Vec::new();
    let all = modules(corpus);
    for (e, n, _, m) in &all {
        let d = &m["depth"];
        let b = &m["betti"];
        let ranks_match = b["ranks"].as_array().zip(b["tor_k"].as_array()).is_some_and(|(r, t)| r == t);
        if d["by_ext"] != d["by_koszul"] || d["by_ext"].is_null() || !ranks_match {
            bad.push(format!("{e}/{n}"));
        }
    }
    (bad.is_empty() && !all.is_empty(), format!("{} modules, failures {bad:?}", all.len()))
}

fn criterion_9() -> (bool, String) {
    let dir = corpus_dir();
    let dir = dir.to_str().unwrap();
    let uncached_a = run(&["corpus", "run", dir, "--seed", "7"]);
    let uncached_b = run(&["corpus", "run", dir, "--seed", "7"]);
    let parallel = run(&["corpus", "run", dir, "--seed", "7", "--parallel"]);
    let mut cold = Duration::MAX;
    let mut warm = Duration::MAX;
    let mut identical = uncached_a.stdout == uncached_b.stdout && uncached_a.stdout == parallel.stdout;
    for _ in 0..3 {
        let cache = tempfile::tempdir().unwrap();
        let c = cache.path().to_str().unwrap();
        let first = run(&["corpus", "run", dir, "--seed", "7", "--cache-dir", c]);
        let second = run(&["corpus", "run", dir, "--seed", "7", "--cache-dir", c]);
        identical &= first.stdout == uncached_a.stdout && second.stdout == uncached_a.stdout;
        cold = cold.min(first.elapsed);
        warm = warm.min(second.elapsed);
    }
    let ok = identical && uncached_a.code == 0 && warm <= cold;
    (ok, format!("byte-identical {identical}, cold {cold:.2?}, warm {warm:.2?}"))
}

#[test]
fn acceptance() {
    let corpus_run = run(&["corpus", "run", corpus_dir().to_str().unwrap()]);
    assert_eq!(corpus_run.code, 0, "corpus run failed:\n{}", corpus_run.stdout);
    let corpus = json(&corpus_run);
    let results = [
        ("1 Kunz concordance", criterion_1()),
        ("2 finite-pd twist suite", criterion_2(&corpus)),
        ("3 infinite-pd contrapositive", criterion_3(&corpus)),
        ("4 vanishing above depth", criterion_4(&corpus)),
        ("5 acyclicity harness", criterion_5()),
        ("6 dual pipeline oracle", criterion_6(&corpus)),
        ("7 Ext/Frobenius dual", criterion_7(&corpus)),
        ("8 engine self-consistency", criterion_8(&corpus)),
        ("9 determinism", criterion_9()),
    ];
    for (name, (ok, detail)) in &results {
        println!("criterion {name}: {} ({detail})", if *ok { "PASS" } else { "FAIL" });
    }
    let failed: Vec<&str> = results.iter().filter(|r| !r.1 .0).map(|r| r.0).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
