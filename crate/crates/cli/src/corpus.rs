//! Corpus runner: one `.frob` file per entry, optional `.expected.json`
//! golden values, reports sorted by entry name.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use frobforge_core::frobenius::{ext_frobenius, kunz_test, theorem_a_verify, theorem_b_verify, tor_crosscheck};
use frobforge_core::invariants::{acyclicity_lemma_check, depth_witness, ring_depth};
use frobforge_core::modcore::{free_resolution, pd_verdict, tor, Kdim, PdVerdict, PresentedModule, Ring};
use frobforge_core::{Error, Result as CoreResult};

use crate::cache::{cache_key, DiskCache};
use crate::commands::to_value;
use crate::config::SessionConfig;
use crate::dsl::parse_program;
use crate::resolve::{resolve, Declarations};
use crate::{CliError, Severity};

/// Largest pushforward used by the per-module Tor cross-check.
pub const CROSSCHECK_MAX_GENERATORS: u64 = 9;

/// A golden value with its provenance.
#[derive(Clone, Debug, Deserialize)]
pub struct GoldenCheck {
    /// JSON pointer into the entry report.
    pub pointer: String,
    pub value: Value,
    pub provenance: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Expected {
    pub checks: Vec<GoldenCheck>,
}

/// Records a failed check without aborting the entry.
struct Log {
    errors: Vec<Value>,
    severity: Severity,
}

impl Log {
    fn run<T>(&mut self, check: &str, f: impl FnOnce() -> CoreResult<T>) -> Option<T> {
        match f() {
            Ok(v) => Some(v),
            Err(e) => {
                self.severity = self.severity.max(Severity::of(&e));
                self.errors.push(json!({"check": check, "message": e.to_string()}));
                None
            }
        }
    }
}

fn put(obj: &mut Map<String, Value>, key: &str, v: Option<Value>) {
    obj.insert(key.to_string(), v.unwrap_or(Value::Null));
}

/// Number of generators `p^n` of `F_* R`.
fn frobenius_generators(ring: &Ring) -> u64 {
    (ring.p() as u64).checked_pow(ring.nvars() as u32).unwrap_or(u64::MAX)
}

fn ring_report(log: &mut Log, name: &str, ring: &Ring, cfg: &SessionConfig) -> Value {
    let mut o = Map::new();
    o.insert("description".into(), json!(ring.describe()));
    o.insert("krull_dimension".into(), json!(ring.krull_dimension()));
    o.insert("frobenius_generators".into(), json!(frobenius_generators(ring)));
    put(&mut o, "depth", log.run(&format!("{name}/depth"), || ring_depth(ring).map(|d| json!(d))));
    let kunz = log.run(&format!("{name}/kunz"), || kunz_test(ring, &cfg.e_list));
    let k = PresentedModule::residue_field(ring.clone());
    let residue_pd = log.run(&format!("{name}/residue-pd"), || pd_verdict(&k));
    if let (Some(kz), Some(pd)) = (&kunz, &residue_pd) {
        let regular = kz.verdict == frobforge_core::frobenius::KunzVerdict::Regular;
        o.insert("kunz_concordant".into(), json!(regular == pd.is_finite()));
    }
    put(&mut o, "residue_pd", residue_pd.map(|p| to_value(&p)));
    put(&mut o, "kunz", kunz.map(|k| to_value(&k)));
    Value::Object(o)
}

fn module_report(log: &mut Log, name: &str, m: &PresentedModule, cfg: &SessionConfig) -> Value {
    let ring = m.ring();
    let dim = ring.krull_dimension();
    let mut o = Map::new();
    o.insert("ngens".into(), json!(m.ngens()));
    let pd = log.run(&format!("{name}/pd"), || pd_verdict(m));
    put(&mut o, "pd", pd.map(|p| to_value(&p)));

    // Ranks of the minimal resolution against dim Tor_i(k, M) from a resolution of k.
    let top = dim + 2;
    let betti = log.run(&format!("{name}/betti"), || {
        let ranks = free_resolution(m, top)?.ranks().to_vec();
        let k = PresentedModule::residue_field(ring.clone());
        let tor_k = (0..=top).map(|i| tor(&k, m, i).map(|t| t.kdim)).collect::<CoreResult<Vec<_>>>()?;
        let agree = ranks.iter().zip(&tor_k).all(|(&r, t)| *t == Kdim::Finite(r as u64));
        if !agree {
            return Err(Error::Verification(format!("ranks {ranks:?} but dim Tor(k, M) = {tor_k:?}")));
        }
        Ok(json!({"ranks": ranks, "tor_k": to_value(&tor_k), "agree": agree}))
    });
    put(&mut o, "betti", betti);

    let depth = log.run(&format!("{name}/depth"), || depth_witness(m));
    put(&mut o, "depth", depth.map(|w| json!({"by_ext": to_value(&w.by_ext), "by_koszul": to_value(&w.by_koszul), "agree": w.by_ext == w.by_koszul})));

    let finite = pd.is_some_and(|p| p.is_finite() && p != PdVerdict::ZeroModule);
    if finite {
        let above = log.run(&format!("{name}/vanishing-above-depth"), || {
            let depth_r = ring_depth(ring)?;
            let k = PresentedModule::residue_field(ring.clone());
            let rows = (depth_r + 1..=dim + 2)
                .map(|i| tor(&k, m, i).map(|t| json!({"i": i, "is_zero": t.is_zero})))
                .collect::<CoreResult<Vec<_>>>()?;
            let holds = rows.iter().all(|r| r["is_zero"] == json!(true));
            if !holds {
                return Err(Error::Verification(format!("Tor(k, M) above depth R: {rows:?}")));
            }
            Ok(json!({"from": depth_r + 1, "to": dim + 2, "rows": rows, "holds": holds}))
        });
        put(&mut o, "vanishing_above_depth", above);
        let a = log.run(&format!("{name}/theorem-a"), || theorem_a_verify(m, &cfg.e_list));
        put(&mut o, "theorem_a", a.map(|r| to_value(&r)));
    }
    if pd.is_some() {
        let b = log.run(&format!("{name}/theorem-b"), || theorem_b_verify(m, &cfg.e_list));
        put(&mut o, "theorem_b", b.map(|r| to_value(&r)));
    }

    if frobenius_generators(ring) <= CROSSCHECK_MAX_GENERATORS.min(cfg.pushforward_bound) {
        let c = log.run(&format!("{name}/crosscheck"), || tor_crosscheck(m, 1, dim + 1, cfg.pushforward_bound));
        put(&mut o, "crosscheck", c.map(|r| to_value(&r)));
        if dim == 0 {
            let x = log.run(&format!("{name}/ext-frobenius"), || ext_frobenius(m, 1, 3, cfg.pushforward_bound));
            put(&mut o, "ext_frobenius", x.map(|r| to_value(&r)));
        }
    }
    Value::Object(o)
}

/// Full report for one resolved entry.
pub fn entry_report(name: &str, d: &Declarations, cfg: &SessionConfig) -> (Value, Severity) {
    let mut log = Log { errors: Vec::new(), severity: Severity::Ok };
    let mut rings = Map::new();
    for (n, r) in &d.rings {
        rings.insert(n.clone(), ring_report(&mut log, n, r, cfg));
    }
    let mut modules = Map::new();
    for (n, rn, m) in &d.modules {
        let mut v = module_report(&mut log, n, m, cfg);
        v.as_object_mut().expect("object").insert("ring".into(), json!(rn));
        modules.insert(n.clone(), v);
    }
    let mut complexes = Map::new();
    for (n, _, c) in &d.complexes {
        let rep = log.run(&format!("{n}/acyclicity"), || acyclicity_lemma_check(&c.to_module_complex()));
        complexes.insert(n.clone(), rep.map(|r| to_value(&r)).unwrap_or(Value::Null));
    }
    let report = json!({"name": name, "status": log.severity.label(), "errors": log.errors,
                        "rings": rings, "modules": modules, "complexes": complexes});
    (report, log.severity)
}

fn golden(report: &Value, expected: &Expected) -> Value {
    let mismatches: Vec<Value> = expected
        .checks
        .iter()
        .filter_map(|c| {
            let actual = report.pointer(&c.pointer).cloned().unwrap_or(Value::Null);
            (actual != c.value).then(|| json!({"pointer": c.pointer, "expected": c.value, "actual": actual, "provenance": c.provenance}))
        })
        .collect();
    json!({"checked": expected.checks.len(), "mismatches": mismatches})
}

fn run_entry(path: &Path, cfg: &SessionConfig, cache: Option<&DiskCache>) -> (Value, Severity) {
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("?").to_string();
    let fail = |sev: Severity, msg: String| {
        (json!({"name": name, "status": sev.label(), "errors": [{"check": "load", "message": msg}]}), sev)
    };
    let src = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => return fail(Severity::Usage, e.to_string()),
    };
    let prog = match parse_program(&src) {
        Ok(p) => p,
        Err(e) => return fail(Severity::Usage, format!("{}: {e}", path.display())),
    };
    let decls = match resolve(&prog) {
        Ok(d) => d,
        Err(e) => return fail(Severity::Usage, format!("{}: {e}", path.display())),
    };
    let e_list = format!("{:?}", cfg.e_list);
    let bound = cfg.pushforward_bound.to_string();
    let key = cache_key(&["corpus-entry", &name, &prog.to_string(), &e_list, &bound]);
    // Only clean reports are stored, so a hit is always a passing entry.
    let (mut report, mut severity) = match cache.and_then(|c| c.load(&key)) {
        Some(v) => (v, Severity::Ok),
        None => {
            let (rep, sev) = entry_report(&name, &decls, cfg);
            if let (Some(c), Severity::Ok) = (cache, sev) {
                c.store(&key, &rep);
            }
            (rep, sev)
        }
    };
    let expected_path = path.with_extension("expected.json");
    if expected_path.exists() {
        let parsed = std::fs::read_to_string(&expected_path)
            .map_err(|e| e.to_string())
            .and_then(|t| serde_json::from_str::<Expected>(&t).map_err(|e| e.to_string()));
        let g = match parsed {
            Ok(exp) => golden(&report, &exp),
            Err(e) => json!({"error": e}),
        };
        if g.get("error").is_some() || g["mismatches"].as_array().is_some_and(|m| !m.is_empty()) {
            severity = severity.max(Severity::Verification);
            report["status"] = json!(severity.label());
        }
        report["golden"] = g;
    }
    (report, severity)
}

/// `.frob` files of a directory sorted by name.
pub fn entries(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "frob"))
        .collect();
    out.sort();
    Ok(out)
}

/// Runs every entry; output order is by entry name whether or not the run
/// is parallel.
pub fn run_corpus(dir: &Path, cfg: &SessionConfig, cache: Option<&DiskCache>) -> Result<(Value, Severity), CliError> {
    let paths = entries(dir)?;
    let results: Vec<(Value, Severity)> = if cfg.parallel {
        paths.par_iter().map(|p| run_entry(p, cfg, cache)).collect()
    } else {
        paths.iter().map(|p| run_entry(p, cfg, cache)).collect()
    };
    let severity = results.iter().map(|r| r.1).max().unwrap_or(Severity::Ok);
    let failed: Vec<&Value> = results.iter().filter(|r| r.1 != Severity::Ok).map(|r| &r.0["name"]).collect();
    let summary = json!({"entries": results.len(), "failed": failed, "e_list": cfg.e_list, "seed": cfg.seed});
    let entries: Vec<Value> = results.into_iter().map(|r| r.0).collect();
    Ok((json!({"summary": summary, "entries": entries}), severity))
}
