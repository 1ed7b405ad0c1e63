//! Single-file commands. Each returns the `result` part of a report.

use serde::Serialize;
use serde_json::{json, Value};

use frobforge_core::frobenius::{
    ext_frobenius, kunz_test, pushforward, theorem_a_verify, theorem_b_verify, tor_crosscheck, tor_frobenius,
};
use frobforge_core::groebner::{gb_cache, GroebnerBasis};
use frobforge_core::invariants::{
    acyclicity_lemma_check, bass_numbers, depth_witness, enochs_xu_numbers, random_complex, ring_depth,
};
use frobforge_core::modcore::{betti, ext, free_resolution, pd_verdict, tor, PresentedModule, Ring};
use frobforge_core::arith::parse_polynomial;

use crate::cache::{cache_key, cached, DiskCache};
use crate::config::SessionConfig;
use crate::resolve::Declarations;
use crate::CliError;

/// Names picked on the command line; `None` means the first declared one.
#[derive(Clone, Debug, Default)]
pub struct Target {
    pub ring: Option<String>,
    pub module: Option<String>,
    pub with: Option<String>,
    pub complex: Option<String>,
}

pub(crate) fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn pick_ring<'a>(d: &'a Declarations, t: &Target) -> Result<(&'a str, &'a Ring), CliError> {
    if let Some(name) = &t.ring {
        let (n, r) = d.rings.iter().find(|(n, _)| n == name).ok_or_else(|| CliError::Usage(format!("unknown ring '{name}'")))?;
        return Ok((n.as_str(), r));
    }
    if t.module.is_some() {
        let (_, ring_name, _) = pick_module(d, t)?;
        return Ok(d.rings.iter().find(|(n, _)| n == ring_name).map(|(n, r)| (n.as_str(), r)).expect("resolved"));
    }
    d.rings.first().map(|(n, r)| (n.as_str(), r)).ok_or_else(|| CliError::Usage("no ring declared".into()))
}

fn pick_module<'a>(d: &'a Declarations, t: &Target) -> Result<(&'a str, &'a str, &'a PresentedModule), CliError> {
    let found = match &t.module {
        Some(name) => d.modules.iter().find(|(n, _, _)| n == name),
        None => d.modules.first(),
    };
    found
        .map(|(n, r, m)| (n.as_str(), r.as_str(), m))
        .ok_or_else(|| CliError::Usage(t.module.as_ref().map_or("no module declared".into(), |n| format!("unknown module '{n}'"))))
}

/// The second module of Tor/Ext; the residue field by default.
fn pick_with(d: &Declarations, t: &Target, m: &PresentedModule) -> Result<(String, PresentedModule), CliError> {
    match &t.with {
        Some(name) => {
            let n = d.module(name).ok_or_else(|| CliError::Usage(format!("unknown module '{name}'")))?;
            if **n.ring() != **m.ring() {
                return Err(CliError::Usage(format!("'{name}' lives over a different ring")));
            }
            Ok((name.clone(), n.clone()))
        }
        None => Ok(("k".into(), PresentedModule::residue_field(m.ring().clone()))),
    }
}

fn max_i(cfg: &SessionConfig, ring: &Ring) -> usize {
    cfg.max_i.unwrap_or(ring.krull_dimension() + 1)
}

/// Reduced Gröbner basis of the defining ideal. Cached bases are validated
/// and seeded into the engine memo.
pub fn gb(d: &Declarations, t: &Target, cache: Option<&DiskCache>) -> Result<Value, CliError> {
    let (name, ring) = pick_ring(d, t)?;
    let key = cache_key(&["gb", ring.ideal().content_key().as_str()]);
    let poly = ring.poly();
    let v = cached(cache, &key, || -> Result<Value, CliError> {
        let basis: Vec<String> = ring.gb().elements().iter().map(|g| poly.display(g)).collect();
        Ok(json!({"ring": name, "description": ring.describe(), "basis": basis}))
    })?;
    let elements = v["basis"]
        .as_array()
        .and_then(|a| a.iter().map(|s| s.as_str().and_then(|s| parse_polynomial(poly, s).ok())).collect::<Option<Vec<_>>>());
    if let Some(elements) = elements {
        let gb = GroebnerBasis::from_reduced(ring.poly_arc().clone(), elements);
        if gb.validate().is_ok() && gb.elements() == ring.gb().elements() {
            gb_cache().insert(ring.ideal().content_key(), gb);
        } else {
            return Err(CliError::Engine(frobforge_core::Error::Verification("cached basis disagrees with the engine".into())));
        }
    }
    Ok(v)
}

pub fn dim(d: &Declarations, t: &Target) -> Result<Value, CliError> {
    let (rname, ring) = pick_ring(d, t)?;
    let mut v = json!({"ring": rname, "description": ring.describe(), "ring_krull_dimension": ring.krull_dimension()});
    if t.module.is_some() || !d.modules.is_empty() {
        if let Ok((mname, _, m)) = pick_module(d, t) {
            if **m.ring() == **ring {
                v["module"] = json!(mname);
                v["krull_dimension"] = json!(m.krull_dimension()?);
                v["kdim"] = to_value(&m.kdim()?);
            }
        }
    }
    Ok(v)
}

pub fn depth(d: &Declarations, t: &Target) -> Result<Value, CliError> {
    let (name, _, m) = pick_module(d, t)?;
    let w = depth_witness(m)?;
    Ok(json!({"module": name, "depth": to_value(&w.by_ext), "by_ext": to_value(&w.by_ext),
              "by_koszul": to_value(&w.by_koszul), "ring_depth": ring_depth(m.ring())?}))
}

pub fn betti_cmd(d: &Declarations, t: &Target, cfg: &SessionConfig, cache: Option<&DiskCache>) -> Result<Value, CliError> {
    let (name, _, m) = pick_module(d, t)?;
    let n = max_i(cfg, m.ring());
    let key = cache_key(&["betti", m.content_key().as_str(), &n.to_string()]);
    cached(cache, &key, || {
        let table = betti(m, n)?;
        let res = free_resolution(m, n)?;
        let poly = m.ring().poly();
        let maps: Vec<String> = res.complex.maps().iter().map(|d| d.display(poly)).collect();
        Ok(json!({"module": name, "max_i": n, "betti": table.betti, "truncated": res.truncated, "differentials": maps}))
    })
}

pub fn pd(d: &Declarations, t: &Target) -> Result<Value, CliError> {
    let (_, _, m) = pick_module(d, t)?;
    Ok(to_value(&pd_verdict(m)?))
}

pub fn bass(d: &Declarations, t: &Target, cfg: &SessionConfig) -> Result<Value, CliError> {
    let (name, _, m) = pick_module(d, t)?;
    let n = max_i(cfg, m.ring());
    Ok(json!({"module": name, "bass": to_value(&bass_numbers(m, n)?)}))
}

pub fn exnumbers(d: &Declarations, t: &Target, cfg: &SessionConfig) -> Result<Value, CliError> {
    let (name, _, m) = pick_module(d, t)?;
    let n = max_i(cfg, m.ring());
    Ok(json!({"module": name, "enochs_xu": to_value(&enochs_xu_numbers(m, n)?)}))
}

/// `Tor_i(M, N)` for `0 <= i <= max_i`.
pub fn tor_cmd(d: &Declarations, t: &Target, cfg: &SessionConfig) -> Result<Value, CliError> {
    let (name, _, m) = pick_module(d, t)?;
    let (wname, n) = pick_with(d, t, m)?;
    let rows = (0..=max_i(cfg, m.ring()))
        .map(|i| tor(m, &n, i).map(|x| json!({"i": i, "is_zero": x.is_zero, "kdim": to_value(&x.kdim)})))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json!({"module": name, "with": wname, "rows": rows}))
}

/// `Ext^i(N, M)` for `0 <= i <= max_i`.
pub fn ext_cmd(d: &Declarations, t: &Target, cfg: &SessionConfig) -> Result<Value, CliError> {
    let (name, _, m) = pick_module(d, t)?;
    let (wname, n) = pick_with(d, t, m)?;
    let rows = (0..=max_i(cfg, m.ring()))
        .map(|i| ext(&n, m, i).map(|x| json!({"i": i, "is_zero": x.is_zero, "kdim": to_value(&x.kdim)})))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json!({"module": name, "from": wname, "rows": rows}))
}

pub fn frobtor(d: &Declarations, t: &Target, cfg: &SessionConfig) -> Result<Value, CliError> {
    let (name, _, m) = pick_module(d, t)?;
    let n = max_i(cfg, m.ring());
    let tables = cfg
        .e_list
        .iter()
        .map(|&e| tor_frobenius(m, e, n).map(|rows| json!({"e": e, "rows": to_value(&rows)})))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json!({"module": name, "max_i": n, "tables": tables}))
}

pub fn kunz(d: &Declarations, t: &Target, cfg: &SessionConfig) -> Result<Value, CliError> {
    let (_, ring) = pick_ring(d, t)?;
    Ok(to_value(&kunz_test(ring, &cfg.e_list)?))
}

pub fn pushforward_cmd(d: &Declarations, t: &Target, cfg: &SessionConfig) -> Result<Value, CliError> {
    let (name, ring) = pick_ring(d, t)?;
    let e = *cfg.e_list.first().expect("validated nonempty");
    let f = pushforward(ring, e, cfg.pushforward_bound)?;
    let poly = ring.poly();
    let mult: Vec<String> = f.multiplication.iter().map(|m| m.display(poly)).collect();
    Ok(json!({"ring": name, "e": e, "q": f.q, "ngens": f.ngens(), "basis": f.basis_labels(),
              "presentation": f.module.presentation().display(poly), "multiplication": mult,
              "kdim": to_value(&f.module.kdim()?)}))
}

pub fn crosscheck(d: &Declarations, t: &Target, cfg: &SessionConfig) -> Result<Value, CliError> {
    let (name, _, m) = pick_module(d, t)?;
    let n = max_i(cfg, m.ring());
    let reports = cfg
        .e_list
        .iter()
        .map(|&e| tor_crosscheck(m, e, n, cfg.pushforward_bound).map(|r| to_value(&r)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json!({"module": name, "reports": reports}))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verify {
    ThmA,
    ThmB,
    PropAcyclicity,
    CorExt,
}

/// Modules named by the target, or every declared module.
fn modules<'a>(d: &'a Declarations, t: &Target) -> Result<Vec<(&'a str, &'a PresentedModule)>, CliError> {
    if t.module.is_some() {
        let (n, _, m) = pick_module(d, t)?;
        return Ok(vec![(n, m)]);
    }
    Ok(d.modules.iter().map(|(n, _, m)| (n.as_str(), m)).collect())
}

pub fn verify(
    which: Verify,
    d: Option<&Declarations>,
    t: &Target,
    cfg: &SessionConfig,
    random: usize,
) -> Result<Value, CliError> {
    let empty = Declarations::default();
    let d = d.unwrap_or(&empty);
    let mut entries = Vec::new();
    match which {
        Verify::ThmA | Verify::ThmB | Verify::CorExt => {
            for (name, m) in modules(d, t)? {
                let v = match which {
                    Verify::ThmA => to_value(&theorem_a_verify(m, &cfg.e_list)?),
                    Verify::ThmB => to_value(&theorem_b_verify(m, &cfg.e_list)?),
                    _ => {
                        let n = cfg.max_i.unwrap_or(3);
                        let reps = cfg
                            .e_list
                            .iter()
                            .map(|&e| ext_frobenius(m, e, n, cfg.pushforward_bound).map(|r| to_value(&r)))
                            .collect::<Result<Vec<_>, _>>()?;
                        Value::Array(reps)
                    }
                };
                entries.push(json!({"module": name, "report": v}));
            }
        }
        Verify::PropAcyclicity => {
            for (name, _, c) in &d.complexes {
                if t.complex.as_ref().is_some_and(|n| n != name) {
                    continue;
                }
                let rep = acyclicity_lemma_check(&c.to_module_complex())?;
                entries.push(json!({"complex": name, "report": to_value(&rep)}));
            }
            let mut both = 0usize;
            for k in 0..random as u64 {
                let seed = cfg.seed.wrapping_add(k);
                let rep = acyclicity_lemma_check(&random_complex(seed)?)?;
                both += rep.hypotheses_hold as usize;
                entries.push(json!({"seed": seed, "hypotheses_hold": rep.hypotheses_hold,
                                    "conclusion_holds": rep.conclusion_holds}));
            }
            // A counterexample aborts above with a verification error.
            return Ok(json!({"check": "prop-acyclicity", "entries": entries, "random": random,
                             "hypotheses_held": both, "counterexamples": 0, "consistent": true}));
        }
    }
    Ok(json!({"check": verify_name(which), "entries": entries, "consistent": true}))
}

pub fn verify_name(v: Verify) -> &'static str {
    match v {
        Verify::ThmA => "thmA",
        Verify::ThmB => "thmB",
        Verify::PropAcyclicity => "prop-acyclicity",
        Verify::CorExt => "cor-ext",
    }
}
