use serde::Serialize;

use super::pushforward::pushforward;
use super::twist::{entries_in_bracket_power, tor_frobenius, twist_complex, twist_module, TorRow};
use crate::error::{Error, Result};
use crate::invariants::{id_probe, ring_depth, IdProbe};
use crate::modcore::{ext, free_resolution, pd_verdict, tor, Kdim, PdVerdict, PresentedModule, Ring};

/// Per-degree comparison of the two routes to `Tor_i(R^(e), M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckRow {
    pub i: usize,
    pub twisted: Kdim,
    pub pushforward: Kdim,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub e: u32,
    pub rows: Vec<CrosscheckRow>,
    pub passed: bool,
}

/// Compares `dim H_i(F^e(resolution of M))` with `dim Tor_i(F^e_* R, M)`
/// for `1 <= i <= max_i`; a mismatch is a verification error.
pub fn tor_crosscheck(m: &PresentedModule, e: u32, max_i: usize, bound: u64) -> Result<CrosscheckReport> {
    let push = pushforward(m.ring(), e, bound)?;
    let twisted = tor_frobenius(m, e, max_i)?;
    let mut rows = Vec::with_capacity(max_i);
    for t in twisted {
        let other = tor(&push.module, m, t.i)?.kdim;
        rows.push(CrosscheckRow { i: t.i, twisted: t.kdim, pushforward: other, equal: t.kdim == other });
    }
    let passed = rows.iter().all(|r| r.equal);
    if !passed {
        return Err(Error::Verification(format!("Tor routes disagree for e = {e}: {rows:?}")));
    }
    Ok(CrosscheckReport { e, rows, passed })
}

/// Frobenius Tor table for one exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusTorTable {
    pub e: u32,
    pub rows: Vec<TorRow>,
    pub first_nonvanishing: Option<usize>,
}

fn table(m: &PresentedModule, e: u32, max_i: usize) -> Result<FrobeniusTorTable> {
    let rows = tor_frobenius(m, e, max_i)?;
    let first_nonvanishing = rows.iter().find(|r| !r.is_zero).map(|r| r.i);
    Ok(FrobeniusTorTable { e, rows, first_nonvanishing })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KunzVerdict {
    Regular,
    NotRegular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub e: u32,
    pub i: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KunzReport {
    pub verdict: KunzVerdict,
    pub witness: Option<Witness>,
    pub max_i: usize,
    pub evidence: Vec<FrobeniusTorTable>,
}

/// Regularity test: `R` is regular iff `Tor_i(R^(e), k) = 0` for
/// `1 <= i <= dim R + 1` and every tested `e`.
pub fn kunz_test(ring: &Ring, e_list: &[u32]) -> Result<KunzReport> {
    check_e_list(e_list)?;
    let max_i = ring.krull_dimension() + 1;
    let k = PresentedModule::residue_field(ring.clone());
    let evidence = e_list.iter().map(|&e| table(&k, e, max_i)).collect::<Result<Vec<_>>>()?;
    let witness = evidence.iter().find_map(|t| t.first_nonvanishing.map(|i| Witness { e: t.e, i }));
    let verdict = if witness.is_none() { KunzVerdict::Regular } else { KunzVerdict::NotRegular };
    Ok(KunzReport { verdict, witness, max_i, evidence })
}

fn check_e_list(e_list: &[u32]) -> Result<()> {
    if e_list.is_empty() || e_list.contains(&0) {
        return Err(Error::Precondition("the e list must be nonempty with entries >= 1".into()));
    }
    Ok(())
}

/// Theorem A data for one exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistCheck {
    pub e: u32,
    pub tor: Vec<TorRow>,
    pub tor_vanishes: bool,
    /// Twisted differentials lie in the bracket power `m^[p^e]`.
    pub twisted_minimal: bool,
    /// Betti numbers of `F^e(M)` from its own minimal resolution.
    pub twisted_betti: Vec<usize>,
    pub betti_preserved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremAReport {
    pub applicable: bool,
    pub pd: PdVerdict,
    pub betti: Vec<usize>,
    pub checks: Vec<TwistCheck>,
    pub holds: bool,
}

/// For `M` of finite projective dimension: `Tor_i(R^(e), M) = 0` for
/// `1 <= i <= pd M + 1`, the twisted minimal resolution stays minimal, and
/// `F^e(M)` has the same Betti numbers (so the same projective dimension),
/// the latter recomputed from a fresh resolution of `F^e(M)`.
pub fn theorem_a_verify(m: &PresentedModule, e_list: &[u32]) -> Result<TheoremAReport> {
    check_e_list(e_list)?;
    let pd = pd_verdict(m)?;
    let n = match pd {
        PdVerdict::Finite { value } => value,
        PdVerdict::ZeroModule => 0,
        PdVerdict::Infinite { .. } => {
            return Ok(TheoremAReport { applicable: false, pd, betti: Vec::new(), checks: Vec::new(), holds: true });
        }
    };
    let res = free_resolution(m, n + 1)?;
    let betti = res.ranks().to_vec();
    let p = m.ring().p();
    let mut checks = Vec::new();
    for &e in e_list {
        let tor = tor_frobenius(m, e, n + 1)?;
        let tor_vanishes = tor.iter().all(|r| r.is_zero);
        let tw = twist_complex(&res.complex, e)?;
        let twisted_minimal = entries_in_bracket_power(&tw.twisted, p.pow(e))?;
        let twisted_module = twist_module(&res_module(m, &res)?, e)?;
        let twisted_betti = free_resolution(&twisted_module, n + 1)?.ranks().to_vec();
        let betti_preserved = twisted_betti == betti;
        checks.push(TwistCheck { e, tor, tor_vanishes, twisted_minimal, twisted_betti, betti_preserved });
    }
    let holds = checks.iter().all(|c| c.tor_vanishes && c.twisted_minimal && c.betti_preserved);
    let report = TheoremAReport { applicable: true, pd, betti, checks, holds };
    if !holds {
        return Err(Error::Verification(format!("Frobenius twist of a finite resolution failed: {report:?}")));
    }
    Ok(report)
}

/// `M` presented by the first differential of its minimal resolution.
fn res_module(m: &PresentedModule, res: &crate::modcore::Resolution) -> Result<PresentedModule> {
    let d1 = match res.complex.differential(1) {
        Some(d) => d.clone(),
        None => crate::modcore::ModuleMap::zero(res.complex.rank(0), 0),
    };
    Ok(PresentedModule::new(m.ring().clone(), d1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremBReport {
    pub pd: PdVerdict,
    pub max_i: usize,
    pub tables: Vec<FrobeniusTorTable>,
    pub consistent: bool,
}

/// Finite-window contrapositive: infinite `pd` must show a nonvanishing
/// `Tor_i(R^(e), M)` with `i <= dim R + 1` for every tested `e`; finite `pd`
/// must show none.
pub fn theorem_b_verify(m: &PresentedModule, e_list: &[u32]) -> Result<TheoremBReport> {
    check_e_list(e_list)?;
    let pd = pd_verdict(m)?;
    let max_i = m.ring().krull_dimension() + 1;
    let tables = e_list.iter().map(|&e| table(m, e, max_i)).collect::<Result<Vec<_>>>()?;
    let consistent = if pd.is_finite() {
        tables.iter().all(|t| t.first_nonvanishing.is_none())
    } else {
        tables.iter().all(|t| t.first_nonvanishing.is_some())
    };
    let report = TheoremBReport { pd, max_i, tables, consistent };
    if !consistent {
        return Err(Error::Verification(format!("projective dimension and Frobenius Tor disagree: {report:?}")));
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtRow {
    pub i: usize,
    pub is_zero: bool,
    pub kdim: Kdim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtFrobeniusReport {
    pub e: u32,
    pub rows: Vec<ExtRow>,
    pub id_probe: IdProbe,
    pub all_vanish: bool,
    /// `id_probe` finite; the vanishing is then asserted.
    pub id_finite: bool,
}

/// `Ext^i(F^e_* R, M)` for `1 <= i <= max_i`. When the injective dimension
/// probe certifies finite `id M`, vanishing is asserted; otherwise the table
/// is only reported.
pub fn ext_frobenius(m: &PresentedModule, e: u32, max_i: usize, bound: u64) -> Result<ExtFrobeniusReport> {
    let push = pushforward(m.ring(), e, bound)?;
    let rows = (1..=max_i)
        .map(|i| ext(&push.module, m, i).map(|x| ExtRow { i, is_zero: x.is_zero, kdim: x.kdim }))
        .collect::<Result<Vec<_>>>()?;
    let probe_bound = max_i.max(ring_depth(m.ring())? + 1);
    let id_probe = id_probe(m, probe_bound)?;
    let all_vanish = rows.iter().all(|r| r.is_zero);
    let id_finite = matches!(id_probe, IdProbe::Finite { .. } | IdProbe::ZeroModule);
    let report = ExtFrobeniusReport { e, rows, id_probe, all_vanish, id_finite };
    if id_finite && !all_vanish {
        return Err(Error::Verification(format!("finite injective dimension with nonvanishing Ext: {report:?}")));
    }
    Ok(report)
}
