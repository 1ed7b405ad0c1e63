use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use super::koszul::koszul_on_module;
use crate::error::{Error, Result};
use crate::groebner::cache::MemoTable;
use crate::modcore::{ext, tor, Kdim, PresentedModule, QuotientRing};

/// Depth of a module; the zero module has infinite depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Depth {
    Finite(usize),
    Infinite,
}

impl Depth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Depth::Finite(d) => Some(d),
            Depth::Infinite => None,
        }
    }

    /// `self >= i`, with infinity above everything.
    pub fn at_least(self, i: usize) -> bool {
        match self {
            Depth::Finite(d) => d >= i,
            Depth::Infinite => true,
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(d) => write!(f, "{d}"),
            Depth::Infinite => f.write_str("infinite"),
        }
    }
}

/// Serialized as an integer, or the string `"infinite"`.
impl Serialize for Depth {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Depth::Finite(d) => s.serialize_u64(*d as u64),
            Depth::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Both depth computations, kept for reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DepthWitness {
    pub by_ext: Depth,
    pub by_koszul: Depth,
}

fn depth_cache() -> &'static MemoTable<Depth> {
    static CELL: OnceLock<MemoTable<Depth>> = OnceLock::new();
    crate::groebner::cache::global(&CELL)
}

/// Least `i` with `Ext^i(k, M) != 0`.
pub fn depth_by_ext(m: &PresentedModule) -> Result<Depth> {
    if m.is_zero()? {
        return Ok(Depth::Infinite);
    }
    let k = PresentedModule::residue_field(m.ring().clone());
    for i in 0..=m.ring().nvars() {
        if !ext(&k, m, i)?.is_zero {
            return Ok(Depth::Finite(i));
        }
    }
    Err(Error::Verification("Ext^i(k, M) vanishes for all i <= n on a nonzero module".into()))
}

/// `n - max{ i : H_i(x_1..x_n; M) != 0 }`.
pub fn depth_by_koszul(m: &PresentedModule) -> Result<Depth> {
    if m.is_zero()? {
        return Ok(Depth::Infinite);
    }
    let ring = m.ring();
    let n = ring.nvars();
    let vars: Vec<_> = (0..n).map(|i| ring.poly().var(i)).collect();
    let c = koszul_on_module(m, &vars)?;
    for i in (0..=n).rev() {
        if !c.homology(i)?.is_zero {
            return Ok(Depth::Finite(n - i));
        }
    }
    Err(Error::Verification("Koszul homology vanishes on a nonzero module".into()))
}

/// Depth by Ext and by Koszul homology, asserted equal.
pub fn depth_witness(m: &PresentedModule) -> Result<DepthWitness> {
    let by_ext = depth_by_ext(m)?;
    let by_koszul = depth_by_koszul(m)?;
    if by_ext != by_koszul {
        return Err(Error::Verification(format!("depth by Ext is {by_ext} but depth by Koszul homology is {by_koszul}")));
    }
    Ok(DepthWitness { by_ext, by_koszul })
}

/// Depth of `M`, memoized by content; both routes are computed and compared.
pub fn depth(m: &PresentedModule) -> Result<Depth> {
    let d = depth_cache().get_or_try_insert_with(m.content_key(), || depth_witness(m).map(|w| w.by_ext))?;
    Ok(*d)
}

/// `depth R` (always finite since `R != 0`).
pub fn ring_depth(ring: &std::sync::Arc<QuotientRing>) -> Result<usize> {
    let d = depth(&PresentedModule::free(ring.clone(), 1))?;
    d.finite().ok_or_else(|| Error::Verification("the ring has infinite depth".into()))
}

/// `mu_i(m, M) = dim_k Ext^i(k, M)` for `0 <= i <= max_i`.
pub fn bass_numbers(m: &PresentedModule, max_i: usize) -> Result<Vec<Kdim>> {
    let k = PresentedModule::residue_field(m.ring().clone());
    (0..=max_i).map(|i| ext(&k, m, i).map(|e| e.kdim)).collect()
}

/// `pi_i(m, M)`, evaluated as `dim_k Tor_i(k, M)` for `0 <= i <= max_i`.
///
/// This is the Tor formula for Enochs–Xu numbers at the maximal ideal, valid
/// for cotorsion `M`; the hypothesis is not checked.
pub fn enochs_xu_numbers(m: &PresentedModule, max_i: usize) -> Result<Vec<Kdim>> {
    let k = PresentedModule::residue_field(m.ring().clone());
    (0..=max_i).map(|i| tor(&k, m, i).map(|t| t.kdim)).collect()
}

/// One-sided injective dimension probe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "id", rename_all = "kebab-case")]
pub enum IdProbe {
    /// Last nonzero Bass number at `value <= depth R`, zeros up to the bound.
    Finite { value: usize },
    /// The window does not certify finiteness; infinite injective dimension
    /// is never claimed.
    Undetermined { bound: usize },
    ZeroModule,
}

pub fn id_probe(m: &PresentedModule, bound: usize) -> Result<IdProbe> {
    let depth_r = ring_depth(m.ring())?;
    if bound < depth_r + 1 {
        return Err(Error::Precondition(format!("bound {bound} is below depth R + 1 = {}", depth_r + 1)));
    }
    if m.is_zero()? {
        return Ok(IdProbe::ZeroModule);
    }
    let mu = bass_numbers(m, bound)?;
    let last = mu.iter().rposition(|k| !k.is_zero());
    Ok(match last {
        Some(n) if n <= depth_r => IdProbe::Finite { value: n },
        _ => IdProbe::Undetermined { bound },
    })
}

/// Depth, Bass numbers and Enochs–Xu numbers of one module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub depth: Depth,
    pub bass: Vec<Kdim>,
    pub ex_numbers: Vec<Kdim>,
    /// Krull dimension of the module (`-1` for `M = 0`).
    pub dim: i64,
}

pub fn invariant_report(m: &PresentedModule, max_i: usize) -> Result<InvariantReport> {
    let depth = depth(m)?;
    let bass = bass_numbers(m, max_i)?;
    let ex_numbers = enochs_xu_numbers(m, max_i)?;
    let dim = m.krull_dimension()?;
    if let Depth::Finite(d) = depth {
        if d as i64 > dim {
            return Err(Error::Verification(format!("depth {d} exceeds dimension {dim}")));
        }
        if d <= max_i && bass[d].is_zero() {
            return Err(Error::Verification(format!("mu_{d} vanishes at the depth")));
        }
    }
    Ok(InvariantReport { depth, bass, ex_numbers, dim })
}
