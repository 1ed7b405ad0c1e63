use serde::Serialize;

use super::complex::ModuleComplex;
use super::map::ModuleMap;
use super::module::{Kdim, PresentedModule};
use super::resolution::free_resolution;
use crate::error::{Error, Result};

/// A derived-functor value with its vanishing flag and `F_p`-dimension.
#[derive(Clone, Debug)]
pub struct DerivedModule {
    pub module: PresentedModule,
    pub is_zero: bool,
    pub kdim: Kdim,
}

/// Vanishing and dimension only, for reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedSummary {
    pub is_zero: bool,
    pub kdim: Kdim,
}

impl DerivedModule {
    pub fn summary(&self) -> DerivedSummary {
        DerivedSummary { is_zero: self.is_zero, kdim: self.kdim }
    }
}

fn same_ring(m: &PresentedModule, n: &PresentedModule) -> Result<()> {
    if **m.ring() != **n.ring() {
        return Err(Error::Structural("modules over different rings".into()));
    }
    Ok(())
}

/// `Tor_i(M, N)`: resolve `M` to `F_{i+1}`, tensor with `N`, take `H_i`.
///
/// `F_j ⊗ N = coker(1_{r_j} ⊗ B_N)` with generators indexed `a * t + b`,
/// differentials `d_j ⊗ 1_t`.
pub fn tor(m: &PresentedModule, n: &PresentedModule, i: usize) -> Result<DerivedModule> {
    same_ring(m, n)?;
    let ring = m.ring().clone();
    let res = free_resolution(m, i + 1)?;
    let t = n.ngens();
    let b = n.presentation();
    let lo = i.saturating_sub(1);
    let terms: Vec<PresentedModule> = (lo..=i + 1)
        .map(|j| PresentedModule::new(ring.clone(), b.identity_tensor(res.complex.rank(j))))
        .collect();
    let maps: Vec<ModuleMap> =
        (lo + 1..=i + 1).map(|j| res.complex.differential(j).expect("resolved far enough").tensor_identity(t)).collect();
    let c = ModuleComplex::new_unchecked(ring, terms, maps)?;
    let h = c.homology(i - lo)?;
    let kdim = h.kdim()?;
    Ok(DerivedModule { module: h.module, is_zero: h.is_zero, kdim })
}

/// `Hom(N, M)` as `Ext^0`.
pub fn hom(n: &PresentedModule, m: &PresentedModule) -> Result<DerivedModule> {
    ext(n, m, 0)
}

/// `Ext^i(N, M)`: resolve `N` to `F_{i+1}`, apply `Hom(-, M)`, take `H^i`.
///
/// `Hom(F_j, M) = M^{r_j}` with generators indexed `a * t + b`; the
/// coboundary `Hom(F_j, M) -> Hom(F_{j+1}, M)` is `d_{j+1}^T ⊗ 1_t`.
pub fn ext(n: &PresentedModule, m: &PresentedModule, i: usize) -> Result<DerivedModule> {
    same_ring(m, n)?;
    let ring = m.ring().clone();
    let res = free_resolution(n, i + 1)?;
    let t = m.ngens();
    let b = m.presentation();
    // Chain degree d holds Hom(F_{i+1-d}, M), for d = 0..=min(i+1, 2).
    let top = (i + 1).min(2);
    let terms: Vec<PresentedModule> = (0..=top)
        .map(|d| PresentedModule::new(ring.clone(), b.identity_tensor(res.complex.rank(i + 1 - d))))
        .collect();
    let maps: Vec<ModuleMap> = (1..=top)
        .map(|d| {
            let j = i + 1 - d;
            res.complex.differential(j + 1).expect("resolved far enough").transpose().tensor_identity(t)
        })
        .collect();
    let c = ModuleComplex::new_unchecked(ring, terms, maps)?;
    let h = c.homology(1)?;
    let kdim = h.kdim()?;
    Ok(DerivedModule { module: h.module, is_zero: h.is_zero, kdim })
}
