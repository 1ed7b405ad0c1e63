use serde::Serialize;

use crate::arith::Monomial;
use crate::error::Result;
use crate::groebner::{buchberger, Ideal};
use crate::modcore::{free_resolution, FreeComplex, Kdim, ModuleMap, PresentedModule, QuotientRing};

/// A free complex with every differential entry raised to the `p^e`-th power.
#[derive(Clone, Debug)]
pub struct FrobeniusTwist {
    pub e: u32,
    pub twisted: FreeComplex,
}

/// Entrywise `p^e`-th power of a matrix, reduced modulo `I`.
pub fn twist_map(ring: &QuotientRing, a: &ModuleMap, e: u32) -> Result<ModuleMap> {
    a.map_entries(ring, |f| ring.poly().frobenius_power(f, e))
}

/// Applies the Frobenius functor to a free complex: ranks are unchanged and
/// each differential is twisted entrywise.
pub fn twist_complex(c: &FreeComplex, e: u32) -> Result<FrobeniusTwist> {
    let ring = c.ring().clone();
    let twisted = c.map_differentials(|d| twist_map(&ring, d, e))?;
    Ok(FrobeniusTwist { e, twisted })
}

/// `F^e(M) = coker` of the twisted presentation.
pub fn twist_module(m: &PresentedModule, e: u32) -> Result<PresentedModule> {
    let p = twist_map(m.ring(), m.presentation(), e)?;
    Ok(PresentedModule::new(m.ring().clone(), p))
}

/// Bracket-power containment `d(F) ⊆ m^[q] F`: every entry lies in
/// `(x_1^q, ..., x_n^q) + I`.
pub fn entries_in_bracket_power(c: &FreeComplex, q: u32) -> Result<bool> {
    let ring = c.ring();
    let n = ring.nvars();
    let powers = (0..n).map(|j| Monomial::var(n, j).scale(q).map(|m| ring.poly().term(m, 1)));
    let gens = ring.ideal().generators().iter().cloned().map(Ok).chain(powers).collect::<Result<Vec<_>>>()?;
    let gb = buchberger(&Ideal::new(ring.poly_arc().clone(), gens)?)?;
    Ok(c.maps().iter().all(|d| d.entries().all(|f| gb.contains(f))))
}

/// `Tor_i(R^(e), M)` for one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TorRow {
    pub i: usize,
    pub is_zero: bool,
    pub kdim: Kdim,
}

/// `Tor_i(R^(e), M)` for `1 <= i <= max_i` as the homology of the twisted
/// minimal resolution of `M`. Dimensions are over `F_p`.
pub fn tor_frobenius(m: &PresentedModule, e: u32, max_i: usize) -> Result<Vec<TorRow>> {
    let res = free_resolution(m, max_i + 1)?;
    let tw = twist_complex(&res.complex, e)?;
    (1..=max_i)
        .map(|i| {
            let h = tw.twisted.homology(i)?;
            Ok(TorRow { i, is_zero: h.is_zero, kdim: h.kdim()? })
        })
        .collect()
}
