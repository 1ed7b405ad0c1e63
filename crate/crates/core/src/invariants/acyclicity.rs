use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::depth::{depth, Depth};
use super::koszul::{koszul_complex, tensor_free_complex};
use crate::arith::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::modcore::{FreeComplex, ModuleComplex, ModuleMap, PresentedModule, QuotientRing, Ring};

/// One row of the acyclicity table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub degree: usize,
    pub term_depth: Depth,
    pub homology_zero: bool,
    pub homology_depth: Depth,
}

/// A hypothesis that fails, with the degree where it fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisFailure {
    /// 1: `depth T_i >= i`; 2: `H_i = 0` or `depth H_i = 0` for `i > 0`.
    pub condition: u8,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcyclicityReport {
    pub rows: Vec<DegreeRow>,
    pub hypotheses_hold: bool,
    pub failures: Vec<HypothesisFailure>,
    /// `H_i = 0` for every `i > 0`.
    pub conclusion_holds: bool,
}

/// Evaluates the acyclicity lemma on a bounded complex: if `depth T_i >= i`
/// for all `i` and every positive homology is zero or of depth zero, then
/// all positive homology vanishes. A complex meeting the hypotheses but not
/// the conclusion is reported as a verification error.
pub fn acyclicity_lemma_check(c: &ModuleComplex) -> Result<AcyclicityReport> {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (i, term) in c.terms().iter().enumerate() {
        let term_depth = depth(term)?;
        let h = c.homology(i)?;
        let homology_depth = if h.is_zero { Depth::Infinite } else { depth(&h.module)? };
        if !term_depth.at_least(i) {
            failures.push(HypothesisFailure { condition: 1, degree: i });
        }
        if i > 0 && !h.is_zero && homology_depth != Depth::Finite(0) {
            failures.push(HypothesisFailure { condition: 2, degree: i });
        }
        rows.push(DegreeRow { degree: i, term_depth, homology_zero: h.is_zero, homology_depth });
    }
    failures.sort_by_key(|f| (f.condition, f.degree));
    let hypotheses_hold = failures.is_empty();
    let conclusion_holds = rows.iter().skip(1).all(|r| r.homology_zero);
    if hypotheses_hold && !conclusion_holds {
        return Err(Error::Verification(format!("acyclicity lemma contradicted: {rows:?}")));
    }
    Ok(AcyclicityReport { rows, hypotheses_hold, failures, conclusion_holds })
}

/// Block-diagonal sum of two complexes, the shorter one padded with zero terms.
pub fn direct_sum(a: &ModuleComplex, b: &ModuleComplex) -> Result<ModuleComplex> {
    let ring = a.ring().clone();
    let len = a.length().max(b.length());
    let pad = |c: &ModuleComplex| -> (Vec<PresentedModule>, Vec<ModuleMap>) {
        let mut terms = c.terms().to_vec();
        let mut maps = c.maps().to_vec();
        while terms.len() < len + 1 {
            let top = terms.last().map_or(0, |t| t.ngens());
            maps.push(ModuleMap::zero(top, 0));
            terms.push(PresentedModule::zero(ring.clone()));
        }
        (terms, maps)
    };
    let (ta, ma) = pad(a);
    let (tb, mb) = pad(b);
    let terms = ta.iter().zip(&tb).map(|(x, y)| x.direct_sum(y)).collect::<Result<Vec<_>>>()?;
    let maps = ma.iter().zip(&mb).map(|(x, y)| x.direct_sum(y)).collect();
    ModuleComplex::new(ring, terms, maps)
}

/// Shifts a complex up by `k` degrees, filling the bottom with zero modules.
pub fn shift_up(c: &ModuleComplex, k: usize) -> Result<ModuleComplex> {
    let ring = c.ring().clone();
    let mut terms: Vec<PresentedModule> = (0..k).map(|_| PresentedModule::zero(ring.clone())).collect();
    let mut maps: Vec<ModuleMap> = (0..k).map(|j| ModuleMap::zero(0, if j + 1 == k { c.terms()[0].ngens() } else { 0 })).collect();
    terms.extend(c.terms().iter().cloned());
    maps.extend(c.maps().iter().cloned());
    ModuleComplex::new(ring, terms, maps)
}

/// Homogeneous rings used by the random complex generator.
fn generator_rings() -> Result<Vec<Ring>> {
    Ok(vec![
        QuotientRing::parse(2, &["x", "y"], &[])?,
        QuotientRing::parse(3, &["x", "y"], &[])?,
        QuotientRing::parse(2, &["x", "y", "z"], &[])?,
        QuotientRing::parse(2, &["x", "y"], &["x*y"])?,
        QuotientRing::parse(2, &["x", "y"], &["x^2"])?,
        QuotientRing::parse(3, &["x", "y"], &["x^2 + y^2"])?,
        QuotientRing::parse(2, &["x", "y", "z"], &["x*z - y^2"])?,
    ])
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(v: usize, n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if v + 1 == n {
            cur.push(left);
            out.push(Monomial::from_exponents(cur));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            go(v + 1, n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// A random homogeneous element of degree 1 or 2; half the time a variable.
fn random_element(rng: &mut StdRng, ring: &Ring) -> Polynomial {
    let n = ring.nvars();
    let poly = ring.poly();
    if rng.gen_bool(0.5) {
        return poly.var(rng.gen_range(0..n));
    }
    let d = rng.gen_range(1..=2);
    let monos = monomials_of_degree(n, d);
    loop {
        let mut terms: Vec<(Monomial, u32)> = Vec::new();
        for m in &monos {
            if rng.gen_bool(0.5) {
                terms.push((m.clone(), rng.gen_range(1..ring.p())));
            }
        }
        let f = ring.reduce(&poly.from_terms(terms));
        if !f.is_zero() {
            return f;
        }
    }
}

fn random_koszul(rng: &mut StdRng, ring: &Ring) -> Result<FreeComplex> {
    let s = rng.gen_range(1..=ring.nvars().min(3));
    let elems: Vec<Polynomial> = (0..s).map(|_| random_element(rng, ring)).collect();
    koszul_complex(ring, &elems)
}

/// A seeded random bounded complex over a homogeneous ring, assembled from
/// Koszul pieces, direct sums, degree shifts and tensor products with cyclic
/// modules.
pub fn random_complex(seed: u64) -> Result<ModuleComplex> {
    let mut rng = StdRng::seed_from_u64(seed);
    let rings = generator_rings()?;
    let ring = rings[rng.gen_range(0..rings.len())].clone();
    let base = random_koszul(&mut rng, &ring)?.to_module_complex();
    match rng.gen_range(0..4) {
        0 => Ok(base),
        1 => {
            let other = random_koszul(&mut rng, &ring)?.to_module_complex();
            direct_sum(&base, &other)
        }
        2 => shift_up(&base, 1),
        _ => {
            let f = random_koszul(&mut rng, &ring)?;
            let m = PresentedModule::cyclic(ring.clone(), vec![random_element(&mut rng, &ring)])?;
            tensor_free_complex(&f, &m)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elems(r: &Ring, xs: &[&str]) -> Vec<Polynomial> {
        xs.iter().map(|s| r.parse_element(s).unwrap()).collect()
    }

    #[test]
    fn koszul_on_regular_sequence() {
        let r = QuotientRing::parse(2, &["x", "y"], &[]).unwrap();
        let c = koszul_complex(&r, &elems(&r, &["x", "y"])).unwrap().to_module_complex();
        let rep = acyclicity_lemma_check(&c).unwrap();
        assert!(rep.hypotheses_hold);
        assert!(rep.conclusion_holds);
    }

    #[test]
    fn zero_differential_fails_homology_condition() {
        let r = QuotientRing::parse(2, &["x", "y"], &[]).unwrap();
        let c = FreeComplex::from_maps(r.clone(), vec![ModuleMap::zero(1, 1)]).unwrap().to_module_complex();
        let rep = acyclicity_lemma_check(&c).unwrap();
        assert_eq!(rep.failures, vec![HypothesisFailure { condition: 2, degree: 1 }]);
        assert_eq!(rep.rows[1].homology_depth, Depth::Finite(2));
    }

    #[test]
    fn repeated_element_reports_condition_two() {
        let r = QuotientRing::parse(2, &["x", "y"], &[]).unwrap();
        let c = koszul_complex(&r, &elems(&r, &["x", "x"])).unwrap().to_module_complex();
        let rep = acyclicity_lemma_check(&c).unwrap();
        assert!(!rep.rows[1].homology_zero);
        assert_eq!(rep.rows[1].homology_depth, Depth::Finite(1));
        assert_eq!(rep.failures, vec![HypothesisFailure { condition: 2, degree: 1 }]);
        assert!(!rep.conclusion_holds);
    }

    #[test]
    fn generator_is_deterministic() {
        let a = random_complex(7).unwrap();
        let b = random_complex(7).unwrap();
        assert_eq!(a.maps(), b.maps());
        assert_eq!(a.terms(), b.terms());
    }

    #[test]
    fn padding_and_sums_keep_shapes() {
        let r = QuotientRing::parse(2, &["x", "y"], &[]).unwrap();
        let k1 = koszul_complex(&r, &elems(&r, &["x"])).unwrap().to_module_complex();
        let k2 = koszul_complex(&r, &elems(&r, &["x", "y"])).unwrap().to_module_complex();
        let s = direct_sum(&k1, &k2).unwrap();
        let gens: Vec<usize> = s.terms().iter().map(|t| t.ngens()).collect();
        assert_eq!(gens, vec![2, 3, 1]);
        let up = shift_up(&k1, 1).unwrap();
        assert_eq!(up.terms()[0].ngens(), 0);
        assert!(up.homology(0).unwrap().is_zero);
    }
}
