use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize, Serializer};

use super::map::ModuleMap;
use super::ring::{QuotientRing, Ring};
use crate::arith::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{monomial_dimension, Basis, GbEngine, ModVec};

/// Largest staircase box enumerated when counting standard monomials.
const MAX_STAIRCASE_BOX: u64 = 20_000_000;

/// Dimension over `F_p`, or the flag that the module has infinite length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
pub enum Kdim {
    Finite(u64),
    Infinite,
}

impl Kdim {
    pub fn is_zero(self) -> bool {
        self == Kdim::Finite(0)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Kdim::Finite(n) => Some(n),
            Kdim::Infinite => None,
        }
    }
}

impl fmt::Display for Kdim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kdim::Finite(n) => write!(f, "{n}"),
            Kdim::Infinite => f.write_str("infinite"),
        }
    }
}

/// Serialized as an integer, or the string `"infinite"`.
impl Serialize for Kdim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Kdim::Finite(n) => s.serialize_u64(*n),
            Kdim::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Gröbner basis of `span(columns) + I * R^rank` inside `P^rank`.
#[derive(Clone, Debug)]
pub struct SubmoduleGb {
    rank: usize,
    basis: Basis,
}

impl SubmoduleGb {
    pub fn new(ring: &QuotientRing, rank: usize, columns: &ModuleMap) -> Result<Self> {
        if columns.nrows() != rank {
            return Err(Error::Structural(format!("{} rows in a submodule of rank {rank}", columns.nrows())));
        }
        let poly = ring.poly();
        let mut eng = GbEngine::new(poly, false);
        for c in 0..columns.ncols() {
            eng.push(columns.col_vec(c, 0));
        }
        for k in 0..rank {
            for g in ring.gb().elements() {
                eng.push(ModVec::from_column(std::slice::from_ref(g), k as u32));
            }
        }
        eng.complete()?;
        Ok(SubmoduleGb { rank, basis: Basis::from_monic(eng.reduced()) })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// Normal form of a column.
    pub fn reduce_col(&self, ring: &QuotientRing, col: &[Polynomial]) -> Vec<Polynomial> {
        self.basis.reduce(ring.poly(), ModVec::from_column(col, 0)).to_column(0, self.rank)
    }

    pub fn contains_col(&self, ring: &QuotientRing, col: &[Polynomial]) -> bool {
        self.basis.contains(ring.poly(), &ModVec::from_column(col, 0))
    }

    /// True when the submodule is all of `R^rank`.
    pub fn is_everything(&self) -> bool {
        (0..self.rank as u32).all(|k| self.basis.elems().iter().any(|v| {
            let l = v.lead().unwrap();
            l.pos == k && l.mono.is_one()
        }))
    }

    /// Krull dimension of `R^rank / submodule`, read off the leading terms
    /// position by position; `-1` for the zero module.
    pub fn quotient_krull_dimension(&self, nvars: usize) -> i64 {
        (0..self.rank as u32)
            .map(|k| {
                let leads: Vec<&Monomial> = self.leads_at(k).collect();
                monomial_dimension(&leads, nvars)
            })
            .max()
            .unwrap_or(-1)
    }

    fn leads_at(&self, k: u32) -> impl Iterator<Item = &Monomial> {
        self.basis.elems().iter().map(|v| v.lead().unwrap()).filter(move |l| l.pos == k).map(|l| &l.mono)
    }

    /// `dim_k` of `R^rank / submodule` by counting standard monomials per position.
    pub fn quotient_kdim(&self, nvars: usize) -> Result<Kdim> {
        let mut total: u64 = 0;
        for k in 0..self.rank as u32 {
            let leads: Vec<&Monomial> = self.leads_at(k).collect();
            match count_standard_monomials(&leads, nvars)? {
                Kdim::Finite(n) => total += n,
                Kdim::Infinite => return Ok(Kdim::Infinite),
            }
        }
        Ok(Kdim::Finite(total))
    }
}

/// Number of monomials outside the monomial ideal generated by `leads`.
fn count_standard_monomials(leads: &[&Monomial], nvars: usize) -> Result<Kdim> {
    if leads.iter().any(|m| m.is_one()) {
        return Ok(Kdim::Finite(0));
    }
    let mut bounds = vec![0u32; nvars];
    for (v, b) in bounds.iter_mut().enumerate() {
        let pure = leads
            .iter()
            .filter(|m| m.support().all(|s| s == v))
            .map(|m| m.exponents()[v])
            .min();
        match pure {
            Some(d) => *b = d,
            None => return Ok(Kdim::Infinite),
        }
    }
    let size = bounds.iter().try_fold(1u64, |acc, &b| acc.checked_mul(b as u64)).unwrap_or(u64::MAX);
    if size > MAX_STAIRCASE_BOX {
        return Err(Error::Resource(format!("staircase box of {size} monomials is too large to enumerate")));
    }
    let mut count = 0u64;
    let mut exps = vec![0u32; nvars];
    loop {
        let m = Monomial::from_exponents(&exps);
        if !leads.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        let mut v = 0;
        loop {
            if v == nvars {
                return Ok(Kdim::Finite(count));
            }
            exps[v] += 1;
            if exps[v] < bounds[v] {
                break;
            }
            exps[v] = 0;
            v += 1;
        }
    }
}

/// `M = coker(A)` for a matrix `A : R^s -> R^t`; the generators of `M` are the
/// images of the standard basis of `R^t`.
#[derive(Clone)]
pub struct PresentedModule {
    ring: Ring,
    presentation: ModuleMap,
    gb: OnceLock<Arc<SubmoduleGb>>,
}

impl fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coker {} over {}", self.presentation.display(self.ring.poly()), self.ring.describe())
    }
}

impl PartialEq for PresentedModule {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.presentation == other.presentation
    }
}

impl PresentedModule {
    /// Zero and repeated relation columns are dropped.
    pub fn new(ring: Ring, presentation: ModuleMap) -> Self {
        let presentation = presentation.prune_columns();
        PresentedModule { ring, presentation, gb: OnceLock::new() }
    }

    /// Parses a row-major matrix of polynomial strings.
    pub fn from_rows(ring: Ring, rows: &[&[&str]], ngens: usize) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| ring.parse_element(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let map = if parsed.is_empty() { ModuleMap::zero(ngens, 0) } else { ModuleMap::from_rows(&ring, parsed)? };
        Ok(Self::new(ring, map))
    }

    pub fn free(ring: Ring, n: usize) -> Self {
        Self::new(ring, ModuleMap::zero(n, 0))
    }

    pub fn zero(ring: Ring) -> Self {
        Self::new(ring, ModuleMap::zero(0, 0))
    }

    /// `R / (gens)`.
    pub fn cyclic(ring: Ring, gens: Vec<Polynomial>) -> Result<Self> {
        let map = ModuleMap::new(&ring, 1, gens.into_iter().map(|g| vec![g]).collect())?;
        Ok(Self::new(ring, map))
    }

    /// The residue field `k = R / m`.
    pub fn residue_field(ring: Ring) -> Self {
        let vars = (0..ring.nvars()).map(|i| ring.poly().var(i)).collect();
        Self::cyclic(ring, vars).expect("variables are valid elements")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn presentation(&self) -> &ModuleMap {
        &self.presentation
    }

    pub fn ngens(&self) -> usize {
        self.presentation.nrows()
    }

    /// Cached Gröbner basis of the relations plus `I`.
    pub fn relation_gb(&self) -> Result<&Arc<SubmoduleGb>> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = SubmoduleGb::new(&self.ring, self.ngens(), &self.presentation)?;
        Ok(self.gb.get_or_init(|| Arc::new(g)))
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.ngens() == 0 || self.relation_gb()?.is_everything())
    }

    pub fn kdim(&self) -> Result<Kdim> {
        if self.ngens() == 0 {
            return Ok(Kdim::Finite(0));
        }
        self.relation_gb()?.quotient_kdim(self.ring.nvars())
    }

    /// Krull dimension of the module (of `R / ann M`); `-1` when `M = 0`.
    pub fn krull_dimension(&self) -> Result<i64> {
        if self.ngens() == 0 {
            return Ok(-1);
        }
        Ok(self.relation_gb()?.quotient_krull_dimension(self.ring.nvars()))
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> Result<PresentedModule> {
        if *self.ring != *other.ring {
            return Err(Error::Structural("direct sum of modules over different rings".into()));
        }
        Ok(Self::new(self.ring.clone(), self.presentation.direct_sum(&other.presentation)))
    }

    /// Removes generators killed by unit relations (nonzero constant entries),
    /// lowest row first.
    pub fn minimal_presentation(&self) -> PresentedModule {
        let mut a = self.presentation.clone();
        while let Some((r, c)) = find_unit(&a) {
            a = eliminate_pivot(&self.ring, &a, r, c);
        }
        Self::new(self.ring.clone(), a)
    }

    /// Canonical key for memo tables.
    pub fn content_key(&self) -> String {
        format!(
            "{}|{}x{}|{}",
            self.ring.content_key(),
            self.presentation.nrows(),
            self.presentation.ncols(),
            self.presentation.display(self.ring.poly())
        )
    }
}

/// First nonzero-constant entry, scanning rows in order, then columns.
pub(crate) fn find_unit(a: &ModuleMap) -> Option<(usize, usize)> {
    (0..a.nrows()).find_map(|r| (0..a.ncols()).find(|&c| a.get(r, c).is_nonzero_constant()).map(|c| (r, c)))
}

/// Splits off the trivial summand at the unit entry `(r, c)`:
/// `A' = A[-r,-c] - A[-r,c] * u^{-1} * A[r,-c]`.
pub(crate) fn eliminate_pivot(ring: &QuotientRing, a: &ModuleMap, r: usize, c: usize) -> ModuleMap {
    let poly = ring.poly();
    let u = a.get(r, c).constant_term();
    let minus_inv = poly.prime.neg(poly.prime.inv(u).expect("unit pivot"));
    let pivot_col = a.col(c);
    let mut cols = Vec::with_capacity(a.ncols() - 1);
    for j in (0..a.ncols()).filter(|&j| j != c) {
        let arj = a.get(r, j);
        let col: Vec<Polynomial> = (0..a.nrows())
            .filter(|&i| i != r)
            .map(|i| {
                let aij = a.get(i, j);
                if arj.is_zero() || pivot_col[i].is_zero() {
                    aij.clone()
                } else {
                    let prod = poly.scale(&poly.mul(&pivot_col[i], arj), minus_inv);
                    ring.reduce(&poly.add(aij, &prod))
                }
            })
            .collect();
        cols.push(col);
    }
    ModuleMap::from_cols_unchecked(a.nrows() - 1, cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_field_has_kdim_one() {
        let r = QuotientRing::parse(2, &["x", "y"], &[]).unwrap();
        let k = PresentedModule::residue_field(r.clone());
        assert_eq!(k.kdim().unwrap(), Kdim::Finite(1));
        assert!(!k.is_zero().unwrap());
        assert_eq!(PresentedModule::free(r, 1).kdim().unwrap(), Kdim::Infinite);
    }

    #[test]
    fn artinian_ring_counts() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x^2", "y^2"]).unwrap();
        assert_eq!(PresentedModule::free(r.clone(), 2).kdim().unwrap(), Kdim::Finite(8));
        let m = PresentedModule::from_rows(r, &[&["x", "y"]], 1).unwrap();
        assert_eq!(m.kdim().unwrap(), Kdim::Finite(1));
    }

    #[test]
    fn unit_relation_kills_generator() {
        let r = QuotientRing::parse(3, &["x", "y"], &[]).unwrap();
        let m = PresentedModule::from_rows(r, &[&["1", "x"], &["y", "0"]], 2).unwrap();
        let min = m.minimal_presentation();
        assert_eq!(min.ngens(), 1);
        // e0 = -y e1 is eliminated; the remaining relation is 0 - y * x.
        assert_eq!(min.presentation().display(min.ring().poly()), "[[2*x*y]]");
        assert_eq!(m.kdim().unwrap(), min.kdim().unwrap());
    }

    #[test]
    fn zero_module() {
        let r = QuotientRing::parse(2, &["x"], &[]).unwrap();
        assert!(PresentedModule::zero(r.clone()).is_zero().unwrap());
        assert!(PresentedModule::from_rows(r, &[&["x + 1", "x"]], 1).unwrap().is_zero().unwrap());
    }
}
