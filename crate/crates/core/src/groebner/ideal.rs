use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::cache::{global, MemoTable};
use super::engine::{module_groebner, Basis, ModVec};
use crate::arith::{Monomial, PolyRing, Polynomial};
use crate::error::{Error, Result};

/// An ideal of `F_p[x_1..x_n]` given by generators. Zero generators are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: Arc<PolyRing>, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            ring.check(g)?;
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring, generators })
    }

    pub fn zero(ring: Arc<PolyRing>) -> Self {
        Ideal { ring, generators: Vec::new() }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// `self + (extra)`.
    pub fn extended(&self, extra: &[Polynomial]) -> Ideal {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().filter(|g| !g.is_zero()).cloned());
        Ideal { ring: self.ring.clone(), generators: gens }
    }

    /// Canonical key: characteristic, variables, order and generators.
    pub fn content_key(&self) -> String {
        let r = &self.ring;
        let gens: Vec<String> = self.generators.iter().map(|g| r.display(g)).collect();
        format!(
            "p={};vars={};order={:?}{:?};gens=({})",
            r.p(),
            r.vars.join(","),
            r.order.kind,
            r.order.priority,
            gens.join(", ")
        )
    }
}

/// A reduced Gröbner basis: monic, minimal, tail-reduced, sorted by leading term.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    elements: Vec<Polynomial>,
    #[serde(skip)]
    reducer: OnceLock<Basis>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.elements == other.elements
    }
}

impl Eq for GroebnerBasis {}

impl std::hash::Hash for GroebnerBasis {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ring.hash(state);
        self.elements.hash(state);
    }
}

impl GroebnerBasis {
    /// Wraps elements that are already a reduced Gröbner basis (used when
    /// loading persisted values; see [`GroebnerBasis::validate`]).
    pub fn from_reduced(ring: Arc<PolyRing>, elements: Vec<Polynomial>) -> Self {
        GroebnerBasis { ring, elements, reducer: OnceLock::new() }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_nonzero_constant()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub(crate) fn reducer(&self) -> &Basis {
        self.reducer.get_or_init(|| {
            Basis::from_monic(self.elements.iter().map(|g| ModVec::from_column(std::slice::from_ref(g), 0)).collect())
        })
    }

    /// Checks the reduced-basis invariants: monic, no term divisible by
    /// another element's leading term, S-polynomials reduce to zero.
    pub fn validate(&self) -> Result<()> {
        let r = &*self.ring;
        for (i, g) in self.elements.iter().enumerate() {
            r.check(g)?;
            let (_, lc) = g.leading().ok_or_else(|| Error::Verification("zero element".into()))?;
            if *lc != 1 {
                return Err(Error::Verification("basis element not monic".into()));
            }
            for (j, h) in self.elements.iter().enumerate() {
                if i == j {
                    continue;
                }
                let hl = h.leading_monomial().unwrap();
                if g.terms().iter().any(|(m, _)| hl.divides(m)) {
                    return Err(Error::Verification(format!(
                        "term of element {i} divisible by leading term of element {j}"
                    )));
                }
            }
        }
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                if !self.normal_form(&s_polynomial(r, &self.elements[i], &self.elements[j])).is_zero() {
                    return Err(Error::Verification(format!("S({i},{j}) does not reduce to zero")));
                }
            }
        }
        Ok(())
    }

    /// The unique remainder of `f` modulo the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        if self.elements.is_empty() || f.is_zero() {
            return f.clone();
        }
        let v = self.reducer().reduce(&self.ring, ModVec::from_column(std::slice::from_ref(f), 0));
        v.to_column(0, 1).pop().unwrap()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// `S(f, g)` for monic or non-monic `f`, `g`.
pub fn s_polynomial(ring: &PolyRing, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let lcm = fm.lcm(gm);
    let a = ring.mul_term(f, &fm.quotient_of(&lcm).unwrap(), ring.prime.inv(*fc).unwrap());
    let b = ring.mul_term(g, &gm.quotient_of(&lcm).unwrap(), ring.prime.inv(*gc).unwrap());
    ring.sub(&a, &b)
}

static GB_CACHE: OnceLock<MemoTable<GroebnerBasis>> = OnceLock::new();

/// The process-wide Gröbner basis memo, keyed by [`Ideal::content_key`].
pub fn gb_cache() -> &'static MemoTable<GroebnerBasis> {
    global(&GB_CACHE)
}

/// Reduced Gröbner basis of `ideal`, uncached.
pub fn buchberger_uncached(ideal: &Ideal) -> Result<GroebnerBasis> {
    let r = &*ideal.ring;
    let gens = ideal.generators.iter().map(|g| ModVec::from_column(std::slice::from_ref(g), 0));
    let gb = module_groebner(r, gens, true)?;
    let elements: Vec<Polynomial> = gb.into_iter().map(|v| v.to_column(0, 1).pop().unwrap()).collect();
    let out = GroebnerBasis::from_reduced(ideal.ring.clone(), elements);
    for g in &ideal.generators {
        if !out.contains(g) {
            return Err(Error::Verification(format!(
                "generator {} does not reduce to zero",
                r.display(g)
            )));
        }
    }
    Ok(out)
}

/// Reduced Gröbner basis of `ideal` under its ring's order, memoized.
pub fn buchberger(ideal: &Ideal) -> Result<Arc<GroebnerBasis>> {
    gb_cache().get_or_try_insert_with(ideal.content_key(), || buchberger_uncached(ideal))
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    gb.normal_form(f)
}

/// `(I : f) = { g : g f in I }`, computed from the syzygies of `(f, g_1, .., g_m)`.
pub fn colon_ideal(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::Precondition("colon by the zero polynomial".into()));
    }
    let r = &*ideal.ring;
    let gb = buchberger(ideal)?;
    // (f, 1) and (g, 0) in P^2 under position-over-term: basis elements with
    // leading position 1 have vanishing first entry, so their second entry
    // ranges over the colon ideal.
    let mut gens = vec![ModVec::from_column(&[f.clone(), r.one()], 0)];
    for g in gb.elements() {
        gens.push(ModVec::from_column(&[g.clone(), Polynomial::zero()], 0));
    }
    let basis = module_groebner(r, gens, false)?;
    let colon_gens: Vec<Polynomial> = basis
        .iter()
        .filter(|v| v.lead().unwrap().pos == 1)
        .map(|v| v.to_column(1, 1).pop().unwrap())
        .collect();
    let colon = Ideal::new(ideal.ring.clone(), colon_gens)?;
    let cgb = buchberger(&colon)?;
    for g in cgb.elements() {
        if !gb.contains(&r.mul(g, f)) {
            return Err(Error::Verification("colon generator times f not in I".into()));
        }
    }
    Ideal::new(ideal.ring.clone(), cgb.elements().to_vec())
}

/// Size of the largest variable set `S` such that no leading monomial of
/// `gb` is supported inside `S`; `-1` for the unit ideal.
pub fn krull_dimension_of(gb: &GroebnerBasis) -> i64 {
    let leads: Vec<&Monomial> = gb.elements().iter().map(|g| g.leading_monomial().unwrap()).collect();
    monomial_dimension(&leads, gb.ring.nvars())
}

/// Krull dimension of `P / (leads)` for monomials `leads`; `-1` when some
/// lead is `1`.
pub fn monomial_dimension(leads: &[&Monomial], n: usize) -> i64 {
    if leads.iter().any(|m| m.is_one()) {
        return -1;
    }
    let supports: Vec<u64> = leads.iter().map(|m| m.support().fold(0u64, |a, v| a | (1 << v))).collect();
    // Depth-first search over independent sets, pruned by the best size so far.
    fn extend(next: usize, n: usize, set: u64, size: usize, supports: &[u64], best: &mut usize) {
        *best = (*best).max(size);
        if size + (n - next) <= *best {
            return;
        }
        for v in next..n {
            let s = set | (1 << v);
            if supports.iter().all(|&m| m & !s != 0) {
                extend(v + 1, n, s, size + 1, supports, best);
            }
        }
    }
    let mut best = 0;
    extend(0, n, 0, 0, &supports, &mut best);
    best as i64
}
