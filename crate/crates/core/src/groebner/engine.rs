//! Buchberger's algorithm for submodules of a free module `P^r`.
//!
//! Elements are sparse vectors of terms `(position, monomial, coefficient)`
//! ordered position-over-term: a smaller position index is larger, ties are
//! broken by the ring's monomial order. Ideals are the rank-one case, where
//! the product criterion is also valid.
//!
//! Pair handling follows the Gebauer–Möller update; pairs are selected by the
//! normal strategy (smallest lcm degree first), ties broken by insertion
//! index so every run is deterministic.

use std::cmp::Ordering;

use crate::arith::{Monomial, PolyRing, Polynomial};
use crate::error::{Error, Result};

/// Default ceiling on processed S-pairs per Gröbner basis computation.
pub const DEFAULT_MAX_PAIRS: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MTerm {
    pub pos: u32,
    pub mono: Monomial,
    pub coef: u32,
}

/// A module element with terms strictly descending in position-over-term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ModVec(pub Vec<MTerm>);

#[inline]
pub fn term_cmp(ring: &PolyRing, a_pos: u32, a: &Monomial, b_pos: u32, b: &Monomial) -> Ordering {
    match b_pos.cmp(&a_pos) {
        Ordering::Equal => ring.cmp(a, b),
        o => o,
    }
}

impl ModVec {
    pub fn zero() -> Self {
        ModVec(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lead(&self) -> Option<&MTerm> {
        self.0.first()
    }

    /// Builds a vector from per-position polynomials (`column[k]` at position `offset + k`).
    pub fn from_column(column: &[Polynomial], offset: u32) -> Self {
        let mut terms = Vec::new();
        for (k, f) in column.iter().enumerate() {
            for (m, c) in f.terms() {
                terms.push(MTerm { pos: offset + k as u32, mono: m.clone(), coef: *c });
            }
        }
        ModVec(terms)
    }

    /// Splits positions `offset..offset+len` back into polynomials; other positions are ignored.
    pub fn to_column(&self, offset: u32, len: usize) -> Vec<Polynomial> {
        let mut parts: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); len];
        for t in &self.0 {
            if t.pos >= offset && ((t.pos - offset) as usize) < len {
                parts[(t.pos - offset) as usize].push((t.mono.clone(), t.coef));
            }
        }
        parts.into_iter().map(Polynomial::from_sorted_unchecked).collect()
    }

    /// Returns `a + c * m * b`, where `m` shifts every term of `b`.
    pub fn add_scaled_shift(ring: &PolyRing, a: &[MTerm], c: u32, m: &Monomial, b: &[MTerm]) -> ModVec {
        let fp = ring.prime;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let shift = |t: &MTerm| MTerm { pos: t.pos, mono: t.mono.mul(m), coef: fp.mul(t.coef, c) };
        let mut bj = b.first().map(shift);
        loop {
            match (a.get(i), bj.as_ref()) {
                (Some(x), Some(y)) => match term_cmp(ring, x.pos, &x.mono, y.pos, &y.mono) {
                    Ordering::Greater => {
                        out.push(x.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(bj.take().unwrap());
                        j += 1;
                        bj = b.get(j).map(shift);
                    }
                    Ordering::Equal => {
                        let s = fp.add(x.coef, y.coef);
                        if s != 0 {
                            out.push(MTerm { pos: x.pos, mono: x.mono.clone(), coef: s });
                        }
                        i += 1;
                        j += 1;
                        bj = b.get(j).map(shift);
                    }
                },
                (Some(x), None) => {
                    out.extend_from_slice(&a[i..]);
                    let _ = x;
                    break;
                }
                (None, Some(_)) => {
                    out.push(bj.take().unwrap());
                    j += 1;
                    bj = b.get(j).map(shift);
                }
                (None, None) => break,
            }
        }
        ModVec(out)
    }

    pub fn scale(&self, ring: &PolyRing, c: u32) -> ModVec {
        ModVec(
            self.0
                .iter()
                .map(|t| MTerm { pos: t.pos, mono: t.mono.clone(), coef: ring.prime.mul(t.coef, c) })
                .collect(),
        )
    }

    pub fn monic(self, ring: &PolyRing) -> ModVec {
        match self.lead() {
            None => self,
            Some(t) if t.coef == 1 => self,
            Some(t) => {
                let inv = ring.prime.inv(t.coef).expect("nonzero lead");
                self.scale(ring, inv)
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: u64,
}

/// Cheap divisibility prefilter: bit `v` set when variable `v` occurs.
#[inline]
fn support_mask(m: &Monomial) -> u64 {
    m.exponents()
        .iter()
        .enumerate()
        .fold(0u64, |acc, (v, &e)| if e > 0 { acc | (1 << (v % 64)) } else { acc })
}

/// A list of monic module elements with their leading terms indexed for
/// reduction.
#[derive(Clone, Debug, Default)]
pub struct Basis {
    elems: Vec<ModVec>,
    lead_deg: Vec<u64>,
    lead_mask: Vec<u64>,
}

impl Basis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_monic(elems: Vec<ModVec>) -> Self {
        let mut b = Self::new();
        for e in elems {
            b.push(e);
        }
        b
    }

    pub fn push(&mut self, v: ModVec) -> usize {
        let lead = v.lead().expect("basis elements are nonzero");
        self.lead_deg.push(lead.mono.degree());
        self.lead_mask.push(support_mask(&lead.mono));
        self.elems.push(v);
        self.elems.len() - 1
    }

    pub fn elems(&self) -> &[ModVec] {
        &self.elems
    }

    pub fn into_elems(self) -> Vec<ModVec> {
        self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    fn lead(&self, k: usize) -> &MTerm {
        &self.elems[k].0[0]
    }

    /// Reducer for the term `(pos, mono)`: smallest lead degree, then smallest index.
    fn find_reducer(&self, pos: u32, mono: &Monomial, skip: Option<usize>) -> Option<usize> {
        let mask = support_mask(mono);
        let deg = mono.degree();
        let mut best: Option<usize> = None;
        for k in 0..self.elems.len() {
            if Some(k) == skip || self.lead_deg[k] > deg || self.lead_mask[k] & !mask != 0 {
                continue;
            }
            let l = self.lead(k);
            if l.pos == pos && l.mono.divides(mono) {
                match best {
                    Some(b) if self.lead_deg[b] <= self.lead_deg[k] => {}
                    _ => best = Some(k),
                }
                if self.lead_deg[k] == 0 {
                    break;
                }
            }
        }
        best
    }

    /// Full normal form of `v` (every term irreducible).
    pub fn reduce(&self, ring: &PolyRing, v: ModVec) -> ModVec {
        self.reduce_skipping(ring, v, None)
    }

    fn reduce_skipping(&self, ring: &PolyRing, v: ModVec, skip: Option<usize>) -> ModVec {
        let mut rem: Vec<MTerm> = Vec::new();
        let mut work = v.0;
        let mut idx = 0;
        while idx < work.len() {
            let t = &work[idx];
            match self.find_reducer(t.pos, &t.mono, skip) {
                Some(k) => {
                    let g = &self.elems[k].0;
                    let q = g[0].mono.quotient_of(&t.mono).expect("divisible");
                    let c = ring.prime.neg(t.coef);
                    work = ModVec::add_scaled_shift(ring, &work[idx + 1..], c, &q, &g[1..]).0;
                    idx = 0;
                }
                None => {
                    rem.push(work[idx].clone());
                    idx += 1;
                }
            }
        }
        ModVec(rem)
    }

    /// True when `v` reduces to zero, i.e. lies in the span (requires a Gröbner basis).
    pub fn contains(&self, ring: &PolyRing, v: &ModVec) -> bool {
        self.reduce(ring, v.clone()).is_zero()
    }
}

/// Incremental Buchberger engine. Push generators, then [`GbEngine::complete`].
pub struct GbEngine<'r> {
    ring: &'r PolyRing,
    basis: Basis,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    product_criterion: bool,
    max_pairs: usize,
    processed: usize,
}

impl<'r> GbEngine<'r> {
    /// `product_criterion` is only sound for ideals (rank one).
    pub fn new(ring: &'r PolyRing, product_criterion: bool) -> Self {
        GbEngine {
            ring,
            basis: Basis::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            product_criterion,
            max_pairs: DEFAULT_MAX_PAIRS,
            processed: 0,
        }
    }

    pub fn with_max_pairs(mut self, max_pairs: usize) -> Self {
        self.max_pairs = max_pairs;
        self
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn pairs_processed(&self) -> usize {
        self.processed
    }

    /// Adds a generator; pending pairs are created but not processed.
    pub fn push(&mut self, v: ModVec) {
        let r = self.basis.reduce(self.ring, v);
        if !r.is_zero() {
            self.insert(r.monic(self.ring));
        }
    }

    fn coprime(&self, i: usize, j: usize) -> bool {
        self.product_criterion && self.basis.lead(i).mono.is_coprime(&self.basis.lead(j).mono)
    }

    fn insert(&mut self, h: ModVec) {
        let t = self.basis.len();
        let (hpos, hmono) = {
            let l = h.lead().unwrap();
            (l.pos, l.mono.clone())
        };
        self.basis.push(h);
        self.active.push(true);

        let mut cands: Vec<Pair> = (0..t)
            .filter(|&i| self.active[i] && self.basis.lead(i).pos == hpos)
            .map(|i| {
                let lcm = self.basis.lead(i).mono.lcm(&hmono);
                let deg = lcm.degree();
                Pair { i, j: t, lcm, deg }
            })
            .collect();

        // Chain criterion among the new pairs.
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = cands.pop() {
            let dominated = |q: &Pair| q.lcm.divides(&p.lcm);
            if self.coprime(p.i, p.j) || (!cands.iter().any(dominated) && !kept.iter().any(dominated)) {
                kept.push(p);
            }
        }
        kept.retain(|p| !self.coprime(p.i, p.j));

        // Old pairs made redundant by the new leading term.
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if basis.lead(p.i).pos != hpos || !hmono.divides(&p.lcm) {
                return true;
            }
            let li = basis.lead(p.i).mono.lcm(&hmono);
            let lj = basis.lead(p.j).mono.lcm(&hmono);
            li == p.lcm || lj == p.lcm
        });
        kept.reverse();
        self.pairs.extend(kept);

        for i in 0..t {
            if self.active[i] && self.basis.lead(i).pos == hpos && hmono.divides(&self.basis.lead(i).mono) {
                self.active[i] = false;
            }
        }
    }

    fn select(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (a.deg, a.j, a.i).cmp(&(b.deg, b.j, b.i)))
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_vector(&self, p: &Pair) -> ModVec {
        let gi = &self.basis.elems[p.i].0;
        let gj = &self.basis.elems[p.j].0;
        let qi = gi[0].mono.quotient_of(&p.lcm).unwrap();
        let qj = gj[0].mono.quotient_of(&p.lcm).unwrap();
        let a = ModVec::add_scaled_shift(self.ring, &[], 1, &qi, &gi[1..]);
        ModVec::add_scaled_shift(self.ring, &a.0, self.ring.p() - 1, &qj, &gj[1..])
    }

    /// Processes pending pairs until the basis is a Gröbner basis.
    pub fn complete(&mut self) -> Result<()> {
        while let Some(p) = self.select() {
            self.processed += 1;
            if self.processed > self.max_pairs {
                return Err(Error::Resource(format!(
                    "Gröbner basis computation exceeded {} S-pairs",
                    self.max_pairs
                )));
            }
            let s = self.s_vector(&p);
            let r = self.basis.reduce(self.ring, s);
            if !r.is_zero() {
                self.insert(r.monic(self.ring));
            }
        }
        Ok(())
    }

    /// Minimal, tail-reduced, monic basis sorted by increasing leading term.
    pub fn reduced(&self) -> Vec<ModVec> {
        let b = &self.basis;
        let n = b.len();
        let mut minimal: Vec<usize> = Vec::new();
        for k in 0..n {
            let lk = b.lead(k);
            let redundant = (0..n).any(|o| {
                if o == k {
                    return false;
                }
                let lo = b.lead(o);
                lo.pos == lk.pos && lo.mono.divides(&lk.mono) && (lo.mono != lk.mono || o < k)
            });
            if !redundant {
                minimal.push(k);
            }
        }
        let min_basis = Basis::from_monic(minimal.iter().map(|&k| b.elems[k].clone()).collect());
        let mut out: Vec<ModVec> = (0..min_basis.len())
            .map(|k| {
                let v = &min_basis.elems[k];
                let tail = ModVec(v.0[1..].to_vec());
                let mut r = min_basis.reduce_skipping(self.ring, tail, Some(k));
                r.0.insert(0, v.0[0].clone());
                r
            })
            .collect();
        out.sort_by(|a, b| {
            let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
            term_cmp(self.ring, x.pos, &x.mono, y.pos, &y.mono)
        });
        out
    }
}

/// Gröbner basis of the span of `gens`, reduced.
pub fn module_groebner(ring: &PolyRing, gens: impl IntoIterator<Item = ModVec>, rank_one: bool) -> Result<Vec<ModVec>> {
    let mut eng = GbEngine::new(ring, rank_one);
    for g in gens {
        eng.push(g);
    }
    eng.complete()?;
    Ok(eng.reduced())
}
