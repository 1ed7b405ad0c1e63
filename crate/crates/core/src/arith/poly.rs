//! Sparse multivariate polynomials over F_p.
//!
//! A [`Polynomial`] is a bare term list; the ring context ([`PolyRing`])
//! supplies the characteristic, the variable names and the monomial order,
//! and performs all arithmetic.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MonomialOrder};
use super::prime::Prime;
use crate::error::{Error, Result};

/// Terms strictly descending in the ring's monomial order, coefficients
/// nonzero canonical residues. The zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    /// Total degree (maximum over terms); `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Lowest total degree of a term; `None` for zero.
    pub fn low_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    /// Coefficient of the monomial `1`.
    pub fn constant_term(&self) -> u32 {
        self.terms.iter().find(|(m, _)| m.is_one()).map_or(0, |t| t.1)
    }

    /// A nonzero constant, i.e. a unit of F_p.
    pub fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    /// Trusts the caller that `terms` is already canonical.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, u32)>) -> Self {
        Polynomial { terms }
    }
}

/// Arithmetic context: characteristic, variable names and monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyRing {
    pub prime: Prime,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
}

/// Binary operation selector for [`PolyRing::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
}

impl PolyRing {
    pub fn new(prime: Prime, vars: Vec<String>, order: MonomialOrder) -> Result<Self> {
        if order.nvars() != vars.len() {
            return Err(Error::Structural(format!(
                "order covers {} variables, ring declares {}",
                order.nvars(),
                vars.len()
            )));
        }
        Ok(PolyRing { prime, vars, order })
    }

    /// Grevlex ring over the given variables.
    pub fn grevlex(p: u32, vars: &[&str]) -> Result<Self> {
        let prime = Prime::new(p)?;
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        Self::new(prime, names, MonomialOrder::grevlex(vars.len()))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn p(&self) -> u32 {
        self.prime.value()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(&self, c: u32) -> Polynomial {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.term(Monomial::var(self.nvars(), i), 1)
    }

    pub fn term(&self, m: Monomial, c: u32) -> Polynomial {
        let c = c % self.p();
        if c == 0 {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Canonicalizes an arbitrary term list: sorts, merges duplicates, drops zeros.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, u32)>) -> Polynomial {
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % self.p();
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = self.prime.add(last.1, c),
                _ => {
                    if let Some(last) = out.last() {
                        if last.1 == 0 {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|t| t.1 == 0) {
            out.pop();
        }
        Polynomial { terms: out }
    }

    /// Verifies the term list is canonical for this ring.
    pub fn check(&self, f: &Polynomial) -> Result<()> {
        for (i, (m, c)) in f.terms.iter().enumerate() {
            if m.nvars() != self.nvars() {
                return Err(Error::Structural(format!(
                    "monomial has {} exponents, ring has {} variables",
                    m.nvars(),
                    self.nvars()
                )));
            }
            if *c == 0 || *c >= self.p() {
                return Err(Error::Structural(format!("coefficient {c} not canonical")));
            }
            if i > 0 && self.cmp(&f.terms[i - 1].0, m) != Ordering::Greater {
                return Err(Error::Structural("terms not strictly descending".into()));
            }
        }
        Ok(())
    }

    /// `f + c * m * g`, merging two sorted term lists.
    pub fn add_scaled_shift(&self, f: &Polynomial, c: u32, m: &Monomial, g: &Polynomial) -> Polynomial {
        if c == 0 || g.is_zero() {
            return f.clone();
        }
        let fp = self.prime;
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |t: &(Monomial, u32)| (t.0.mul(m), fp.mul(t.1, c));
        let mut gj = g.terms.first().map(shifted);
        while i < f.terms.len() || gj.is_some() {
            match (&f.terms.get(i), &gj) {
                (Some(a), Some(b)) => match self.cmp(&a.0, &b.0) {
                    Ordering::Greater => {
                        out.push((*a).clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(gj.take().unwrap());
                        j += 1;
                        gj = g.terms.get(j).map(shifted);
                    }
                    Ordering::Equal => {
                        let s = fp.add(a.1, b.1);
                        if s != 0 {
                            out.push((a.0.clone(), s));
                        }
                        i += 1;
                        j += 1;
                        gj = g.terms.get(j).map(shifted);
                    }
                },
                (Some(a), None) => {
                    out.push((*a).clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(gj.take().unwrap());
                    j += 1;
                    gj = g.terms.get(j).map(shifted);
                }
                (None, None) => unreachable!(),
            }
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.add_scaled_shift(f, 1, &Monomial::one(self.nvars()), g)
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.add_scaled_shift(f, self.p() - 1, &Monomial::one(self.nvars()), g)
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        self.scale(f, self.p() - 1)
    }

    pub fn scale(&self, f: &Polynomial, c: u32) -> Polynomial {
        let c = c % self.p();
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial { terms: f.terms.iter().map(|(m, a)| (m.clone(), self.prime.mul(*a, c))).collect() }
    }

    /// `c * m * f`; order is preserved because monomial orders are multiplicative.
    pub fn mul_term(&self, f: &Polynomial, m: &Monomial, c: u32) -> Polynomial {
        let c = c % self.p();
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f.terms.iter().map(|(a, b)| (a.mul(m), self.prime.mul(*b, c))).collect(),
        }
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        if f.is_zero() || g.is_zero() {
            return Polynomial::zero();
        }
        let (small, large) = if f.len() <= g.len() { (f, g) } else { (g, f) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return self.mul_term(large, m, *c);
        }
        let mut prods = Vec::with_capacity(f.len() * g.len());
        for (a, ca) in &f.terms {
            for (b, cb) in &g.terms {
                prods.push((a.mul(b), self.prime.mul(*ca, *cb)));
            }
        }
        self.from_terms(prods)
    }

    pub fn pow(&self, f: &Polynomial, mut n: u64) -> Polynomial {
        let mut acc = self.one();
        let mut base = f.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Validated binary operation; mismatched variable counts are structural errors.
    pub fn apply(&self, f: &Polynomial, g: &Polynomial, op: PolyOp) -> Result<Polynomial> {
        self.check(f)?;
        self.check(g)?;
        Ok(match op {
            PolyOp::Add => self.add(f, g),
            PolyOp::Mul => self.mul(f, g),
        })
    }

    /// `f^(p^e)` by exponent scaling. Coefficients of F_p are fixed by
    /// Frobenius, and scaling preserves the term order.
    pub fn frobenius_power(&self, f: &Polynomial, e: u32) -> Result<Polynomial> {
        if e == 0 {
            return Err(Error::Precondition("Frobenius exponent e must be >= 1".into()));
        }
        let q = self.prime.power_of_p(e)?;
        let terms = f
            .terms
            .iter()
            .map(|(m, c)| Ok((m.scale(q)?, *c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { terms })
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self, f: &Polynomial) -> Polynomial {
        match f.leading() {
            None => Polynomial::zero(),
            Some((_, 1)) => f.clone(),
            Some((_, c)) => self.scale(f, self.prime.inv(*c).expect("nonzero leading coefficient")),
        }
    }

    pub fn display_monomial(&self, m: &Monomial) -> String {
        let mut s = String::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(&self.vars[i]);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    /// Canonical text form, e.g. `x^2*y + 2*x + 1`.
    pub fn display(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = f
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    c.to_string()
                } else if *c == 1 {
                    self.display_monomial(m)
                } else {
                    format!("{c}*{}", self.display_monomial(m))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_polynomial;
    use proptest::prelude::*;

    fn ring(p: u32) -> PolyRing {
        PolyRing::grevlex(p, &["x", "y"]).unwrap()
    }

    fn poly(r: &PolyRing, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn char_two_square() {
        let r = ring(2);
        let f = poly(&r, "x + y");
        assert_eq!(r.mul(&f, &f), poly(&r, "x^2 + y^2"));
        assert!(r.mul(&f, &Polynomial::zero()).is_zero());
    }

    #[test]
    fn expansion_oracle_p3() {
        // (x+1)(x+2) = x^2 + 3x + 2 = x^2 + 2 over F_3
        let r = ring(3);
        let prod = r.mul(&poly(&r, "x + 1"), &poly(&r, "x + 2"));
        assert_eq!(prod.terms().len(), 2);
        assert_eq!(prod, poly(&r, "x^2 + 2"));
    }

    #[test]
    fn mismatched_variable_count() {
        let r = ring(3);
        let r3 = PolyRing::grevlex(3, &["x", "y", "z"]).unwrap();
        let f = poly(&r3, "x*z");
        assert!(matches!(r.apply(&f, &r.one(), PolyOp::Add), Err(Error::Structural(_))));
    }

    #[test]
    fn frobenius_examples() {
        let r2 = ring(2);
        assert_eq!(r2.frobenius_power(&poly(&r2, "x+y"), 1).unwrap(), poly(&r2, "x^2+y^2"));
        assert_eq!(r2.frobenius_power(&r2.one(), 3).unwrap(), r2.one());
        let r5 = ring(5);
        let f = poly(&r5, "x^2*y + 3");
        let expect = poly(&r5, "x^10*y^5 + 3");
        assert_eq!(r5.frobenius_power(&f, 1).unwrap(), expect);
        // repeated squaring oracle
        assert_eq!(r5.pow(&f, 5), expect);
        assert!(r5.frobenius_power(&f, 0).is_err());
    }

    #[test]
    fn frobenius_overflow_signalled() {
        let r = ring(3);
        let f = r.term(Monomial::from_exponents(&[1 << 31, 0]), 1);
        assert!(matches!(r.frobenius_power(&f, 1), Err(Error::Overflow(_))));
    }

    fn small_poly(p: u32) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(((0u32..3, 0u32..3), 0u32..p), 0..5).prop_map(move |ts| {
            let r = ring(p);
            r.from_terms(ts.into_iter().map(|((a, b), c)| (Monomial::from_exponents(&[a, b]), c)).collect())
        })
    }

    fn with_prime() -> impl Strategy<Value = (u32, Polynomial, Polynomial)> {
        prop_oneof![Just(2u32), Just(3u32), Just(5u32)]
            .prop_flat_map(|p| (Just(p), small_poly(p), small_poly(p)))
    }

    proptest! {
        #[test]
        fn frobenius_is_ring_hom((p, f, g) in with_prime(), e in 1u32..3) {
            let r = ring(p);
            let fg = r.frobenius_power(&r.mul(&f, &g), e).unwrap();
            let prod = r.mul(&r.frobenius_power(&f, e).unwrap(), &r.frobenius_power(&g, e).unwrap());
            prop_assert_eq!(fg, prod);
            let sum = r.frobenius_power(&r.add(&f, &g), e).unwrap();
            let sum2 = r.add(&r.frobenius_power(&f, e).unwrap(), &r.frobenius_power(&g, e).unwrap());
            prop_assert_eq!(sum, sum2);
        }

        #[test]
        fn frobenius_matches_repeated_multiplication((p, f, _g) in with_prime(), e in 1u32..3) {
            let r = ring(p);
            prop_assume!(f.degree().unwrap_or(0) <= 3);
            let q = (p as u64).pow(e);
            prop_assert_eq!(r.frobenius_power(&f, e).unwrap(), r.pow(&f, q));
        }

        #[test]
        fn canonical_form_unique((p, f, g) in with_prime()) {
            let r = ring(p);
            prop_assert!(r.add(&f, &r.neg(&f)).is_zero());
            prop_assert!(r.check(&r.mul(&f, &g)).is_ok());
            prop_assert_eq!(r.add(&f, &g), r.add(&g, &f));
            prop_assert_eq!(r.mul(&f, &g), r.mul(&g, &f));
        }
    }
}
