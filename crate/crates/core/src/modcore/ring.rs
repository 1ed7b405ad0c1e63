use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::arith::{parse_polynomial, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, krull_dimension_of, GroebnerBasis, Ideal};

/// `R = F_p[x_1..x_n] / I` with the reduced Gröbner basis of `I` cached.
///
/// Local notions (minimality, depth, Betti and Bass numbers) are taken at the
/// irrelevant ideal `m = (x_1..x_n)`.
pub struct QuotientRing {
    poly: Arc<PolyRing>,
    ideal: Ideal,
    gb: Arc<GroebnerBasis>,
    dim: OnceLock<usize>,
    key: OnceLock<String>,
}

/// Shared handle; rings are immutable once built.
pub type Ring = Arc<QuotientRing>;

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientRing({})", self.describe())
    }
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly && self.gb.elements() == other.gb.elements()
    }
}

impl Eq for QuotientRing {}

impl QuotientRing {
    /// Builds `P / I`; refuses the zero ring.
    pub fn new(ideal: Ideal) -> Result<Ring> {
        let gb = buchberger(&ideal)?;
        if gb.is_unit_ideal() {
            return Err(Error::ZeroRing);
        }
        Ok(Arc::new(QuotientRing {
            poly: ideal.ring().clone(),
            ideal,
            gb,
            dim: OnceLock::new(),
            key: OnceLock::new(),
        }))
    }

    pub fn polynomial_ring(poly: PolyRing) -> Result<Ring> {
        Self::new(Ideal::zero(Arc::new(poly)))
    }

    /// Grevlex ring from textual generators, e.g. `parse(2, &["x","y"], &["x*y"])`.
    pub fn parse(p: u32, vars: &[&str], gens: &[&str]) -> Result<Ring> {
        let poly = Arc::new(PolyRing::grevlex(p, vars)?);
        let gens = gens.iter().map(|g| parse_polynomial(&poly, g)).collect::<Result<Vec<_>>>()?;
        Self::new(Ideal::new(poly, gens)?)
    }

    pub fn poly(&self) -> &PolyRing {
        &self.poly
    }

    pub fn poly_arc(&self) -> &Arc<PolyRing> {
        &self.poly
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn p(&self) -> u32 {
        self.poly.p()
    }

    /// Normal form modulo `I`.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.gb.normal_form(f)
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.reduce(&self.poly.mul(f, g))
    }

    pub fn parse_element(&self, text: &str) -> Result<Polynomial> {
        Ok(self.reduce(&parse_polynomial(&self.poly, text)?))
    }

    /// Krull dimension from the leading-term ideal.
    pub fn krull_dimension(&self) -> usize {
        *self.dim.get_or_init(|| krull_dimension_of(&self.gb) as usize)
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.gb.is_zero_ideal()
    }

    /// Canonical content key: characteristic, variables, order and reduced basis.
    pub fn content_key(&self) -> &str {
        self.key.get_or_init(|| {
            Ideal::new(self.poly.clone(), self.gb.elements().to_vec()).expect("canonical").content_key()
        })
    }

    /// Human-readable form like `F_2[x,y]/(x*y)`.
    pub fn describe(&self) -> String {
        let base = format!("F_{}[{}]", self.p(), self.poly.vars.join(","));
        if self.gb.is_zero_ideal() {
            base
        } else {
            let gens: Vec<String> = self.gb.elements().iter().map(|g| self.poly.display(g)).collect();
            format!("{base}/({})", gens.join(", "))
        }
    }
}
