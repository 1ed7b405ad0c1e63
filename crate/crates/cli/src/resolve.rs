//! Turns parsed declarations into engine objects.

use std::collections::BTreeMap;
use std::sync::Arc;

use frobforge_core::arith::{parse_polynomial, PolyRing, Polynomial};
use frobforge_core::groebner::Ideal;
use frobforge_core::modcore::{FreeComplex, ModuleMap, PresentedModule, QuotientRing, Ring};
use frobforge_core::Error;

use crate::dsl::{position_of, Decl, DslError, Entry, Matrix, ModuleBody, Pos, Program};

/// Resolved declarations, keyed by name in declaration order.
#[derive(Clone, Debug, Default)]
pub struct Declarations {
    pub rings: Vec<(String, Ring)>,
    pub modules: Vec<(String, String, PresentedModule)>,
    pub complexes: Vec<(String, String, FreeComplex)>,
}

impl Declarations {
    pub fn ring(&self, name: &str) -> Option<&Ring> {
        self.rings.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }

    pub fn module(&self, name: &str) -> Option<&PresentedModule> {
        self.modules.iter().find(|(n, _, _)| n == name).map(|(_, _, m)| m)
    }

    pub fn complex(&self, name: &str) -> Option<&FreeComplex> {
        self.complexes.iter().find(|(n, _, _)| n == name).map(|(_, _, c)| c)
    }
}

fn semantic(pos: Pos, message: impl Into<String>) -> DslError {
    DslError { pos, message: message.into() }
}

/// Maps a core error at an entry to a located message; parse offsets are
/// relative to the whitespace-free entry text.
fn entry_error(e: &Entry, err: Error) -> DslError {
    match err {
        Error::Parse { offset, message } => {
            let at = position_of(&e.text, offset);
            let pos = Pos { line: e.pos.line, col: e.pos.col + at.col - 1 };
            semantic(pos, format!("in '{}': {message}", e.text))
        }
        other => semantic(e.pos, format!("in '{}': {other}", e.text)),
    }
}

fn parse_entry(poly: &PolyRing, e: &Entry) -> Result<Polynomial, DslError> {
    parse_polynomial(poly, &e.text).map_err(|err| entry_error(e, err))
}

fn matrix(ring: &Ring, rows: &Matrix) -> Result<ModuleMap, DslError> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|e| parse_entry(ring.poly(), e).map(|f| ring.reduce(&f))).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    ModuleMap::from_rows(ring, parsed).map_err(|err| semantic(rows[0][0].pos, err.to_string()))
}

/// Resolves names, validates characteristic and variables, and rejects the
/// zero ring and complexes with `d^2 != 0`.
pub fn resolve(prog: &Program) -> Result<Declarations, DslError> {
    let mut out = Declarations::default();
    let mut seen = BTreeMap::new();
    for d in &prog.decls {
        let (name, pos) = match d {
            Decl::Ring(r) => (&r.name, r.pos),
            Decl::Module(m) => (&m.name, m.pos),
            Decl::Complex(c) => (&c.name, c.pos),
        };
        if let Some(first) = seen.insert(name.clone(), pos) {
            return Err(semantic(pos, format!("'{name}' is already declared at {first}")));
        }
        let ring_of = |r: &str| out.ring(r).cloned().ok_or_else(|| semantic(pos, format!("unknown ring '{r}'")));
        match d {
            Decl::Ring(r) => {
                let vars: Vec<&str> = r.vars.iter().map(|s| s.as_str()).collect();
                if vars.is_empty() {
                    return Err(semantic(r.pos, "a ring needs at least one variable"));
                }
                if let Some(v) = vars.iter().enumerate().find(|(i, v)| vars[..*i].contains(v)) {
                    return Err(semantic(r.pos, format!("variable '{}' declared twice", v.1)));
                }
                let poly = Arc::new(PolyRing::grevlex(r.p, &vars).map_err(|e| semantic(r.pos, e.to_string()))?);
                let gens = r.ideal.iter().map(|e| parse_entry(&poly, e)).collect::<Result<Vec<_>, _>>()?;
                let ideal = Ideal::new(poly, gens).map_err(|e| semantic(r.pos, e.to_string()))?;
                let ring = QuotientRing::new(ideal).map_err(|e| match e {
                    Error::ZeroRing => semantic(r.pos, "the ideal contains 1, so the quotient is the zero ring"),
                    other => semantic(r.pos, other.to_string()),
                })?;
                out.rings.push((r.name.clone(), ring));
            }
            Decl::Module(m) => {
                let ring = ring_of(&m.ring)?;
                let module = match &m.body {
                    ModuleBody::Coker(rows) => PresentedModule::new(ring.clone(), matrix(&ring, rows)?),
                    ModuleBody::Free(n) => PresentedModule::free(ring.clone(), *n),
                    ModuleBody::Residue => PresentedModule::residue_field(ring.clone()),
                };
                out.modules.push((m.name.clone(), m.ring.clone(), module));
            }
            Decl::Complex(c) => {
                let ring = ring_of(&c.ring)?;
                let maps = c.maps.iter().rev().map(|m| matrix(&ring, m)).collect::<Result<Vec<_>, _>>()?;
                let complex = FreeComplex::from_maps(ring, maps).map_err(|e| semantic(c.pos, e.to_string()))?;
                out.complexes.push((c.name.clone(), c.ring.clone(), complex));
            }
        }
    }
    Ok(out)
}

/// Parses and resolves in one step.
pub fn load(src: &str) -> Result<Declarations, DslError> {
    resolve(&crate::dsl::parse_program(src)?)
}
