use crate::arith::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::modcore::{ModuleMap, PresentedModule, Ring};

/// Default ceiling on the number of pushforward generators `p^{e n}`.
pub const DEFAULT_PUSHFORWARD_BOUND: u64 = 256;

/// `F^e_* R` presented over `R`.
///
/// Generators are the monomials `x^a` with `0 <= a_j < q = p^e`. A monomial
/// `x^m` equals `(x^{floor(m/q)})^q * x^{m mod q}`, so as an `R`-module it is
/// `x^{floor(m/q)}` times the generator `x^{m mod q}`. Coefficients in `F_p`
/// are their own `q`-th roots.
#[derive(Clone, Debug)]
pub struct FrobeniusPushforward {
    pub e: u32,
    pub q: u32,
    pub basis: Vec<Monomial>,
    pub module: PresentedModule,
    /// `multiplication[j]` has column `a` equal to `x_j * basis[a]` expanded
    /// in the basis.
    pub multiplication: Vec<ModuleMap>,
}

struct Expander {
    nvars: usize,
    q: u32,
}

impl Expander {
    fn index(&self, a: &[u32]) -> usize {
        a.iter().fold(0usize, |acc, &x| acc * self.q as usize + x as usize)
    }

    fn basis(&self) -> Vec<Monomial> {
        let total = (self.q as usize).pow(self.nvars as u32);
        (0..total)
            .map(|mut idx| {
                let mut exps = vec![0u32; self.nvars];
                for v in (0..self.nvars).rev() {
                    exps[v] = (idx % self.q as usize) as u32;
                    idx /= self.q as usize;
                }
                Monomial::from_exponents(&exps)
            })
            .collect()
    }

    /// Column of `f` in the basis, coefficients in `P`.
    fn expand(&self, ring: &Ring, f: &Polynomial, len: usize) -> Vec<Polynomial> {
        let poly = ring.poly();
        let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); len];
        for (m, c) in f.terms() {
            let quot: Vec<u32> = m.exponents().iter().map(|&x| x / self.q).collect();
            let rem: Vec<u32> = m.exponents().iter().map(|&x| x % self.q).collect();
            buckets[self.index(&rem)].push((Monomial::from_exponents(&quot), *c));
        }
        buckets.into_iter().map(|t| ring.reduce(&poly.from_terms(t))).collect()
    }
}

/// Builds `F^e_* R`; fails with a resource error beyond `bound` generators.
pub fn pushforward(ring: &Ring, e: u32, bound: u64) -> Result<FrobeniusPushforward> {
    if e == 0 {
        return Err(Error::Precondition("Frobenius exponent e must be >= 1".into()));
    }
    let q = ring.poly().prime.power_of_p(e)?;
    let n = ring.nvars();
    let count = (q as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if count > bound {
        return Err(Error::Resource(format!("pushforward needs {count} generators, above the bound {bound}")));
    }
    let ex = Expander { nvars: n, q };
    let basis = ex.basis();
    let len = basis.len();
    let poly = ring.poly();
    let mut relations = Vec::new();
    for g in ring.gb().elements() {
        for b in &basis {
            relations.push(ex.expand(ring, &poly.mul_term(g, b, 1), len));
        }
    }
    let module = PresentedModule::new(ring.clone(), ModuleMap::new(ring, len, relations)?);
    let multiplication = (0..n)
        .map(|j| {
            let xj = Monomial::var(n, j);
            let cols = basis.iter().map(|b| ex.expand(ring, &poly.term(b.mul(&xj), 1), len)).collect();
            ModuleMap::new(ring, len, cols)
        })
        .collect::<Result<Vec<_>>>()?;
    if ring.is_polynomial_ring() && module.presentation().ncols() != 0 {
        return Err(Error::Verification("pushforward of a polynomial ring is not free".into()));
    }
    Ok(FrobeniusPushforward { e, q, basis, module, multiplication })
}

/// [`pushforward`] with [`DEFAULT_PUSHFORWARD_BOUND`].
pub fn pushforward_default(ring: &Ring, e: u32) -> Result<FrobeniusPushforward> {
    pushforward(ring, e, DEFAULT_PUSHFORWARD_BOUND)
}

impl FrobeniusPushforward {
    pub fn ngens(&self) -> usize {
        self.basis.len()
    }

    pub fn ring(&self) -> &Ring {
        self.module.ring()
    }

    /// Basis labels like `1`, `x`, `x*y`.
    pub fn basis_labels(&self) -> Vec<String> {
        let poly = self.module.ring().poly();
        self.basis.iter().map(|b| poly.display_monomial(b)).collect()
    }
}
