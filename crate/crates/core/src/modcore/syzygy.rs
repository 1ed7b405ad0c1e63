use super::map::ModuleMap;
use super::ring::QuotientRing;
use crate::arith::Polynomial;
use crate::error::{Error, Result};
use crate::groebner::{GbEngine, ModVec};

/// Generators of `{ v in R^n : A v in im(B) }` for `A : R^n -> R^r` and an
/// optional `B : R^k -> R^r`.
///
/// Lifts to `P`, stacks `(A_j, e_j)`, `(B_l, 0)`, `(g e_i, 0)` and `(0, g e_j)`
/// for `g` in the Gröbner basis of `I`, and eliminates the first `r`
/// positions under position-over-term order. Tag parts of the surviving basis
/// elements are the kernel generators; they are reduced modulo `I` and zero or
/// repeated columns are dropped.
pub fn kernel_modulo(ring: &QuotientRing, a: &ModuleMap, b: Option<&ModuleMap>) -> Result<ModuleMap> {
    let r = a.nrows();
    let n = a.ncols();
    if let Some(b) = b {
        if b.nrows() != r {
            return Err(Error::Structural(format!("kernel modulo: {} vs {} rows", r, b.nrows())));
        }
    }
    if n == 0 {
        return Ok(ModuleMap::zero(0, 0));
    }
    if r == 0 {
        return Ok(ModuleMap::identity(ring, n));
    }
    let poly = ring.poly();
    let ideal = ring.gb().elements();
    let mut eng = GbEngine::new(poly, false);
    for j in 0..n {
        let mut v = a.col_vec(j, 0);
        v.0.push(crate::groebner::MTerm {
            pos: (r + j) as u32,
            mono: crate::arith::Monomial::one(poly.nvars()),
            coef: 1,
        });
        eng.push(v);
    }
    if let Some(b) = b {
        for l in 0..b.ncols() {
            eng.push(b.col_vec(l, 0));
        }
    }
    for pos in 0..r + n {
        for g in ideal {
            eng.push(ModVec::from_column(std::slice::from_ref(g), pos as u32));
        }
    }
    eng.complete()?;
    let mut cols: Vec<Vec<Polynomial>> = Vec::new();
    for v in eng.reduced() {
        if (v.lead().unwrap().pos as usize) < r {
            continue;
        }
        let col: Vec<Polynomial> = v.to_column(r as u32, n).iter().map(|f| ring.reduce(f)).collect();
        cols.push(col);
    }
    Ok(ModuleMap::from_cols_unchecked(n, cols).prune_columns())
}

/// Generators of `ker(A)`; `A * S = 0` is verified.
pub fn syzygy(ring: &QuotientRing, a: &ModuleMap) -> Result<ModuleMap> {
    let s = kernel_modulo(ring, a, None)?;
    if s.ncols() > 0 && a.nrows() > 0 && !a.compose(ring, &s)?.is_zero() {
        return Err(Error::Verification("syzygy does not compose to zero".into()));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(ring: &QuotientRing, rows: &[&[&str]]) -> ModuleMap {
        ModuleMap::from_rows(
            ring,
            rows.iter().map(|r| r.iter().map(|s| ring.parse_element(s).unwrap()).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn nonzerodivisor_has_no_syzygies() {
        let r = QuotientRing::parse(2, &["x", "y"], &[]).unwrap();
        assert_eq!(syzygy(&r, &m(&r, &[&["x"]])).unwrap().ncols(), 0);
    }

    #[test]
    fn annihilator_of_x_mod_xy() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x*y"]).unwrap();
        let s = syzygy(&r, &m(&r, &[&["x"]])).unwrap();
        assert_eq!(s.display(r.poly()), "[[y]]");
    }

    #[test]
    fn koszul_relation() {
        let r = QuotientRing::parse(2, &["x", "y"], &[]).unwrap();
        let s = syzygy(&r, &m(&r, &[&["x", "y"]])).unwrap();
        assert_eq!(s.display(r.poly()), "[[y], [x]]");
    }

    #[test]
    fn kernel_modulo_image() {
        // {v : x v in (x^2)} = (x) over F_3[x].
        let r = QuotientRing::parse(3, &["x"], &[]).unwrap();
        let k = kernel_modulo(&r, &m(&r, &[&["x"]]), Some(&m(&r, &[&["x^2"]]))).unwrap();
        assert_eq!(k.display(r.poly()), "[[x]]");
    }
}
