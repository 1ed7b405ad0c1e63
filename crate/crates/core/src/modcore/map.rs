use serde::{Deserialize, Serialize};

use super::ring::QuotientRing;
use crate::arith::{PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::ModVec;

/// A matrix over `R` mapping `R^ncols -> R^nrows`, stored column-major.
/// Entries are kept in normal form modulo `I` by every constructor that takes
/// a ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleMap {
    nrows: usize,
    cols: Vec<Vec<Polynomial>>,
}

impl ModuleMap {
    /// Columns are reduced modulo `I`.
    pub fn new(ring: &QuotientRing, nrows: usize, cols: Vec<Vec<Polynomial>>) -> Result<Self> {
        let mut out = Vec::with_capacity(cols.len());
        for c in cols {
            if c.len() != nrows {
                return Err(Error::Structural(format!("column of length {} in a map with {nrows} rows", c.len())));
            }
            let mut col = Vec::with_capacity(nrows);
            for f in c {
                ring.poly().check(&f)?;
                col.push(ring.reduce(&f));
            }
            out.push(col);
        }
        Ok(ModuleMap { nrows, cols: out })
    }

    /// Trusts that entries are reduced.
    pub(crate) fn from_cols_unchecked(nrows: usize, cols: Vec<Vec<Polynomial>>) -> Self {
        debug_assert!(cols.iter().all(|c| c.len() == nrows));
        ModuleMap { nrows, cols }
    }

    /// Row-major construction, entries reduced modulo `I`.
    pub fn from_rows(ring: &QuotientRing, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Structural("ragged matrix rows".into()));
        }
        let mut cols = vec![Vec::with_capacity(nrows); ncols];
        for row in rows {
            for (j, f) in row.into_iter().enumerate() {
                cols[j].push(f);
            }
        }
        Self::new(ring, nrows, cols)
    }

    pub fn zero(nrows: usize, ncols: usize) -> Self {
        ModuleMap { nrows, cols: vec![vec![Polynomial::zero(); nrows]; ncols] }
    }

    pub fn identity(ring: &QuotientRing, n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.cols[i][i] = ring.poly().one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.cols[c][r]
    }

    pub fn col(&self, c: usize) -> &[Polynomial] {
        &self.cols[c]
    }

    pub fn cols(&self) -> &[Vec<Polynomial>] {
        &self.cols
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.nrows).map(|r| self.cols.iter().map(|c| c[r].clone()).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(Polynomial::is_zero))
    }

    pub fn entries(&self) -> impl Iterator<Item = &Polynomial> {
        self.cols.iter().flatten()
    }

    /// Column `c` as a module vector at positions `offset..`.
    pub fn col_vec(&self, c: usize, offset: u32) -> ModVec {
        ModVec::from_column(&self.cols[c], offset)
    }

    /// `self * other`, reduced.
    pub fn compose(&self, ring: &QuotientRing, other: &ModuleMap) -> Result<ModuleMap> {
        if self.ncols() != other.nrows {
            return Err(Error::Structural(format!(
                "cannot compose {}x{} with {}x{}",
                self.nrows,
                self.ncols(),
                other.nrows,
                other.ncols()
            )));
        }
        let p = ring.poly();
        let cols = other
            .cols
            .iter()
            .map(|oc| {
                (0..self.nrows)
                    .map(|r| {
                        let mut acc = Polynomial::zero();
                        for (k, b) in oc.iter().enumerate() {
                            let a = &self.cols[k][r];
                            if !a.is_zero() && !b.is_zero() {
                                acc = p.add(&acc, &p.mul(a, b));
                            }
                        }
                        ring.reduce(&acc)
                    })
                    .collect()
            })
            .collect();
        Ok(ModuleMap { nrows: self.nrows, cols })
    }

    pub fn transpose(&self) -> ModuleMap {
        let rows = self.rows();
        ModuleMap { nrows: self.ncols(), cols: rows }
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if self.nrows != other.nrows {
            return Err(Error::Structural("hconcat row mismatch".into()));
        }
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Ok(ModuleMap { nrows: self.nrows, cols })
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &ModuleMap) -> ModuleMap {
        let nrows = self.nrows + other.nrows;
        let mut cols = Vec::with_capacity(self.ncols() + other.ncols());
        for c in &self.cols {
            let mut col = c.clone();
            col.resize(nrows, Polynomial::zero());
            cols.push(col);
        }
        for c in &other.cols {
            let mut col = vec![Polynomial::zero(); self.nrows];
            col.extend(c.iter().cloned());
            cols.push(col);
        }
        ModuleMap { nrows, cols }
    }

    /// `self ⊗ 1_t`: the basis of the target/source is indexed `a * t + b`.
    pub fn tensor_identity(&self, t: usize) -> ModuleMap {
        let nrows = self.nrows * t;
        let mut cols = Vec::with_capacity(self.ncols() * t);
        for c in &self.cols {
            for b in 0..t {
                let mut col = vec![Polynomial::zero(); nrows];
                for (a, f) in c.iter().enumerate() {
                    col[a * t + b] = f.clone();
                }
                cols.push(col);
            }
        }
        ModuleMap { nrows, cols }
    }

    /// `1_r ⊗ self`, with the same `a * t + b` indexing.
    pub fn identity_tensor(&self, r: usize) -> ModuleMap {
        let t = self.nrows;
        let mut cols = Vec::with_capacity(r * self.ncols());
        for a in 0..r {
            for c in &self.cols {
                let mut col = vec![Polynomial::zero(); r * t];
                for (b, f) in c.iter().enumerate() {
                    col[a * t + b] = f.clone();
                }
                cols.push(col);
            }
        }
        ModuleMap { nrows: r * t, cols }
    }

    /// Keeps the given rows and columns, in order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> ModuleMap {
        ModuleMap {
            nrows: rows.len(),
            cols: cols.iter().map(|&c| rows.iter().map(|&r| self.cols[c][r].clone()).collect()).collect(),
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> ModuleMap {
        ModuleMap { nrows: self.nrows, cols: cols.iter().map(|&c| self.cols[c].clone()).collect() }
    }

    /// Applies `f` to every entry, then reduces modulo `I`.
    pub fn map_entries(&self, ring: &QuotientRing, mut f: impl FnMut(&Polynomial) -> Result<Polynomial>) -> Result<ModuleMap> {
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|e| Ok(ring.reduce(&f(e)?))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(ModuleMap { nrows: self.nrows, cols })
    }

    /// Drops zero columns and repeated columns, keeping first occurrences.
    pub fn prune_columns(&self) -> ModuleMap {
        let mut seen = std::collections::HashSet::new();
        let cols = self
            .cols
            .iter()
            .filter(|c| c.iter().any(|f| !f.is_zero()) && seen.insert((*c).clone()))
            .cloned()
            .collect();
        ModuleMap { nrows: self.nrows, cols }
    }

    /// Every entry lies in `m` (no nonzero constant terms).
    pub fn is_minimal(&self) -> bool {
        self.entries().all(|f| f.constant_term() == 0)
    }

    /// Rank over F_p of the matrix evaluated at the origin.
    pub fn rank_at_origin(&self, ring: &QuotientRing) -> usize {
        let fp = ring.poly().prime;
        let mut rows: Vec<Vec<u32>> = self.rows().iter().map(|r| r.iter().map(|f| f.constant_term()).collect()).collect();
        let ncols = self.ncols();
        let mut rank = 0;
        for c in 0..ncols {
            let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
            rows.swap(rank, piv);
            let inv = fp.inv(rows[rank][c]).unwrap();
            for r in 0..rows.len() {
                if r != rank && rows[r][c] != 0 {
                    let f = fp.mul(rows[r][c], inv);
                    for k in c..ncols {
                        let v = fp.mul(f, rows[rank][k]);
                        rows[r][k] = fp.sub(rows[r][k], v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Row-major text, e.g. `[[x, y], [0, x + y]]`.
    pub fn display(&self, poly: &PolyRing) -> String {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|f| poly.display(f)).collect::<Vec<_>>().join(", ")))
            .collect();
        format!("[{}]", rows.join(", "))
    }
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
    fn compose_reduces_mod_ideal() {
        let r = QuotientRing::parse(2, &["x", "y"], &["x*y"]).unwrap();
        let a = m(&r, &[&["x"]]);
        let b = m(&r, &[&["y"]]);
        assert!(a.compose(&r, &b).unwrap().is_zero());
        assert!(a.compose(&r, &m(&r, &[&["x"], &["y"]])).is_err());
    }

    #[test]
    fn kronecker_layouts() {
        let r = QuotientRing::parse(3, &["x", "y"], &[]).unwrap();
        let a = m(&r, &[&["x", "y"]]);
        let at = a.tensor_identity(2);
        assert_eq!(at.display(r.poly()), "[[x, 0, y, 0], [0, x, 0, y]]");
        let b = m(&r, &[&["x"], &["y"]]);
        let ib = b.identity_tensor(2);
        assert_eq!(ib.display(r.poly()), "[[x, 0], [y, 0], [0, x], [0, y]]");
        // (A ⊗ 1)(1 ⊗ B) = (1 ⊗ B)(A ⊗ 1) as maps R^2 -> R^2
        let lhs = at.compose(&r, &b.identity_tensor(2)).unwrap();
        let rhs = b.compose(&r, &a).unwrap();
        assert_eq!(lhs.nrows(), 2);
        assert_eq!(rhs.nrows(), 2);
        assert_eq!(lhs.display(r.poly()), "[[x^2, x*y], [x*y, y^2]]");
    }

    #[test]
    fn origin_rank() {
        let r = QuotientRing::parse(3, &["x", "y"], &[]).unwrap();
        let a = m(&r, &[&["1", "x", "2"], &["2", "y", "2"]]);
        assert_eq!(a.rank_at_origin(&r), 2);
        assert!(!a.is_minimal());
        assert!(m(&r, &[&["x", "y^2"]]).is_minimal());
    }
}
