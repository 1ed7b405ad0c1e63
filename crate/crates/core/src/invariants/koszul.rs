use crate::arith::Polynomial;
use crate::error::Result;
use crate::modcore::{FreeComplex, ModuleComplex, ModuleMap, PresentedModule, Ring};

/// `i`-element subsets of `0..s` in lexicographic order.
fn subsets(s: usize, i: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, s: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..=s - left {
            cur.push(v);
            go(v + 1, s, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if i <= s {
        go(0, s, i, &mut Vec::new(), &mut out);
    }
    out
}

/// Koszul complex `K(z_1..z_s; R)`: `K_i` has the `i`-subsets as basis and
/// `d(e_S) = sum_k (-1)^k z_{S_k} e_{S - S_k}`.
pub fn koszul_complex(ring: &Ring, elements: &[Polynomial]) -> Result<FreeComplex> {
    let s = elements.len();
    let poly = ring.poly();
    let elements: Vec<Polynomial> = elements.iter().map(|z| ring.reduce(z)).collect();
    let bases: Vec<Vec<Vec<usize>>> = (0..=s).map(|i| subsets(s, i)).collect();
    let mut maps = Vec::with_capacity(s);
    for i in 1..=s {
        let lower = &bases[i - 1];
        let cols: Vec<Vec<Polynomial>> = bases[i]
            .iter()
            .map(|set| {
                let mut col = vec![Polynomial::zero(); lower.len()];
                for (k, &v) in set.iter().enumerate() {
                    let rest: Vec<usize> = set.iter().copied().filter(|&w| w != v).collect();
                    let row = lower.binary_search(&rest).expect("face is a lower subset");
                    col[row] = if k % 2 == 0 { elements[v].clone() } else { poly.neg(&elements[v]) };
                }
                col
            })
            .collect();
        maps.push(ModuleMap::new(ring, lower.len(), cols)?);
    }
    let ranks = bases.iter().map(Vec::len).collect();
    FreeComplex::new(ring.clone(), ranks, maps)
}

/// `K(z; M) = K(z; R) ⊗ M`.
pub fn koszul_on_module(m: &PresentedModule, elements: &[Polynomial]) -> Result<ModuleComplex> {
    let k = koszul_complex(m.ring(), elements)?;
    tensor_free_complex(&k, m)
}

/// `F ⊗ M` for a free complex `F`, generators indexed `a * t + b`.
pub fn tensor_free_complex(f: &FreeComplex, m: &PresentedModule) -> Result<ModuleComplex> {
    let ring = f.ring().clone();
    let t = m.ngens();
    let terms = f
        .ranks()
        .iter()
        .map(|&r| PresentedModule::new(ring.clone(), m.presentation().identity_tensor(r)))
        .collect();
    let maps = f.maps().iter().map(|d| d.tensor_identity(t)).collect();
    ModuleComplex::new(ring, terms, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcore::{Kdim, QuotientRing};

    fn elems(r: &Ring, xs: &[&str]) -> Vec<Polynomial> {
        xs.iter().map(|s| r.parse_element(s).unwrap()).collect()
    }

    #[test]
    fn ranks_are_binomial() {
        let r = QuotientRing::parse(3, &["x", "y", "z"], &[]).unwrap();
        let k = koszul_complex(&r, &elems(&r, &["x", "y", "z"])).unwrap();
        assert_eq!(k.ranks(), &[1, 3, 3, 1]);
        for i in 1..=3 {
            assert!(k.homology(i).unwrap().is_zero);
        }
    }

    #[test]
    fn top_homology_is_annihilator() {
        // H_1(x; R/(x^2)) = (0 :_M x) = (x) / (x^2), of dimension 1.
        let r = QuotientRing::parse(2, &["x"], &[]).unwrap();
        let m = PresentedModule::from_rows(r.clone(), &[&["x^2"]], 1).unwrap();
        let c = koszul_on_module(&m, &elems(&r, &["x"])).unwrap();
        assert_eq!(c.homology(1).unwrap().kdim().unwrap(), Kdim::Finite(1));
    }

    #[test]
    fn repeated_element_has_homology() {
        let r = QuotientRing::parse(2, &["x", "y"], &[]).unwrap();
        let k = koszul_complex(&r, &elems(&r, &["x", "x"])).unwrap();
        assert!(!k.homology(1).unwrap().is_zero);
    }
}
