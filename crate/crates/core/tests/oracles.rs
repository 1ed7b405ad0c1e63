//! Independent oracles for the engine: degree-bounded linear algebra for
//! ideal membership, balance of Tor, and agreement of the two depth routes.

use frobforge_core::arith::{Monomial, Polynomial};
use frobforge_core::groebner::{buchberger, Ideal};
use frobforge_core::invariants::{depth_by_ext, depth_by_koszul};
use frobforge_core::modcore::{tor, PresentedModule, QuotientRing, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    if n == 1 {
        return vec![Monomial::from_exponents(&[d])];
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for rest in monomials_of_degree(n - 1, d - a) {
            let mut e = vec![a];
            e.extend_from_slice(rest.exponents());
            out.push(Monomial::from_exponents(&e));
        }
    }
    out
}

fn random_homogeneous(rng: &mut ChaCha8Rng, ring: &Ring, d: u32) -> Polynomial {
    let poly = ring.poly();
    loop {
        let mut terms: Vec<(Monomial, u32)> = Vec::new();
        for m in monomials_of_degree(ring.nvars(), d) {
            if rng.gen_bool(0.5) {
                terms.push((m, rng.gen_range(1..ring.p())));
            }
        }
        let f = poly.from_terms(terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Rank of a matrix over `F_p` by Gaussian elimination.
fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = (1..p).find(|&t| t * rows[rank][c] % p == 1).unwrap();
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..ncols {
                    rows[r][k] = (rows[r][k] + p - f * rows[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `f` homogeneous of degree `d` lies in the homogeneous ideal `(gens)` iff
/// it lies in the span of `{ m * g : deg m + deg g = d }`.
fn in_ideal_by_linear_algebra(ring: &Ring, gens: &[Polynomial], f: &Polynomial, d: u32) -> bool {
    let poly = ring.poly();
    let basis = monomials_of_degree(ring.nvars(), d);
    let coords = |h: &Polynomial| -> Vec<u64> {
        basis
            .iter()
            .map(|b| h.terms().iter().find(|(m, _)| m == b).map_or(0, |(_, c)| *c as u64))
            .collect()
    };
    let mut rows = Vec::new();
    for g in gens {
        let dg = g.degree().unwrap() as u32;
        if dg > d {
            continue;
        }
        for m in monomials_of_degree(ring.nvars(), d - dg) {
            rows.push(coords(&poly.mul_term(g, &m, 1)));
        }
    }
    let p = ring.p() as u64;
    let before = rank_mod_p(rows.clone(), p);
    rows.push(coords(f));
    rank_mod_p(rows, p) == before
}

#[test]
fn ideal_membership_matches_linear_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut members = 0;
    for trial in 0..100 {
        let p = [2, 3, 5][trial % 3];
        let vars: &[&str] = if trial % 2 == 0 { &["x", "y"] } else { &["x", "y", "z"] };
        let ring = QuotientRing::parse(p, vars, &[]).unwrap();
        let poly = ring.poly_arc().clone();
        let gens: Vec<Polynomial> = (0..rng.gen_range(1..=3)).map(|_| {
            let d = rng.gen_range(1..=2);
            random_homogeneous(&mut rng, &ring, d)
        }).collect();
        let gb = buchberger(&Ideal::new(poly.clone(), gens.clone()).unwrap()).unwrap();
        let d = 3;
        // Half the candidates are built inside the ideal.
        let f = if trial % 2 == 0 {
            let mut acc = Polynomial::zero();
            for g in &gens {
                let dg = g.degree().unwrap() as u32;
                let h = random_homogeneous(&mut rng, &ring, d - dg);
                acc = poly.add(&acc, &poly.mul(&h, g));
            }
            acc
        } else {
            random_homogeneous(&mut rng, &ring, d)
        };
        let expected = in_ideal_by_linear_algebra(&ring, &gens, &f, d);
        assert_eq!(gb.contains(&f), expected, "trial {trial}: {}", poly.display(&f));
        members += expected as usize;
    }
    assert!(members >= 50);
}

fn cyclic(ring: &Ring, gens: &[&str]) -> PresentedModule {
    let elems = gens.iter().map(|g| ring.parse_element(g).unwrap()).collect();
    PresentedModule::cyclic(ring.clone(), elems).unwrap()
}

#[test]
fn tor_is_balanced() {
    let rings = [
        QuotientRing::parse(2, &["x", "y"], &[]).unwrap(),
        QuotientRing::parse(3, &["x", "y"], &["x^2 + y^2"]).unwrap(),
        QuotientRing::parse(2, &["x", "y"], &["x*y"]).unwrap(),
        QuotientRing::parse(2, &["x", "y"], &["x^2", "y^2"]).unwrap(),
    ];
    let ideals: [&[&str]; 5] = [&["x"], &["x", "y"], &["x^2", "y"], &["x + y"], &["y^2"]];
    let mut pairs = 0;
    for ring in &rings {
        for (a, b) in [(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)] {
            let m = cyclic(ring, ideals[a]);
            let n = cyclic(ring, ideals[b]);
            for i in 1..=2 {
                let left = tor(&m, &n, i).unwrap();
                let right = tor(&n, &m, i).unwrap();
                assert_eq!(left.kdim, right.kdim, "{} / {:?} {:?} i={i}", ring.describe(), ideals[a], ideals[b]);
                assert_eq!(left.is_zero, right.is_zero);
            }
            pairs += 1;
        }
    }
    assert_eq!(pairs, 20);
}

#[test]
fn depth_routes_agree() {
    let rings = [
        QuotientRing::parse(2, &["x", "y"], &[]).unwrap(),
        QuotientRing::parse(2, &["x", "y", "z"], &[]).unwrap(),
        QuotientRing::parse(2, &["x", "y"], &["x*y"]).unwrap(),
        QuotientRing::parse(2, &["x", "y"], &["y^2 + x^3"]).unwrap(),
        QuotientRing::parse(3, &["x", "y"], &["x^2 + y^2"]).unwrap(),
        QuotientRing::parse(2, &["x"], &["x^2"]).unwrap(),
    ];
    let ideals: [&[&str]; 5] = [&[], &["x"], &["x", "y"], &["y^2"], &["x^2", "x*y"]];
    for ring in &rings {
        for gens in ideals {
            if gens.iter().any(|g| g.contains('y')) && ring.nvars() < 2 {
                continue;
            }
            let m = cyclic(ring, gens);
            assert_eq!(depth_by_ext(&m).unwrap(), depth_by_koszul(&m).unwrap(), "{} / {gens:?}", ring.describe());
        }
    }
}
