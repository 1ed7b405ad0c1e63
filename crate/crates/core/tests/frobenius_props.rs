//! Property tests for the Frobenius twist.

use frobforge_core::arith::{Monomial, Polynomial};
use frobforge_core::frobenius::{entries_in_bracket_power, twist_complex, twist_map};
use frobforge_core::modcore::{free_resolution, ModuleMap, PresentedModule, QuotientRing, Ring};
use proptest::prelude::*;

fn ring_for(choice: u8) -> Ring {
    match choice % 4 {
        0 => QuotientRing::parse(2, &["x", "y"], &[]).unwrap(),
        1 => QuotientRing::parse(3, &["x", "y"], &[]).unwrap(),
        2 => QuotientRing::parse(2, &["x", "y"], &["x*y"]).unwrap(),
        _ => QuotientRing::parse(3, &["x", "y"], &["x^2 + y^2"]).unwrap(),
    }
}

fn poly_from(ring: &Ring, raw: &[(u32, u32, u32)]) -> Polynomial {
    let terms = raw
        .iter()
        .map(|&(a, b, c)| (Monomial::from_exponents(&[a, b]), c % ring.p()))
        .filter(|(_, c)| *c != 0)
        .collect();
    ring.reduce(&ring.poly().from_terms(terms))
}

fn matrix(ring: &Ring, nrows: usize, ncols: usize, raw: &[Vec<(u32, u32, u32)>]) -> ModuleMap {
    let cols = (0..ncols).map(|c| (0..nrows).map(|r| poly_from(ring, &raw[c * nrows + r])).collect()).collect();
    ModuleMap::new(ring, nrows, cols).unwrap()
}

fn entry() -> impl Strategy<Value = Vec<(u32, u32, u32)>> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..3), 0..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn twist_is_functorial(choice in 0u8..4, e in 1u32..3, raw in prop::collection::vec(entry(), 8)) {
        let ring = ring_for(choice);
        let a = matrix(&ring, 2, 2, &raw[..4]);
        let b = matrix(&ring, 2, 2, &raw[4..]);
        let ab = a.compose(&ring, &b).unwrap();
        let lhs = twist_map(&ring, &ab, e).unwrap();
        let rhs = twist_map(&ring, &a, e).unwrap().compose(&ring, &twist_map(&ring, &b, e).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let id = ModuleMap::identity(&ring, 3);
        prop_assert_eq!(twist_map(&ring, &id, e).unwrap(), id);
    }

    /// Minimality is checked at the origin, so generators are homogeneous.
    #[test]
    fn twisted_minimal_resolution_lies_in_bracket_power(
        choice in 0u8..4,
        e in 1u32..3,
        raw in prop::collection::vec((1u32..4, prop::collection::vec((0u32..4, 1u32..3), 1..3)), 1..3),
    ) {
        let ring = ring_for(choice);
        let gens: Vec<Polynomial> = raw
            .iter()
            .map(|(d, terms)| {
                let t: Vec<(u32, u32, u32)> = terms.iter().map(|&(a, c)| (a.min(*d), *d - a.min(*d), c)).collect();
                poly_from(&ring, &t)
            })
            .filter(|f| !f.is_zero())
            .collect();
        let m = PresentedModule::cyclic(ring.clone(), gens).unwrap();
        let res = free_resolution(&m, 3).unwrap();
        let tw = twist_complex(&res.complex, e).unwrap();
        let q = ring.p().pow(e);
        prop_assert!(entries_in_bracket_power(&tw.twisted, q).unwrap());
        prop_assert_eq!(tw.twisted.ranks(), res.complex.ranks());
    }
}
