//! Homological algebra over quotients of polynomial rings over `F_p`, with
//! the Frobenius functor as a first-class operation.
//!
//! Layers, bottom up: [`arith`] (prime field and polynomials), [`groebner`]
//! (Buchberger for ideals and submodules), [`modcore`] (presented modules,
//! resolutions, Tor and Ext), [`invariants`] (depth, Bass and Enochs–Xu
//! numbers, the acyclicity lemma) and [`frobenius`] (twists, the pushforward
//! `F^e_* R` and the finite projective dimension criteria).

pub mod arith;
pub mod error;
pub mod frobenius;
pub mod groebner;
pub mod invariants;
pub mod modcore;

pub use error::{Error, Result};
