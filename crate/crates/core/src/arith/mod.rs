//! Exact arithmetic: the prime field, exponent vectors, monomial orders and
//! sparse polynomials.

mod monomial;
pub mod parse;
mod poly;
mod prime;

pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use parse::parse_polynomial;
pub use poly::{PolyOp, PolyRing, Polynomial};
pub use prime::{FpElement, FpOp, Prime, MAX_PRIME};
