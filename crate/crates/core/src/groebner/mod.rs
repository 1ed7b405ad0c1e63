//! Gröbner bases over `F_p[x_1..x_n]`: Buchberger's algorithm for ideals and
//! submodules of free modules, normal forms, colon ideals, Krull dimension
//! and regular-sequence checks.

pub mod cache;
pub mod engine;
mod ideal;
mod regular;

pub use engine::{Basis, GbEngine, MTerm, ModVec, DEFAULT_MAX_PAIRS};
pub use ideal::{
    buchberger, buchberger_uncached, colon_ideal, gb_cache, krull_dimension_of, monomial_dimension, normal_form, s_polynomial,
    GroebnerBasis, Ideal,
};
pub use regular::{is_regular_sequence, krull_dimension, RegularSequenceCheck};
