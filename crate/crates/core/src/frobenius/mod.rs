//! The Frobenius functor two ways: entrywise `p^e`-th powers on free
//! complexes, and the pushforward `F^e_* R` as a presented module. On top of
//! both sit the regularity test and the finite projective dimension checks.

mod pushforward;
mod twist;
mod verdicts;

pub use pushforward::{pushforward, pushforward_default, FrobeniusPushforward, DEFAULT_PUSHFORWARD_BOUND};
pub use twist::{entries_in_bracket_power, tor_frobenius, twist_complex, twist_map, twist_module, FrobeniusTwist, TorRow};
pub use verdicts::{
    ext_frobenius, kunz_test, theorem_a_verify, theorem_b_verify, tor_crosscheck, CrosscheckReport, CrosscheckRow,
    ExtFrobeniusReport, ExtRow, FrobeniusTorTable, KunzReport, KunzVerdict, TheoremAReport, TheoremBReport,
    TwistCheck, Witness,
};
