use serde::Serialize;

use super::{buchberger, colon_ideal};
use crate::arith::Polynomial;
use crate::error::{Error, Result};
use crate::modcore::QuotientRing;

/// Outcome of [`is_regular_sequence`]; `first_failure` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularSequenceCheck {
    pub regular: bool,
    pub first_failure: Option<usize>,
}

/// Checks that `elements` (all in `m`) form a regular sequence on `R`:
/// each `x_i` is a nonzerodivisor modulo `I + (x_1..x_{i-1})` and the
/// quotient stays nonzero.
pub fn is_regular_sequence(elements: &[Polynomial], ring: &QuotientRing) -> Result<RegularSequenceCheck> {
    for (i, f) in elements.iter().enumerate() {
        ring.poly().check(f)?;
        if f.constant_term() != 0 {
            return Err(Error::Precondition(format!(
                "element {} has a nonzero constant term, so it is not in the maximal ideal",
                i + 1
            )));
        }
    }
    let mut current = ring.ideal().clone();
    for (i, f) in elements.iter().enumerate() {
        let fail = || Ok(RegularSequenceCheck { regular: false, first_failure: Some(i + 1) });
        let cur_gb = buchberger(&current)?;
        let f = cur_gb.normal_form(f);
        if f.is_zero() {
            return fail();
        }
        let colon = colon_ideal(&current, &f)?;
        let colon_gb = buchberger(&colon)?;
        if colon_gb.elements() != cur_gb.elements() {
            return fail();
        }
        current = current.extended(std::slice::from_ref(&f));
        if buchberger(&current)?.is_unit_ideal() {
            return fail();
        }
    }
    Ok(RegularSequenceCheck { regular: true, first_failure: None })
}

pub fn krull_dimension(ring: &QuotientRing) -> usize {
    ring.krull_dimension()
}
