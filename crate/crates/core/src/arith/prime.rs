//! The prime field F_p.
//!
//! Elements are stored as canonical residues in `[0, p)`; products are
//! computed by widening to `u64` before reduction, which bounds `p` by
//! `2^31 - 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported characteristic.
pub const MAX_PRIME: u32 = (1 << 31) - 1;

/// A prime characteristic, validated at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

/// A residue class modulo a [`Prime`], always in canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FpElement(u32);

impl FpElement {
    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Arithmetic operation selector for [`Prime::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FpOp {
    Add,
    Mul,
    Inv,
    Neg,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let n = n as u64;
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Prime {
    /// Validates `p` by trial division.
    pub fn new(p: u32) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::Domain(format!(
                "characteristic {p} exceeds the supported bound {MAX_PRIME}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(Prime(p))
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn elem(self, v: u64) -> FpElement {
        FpElement((v % self.0 as u64) as u32)
    }

    /// Reduces a signed integer into the canonical range.
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.0 as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.0 as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.0) {
            return Err(Error::Domain("inversion of zero in F_p".into()));
        }
        let (mut r0, mut r1) = (self.0 as i64, (a % self.0) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(self.from_i64(t0))
    }

    /// Binary/unary operation on [`FpElement`]s; `b` is ignored for unary ops.
    pub fn apply(self, a: FpElement, b: FpElement, op: FpOp) -> Result<FpElement> {
        let v = match op {
            FpOp::Add => self.add(a.0, b.0),
            FpOp::Mul => self.mul(a.0, b.0),
            FpOp::Neg => self.neg(a.0),
            FpOp::Inv => self.inv(a.0)?,
        };
        Ok(FpElement(v))
    }

    /// `p^e`, failing loudly on `u32` overflow.
    pub fn power_of_p(self, e: u32) -> Result<u32> {
        let mut q: u32 = 1;
        for _ in 0..e {
            q = q
                .checked_mul(self.0)
                .ok_or_else(|| Error::Overflow(format!("{}^{e} does not fit in 32 bits", self.0)))?;
        }
        Ok(q)
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(Prime::new(4).is_err());
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(0).is_err());
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(MAX_PRIME).is_ok());
    }

    #[test]
    fn small_examples() {
        let p5 = Prime::new(5).unwrap();
        assert_eq!(p5.apply(p5.elem(2), p5.elem(0), FpOp::Inv).unwrap().value(), 3);
        let p2 = Prime::new(2).unwrap();
        assert_eq!(p2.apply(p2.elem(1), p2.elem(1), FpOp::Add).unwrap().value(), 0);
        let p7 = Prime::new(7).unwrap();
        assert_eq!(p7.apply(p7.elem(3), p7.elem(5), FpOp::Mul).unwrap().value(), 1);
    }

    #[test]
    fn zero_has_no_inverse() {
        let p = Prime::new(7).unwrap();
        assert!(matches!(p.inv(0), Err(Error::Domain(_))));
    }

    // Exhaustive table oracle for p <= 11: products computed by repeated addition.
    #[test]
    fn multiplication_table_oracle() {
        for p in [2u32, 3, 5, 7, 11] {
            let f = Prime::new(p).unwrap();
            for a in 0..p {
                let mut acc = 0;
                for b in 0..p {
                    assert_eq!(f.mul(a, b), acc, "p={p} a={a} b={b}");
                    acc = (acc + a) % p;
                }
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                    assert_eq!(f.pow(a, p as u64), a, "Fermat");
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
        }
    }

    #[test]
    fn large_prime_mul_does_not_overflow() {
        let f = Prime::new(MAX_PRIME).unwrap();
        let a = MAX_PRIME - 1;
        assert_eq!(f.mul(a, a), 1);
        assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
    }
}
