//! Text syntax for polynomials: `3*x^2*y + 1`, `2x - y^3`, `(x+y)^2`.
//!
//! Variables are the ring's declared identifiers; `*` may be omitted
//! between factors. Integer literals are reduced modulo `p`.

use super::poly::{PolyRing, Polynomial};
use crate::error::{Error, Result};

struct Parser<'a> {
    ring: &'a PolyRing,
    src: &'a [u8],
    pos: usize,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { offset, message: message.into() })
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(c) = self.src.get(self.pos).filter(|c| c.is_ascii_digit()) {
            v = v.checked_mul(10).and_then(|v| v.checked_add((c - b'0') as u64)).ok_or(
                Error::Parse { offset: start, message: "integer literal too large".into() },
            )?;
            self.pos += 1;
        }
        Ok(v)
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let r = self.ring;
        let mut acc = Polynomial::zero();
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if negate { r.sub(&acc, &t) } else { r.add(&acc, &t) };
            match self.peek() {
                Some(b'+') => {
                    negate = false;
                    self.pos += 1;
                }
                Some(b'-') => {
                    negate = true;
                    self.pos += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.ring.mul(&acc, &f);
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' || c == b'_' => {
                    let f = self.factor()?;
                    acc = self.ring.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            if !self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                return err(self.pos, "expected exponent after '^'");
            }
            let at = self.pos;
            let e = self.number()?;
            if e > u32::MAX as u64 {
                return err(at, "exponent too large");
            }
            if base.len() == 1 {
                let (m, c) = &base.terms()[0];
                let m = m.checked_pow(e as u32).ok_or(Error::Parse {
                    offset: at,
                    message: "exponent overflows u32".into(),
                })?;
                return Ok(self.ring.term(m, self.ring.prime.pow(*c, e)));
            }
            return Ok(self.ring.pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let r = self.ring;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let v = self.number()?;
                Ok(r.constant((v % r.p() as u64) as u32))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let at = self.pos;
                let name = self.ident();
                match r.var_index(name) {
                    Some(i) => Ok(r.var(i)),
                    None => err(at, format!("unknown variable '{name}'")),
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return err(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) => err(self.pos, format!("unexpected character '{}'", c as char)),
            None => err(self.pos, "unexpected end of input"),
        }
    }
}

/// Parses a polynomial in `ring`. Offsets in errors are byte offsets into `text`.
pub fn parse_polynomial(ring: &PolyRing, text: &str) -> Result<Polynomial> {
    let mut p = Parser { ring, src: text.as_bytes(), pos: 0 };
    if p.peek().is_none() {
        return err(0, "empty polynomial");
    }
    let f = p.expr()?;
    if let Some(c) = p.peek() {
        return err(p.pos, format!("unexpected trailing '{}'", c as char));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::monomial::Monomial;

    #[test]
    fn parses_and_prints() {
        let r = PolyRing::grevlex(5, &["x", "y"]).unwrap();
        let f = parse_polynomial(&r, "3*x^2*y + 1").unwrap();
        assert_eq!(r.display(&f), "3*x^2*y + 1");
        let g = parse_polynomial(&r, "3x^2 y - 4").unwrap();
        assert_eq!(r.display(&g), "3*x^2*y + 1");
        let h = parse_polynomial(&r, "(x+y)^2").unwrap();
        assert_eq!(r.display(&h), "x^2 + 2*x*y + y^2");
        assert_eq!(parse_polynomial(&r, "0").unwrap(), Polynomial::zero());
        assert_eq!(parse_polynomial(&r, "-y").unwrap(), r.term(Monomial::var(2, 1), 4));
    }

    #[test]
    fn reports_positions() {
        let r = PolyRing::grevlex(5, &["x", "y"]).unwrap();
        match parse_polynomial(&r, "x + z") {
            Err(Error::Parse { offset, message }) => {
                assert_eq!(offset, 4);
                assert!(message.contains("unknown variable"));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial(&r, "x^").is_err());
        assert!(parse_polynomial(&r, "(x").is_err());
        assert!(parse_polynomial(&r, "").is_err());
    }

    #[test]
    fn display_roundtrip() {
        let r = PolyRing::grevlex(7, &["a", "b", "c"]).unwrap();
        let f = parse_polynomial(&r, "6*a^3*c + 2*b^2 - a + 5").unwrap();
        assert_eq!(parse_polynomial(&r, &r.display(&f)).unwrap(), f);
    }
}
