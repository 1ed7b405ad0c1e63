//! The declaration language.
//!
//! ```text
//! # comment
//! ring R = char 2 vars [x, y] ideal (x*y)
//! module M over R = coker [[x]]
//! module K over R = residue
//! module F over R = free 2
//! complex C over R = [[[y], [x]], [[x, y]]]
//! ```
//!
//! Complex maps are listed from the highest degree down to `d_1`. Matrices
//! are lists of rows. Whitespace is insignificant and statements need no
//! terminator. Polynomial entries are kept as text with whitespace removed
//! and handed to the core polynomial parser during resolution.

use std::fmt;

use thiserror::Error;

/// 1-based source position. Positions never take part in equality, so a
/// pretty-printed program reparses to an equal tree.
#[derive(Clone, Copy, Debug, Default, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {message}")]
pub struct DslError {
    pub pos: Pos,
    pub message: String,
}

/// A polynomial entry as written, whitespace removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub text: String,
    pub pos: Pos,
}

pub type Matrix = Vec<Vec<Entry>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub p: u32,
    pub vars: Vec<String>,
    pub ideal: Vec<Entry>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleBody {
    /// Rows of a presentation matrix; one row per generator.
    Coker(Matrix),
    Free(usize),
    Residue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: String,
    pub ring: String,
    pub body: ModuleBody,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDecl {
    pub name: String,
    pub ring: String,
    /// Highest degree first.
    pub maps: Vec<Matrix>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Ring(RingDecl),
    Module(ModuleDecl),
    Complex(ComplexDecl),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub decls: Vec<Decl>,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn position(&self, offset: usize) -> Pos {
        position_of(self.src, offset)
    }

    fn error<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, DslError> {
        Err(DslError { pos: self.position(offset), message: message.into() })
    }

    fn skip_trivia(&mut self) {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() {
            match bytes[self.pos] {
                b'#' => {
                    while self.pos < bytes.len() && bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_trivia();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn expect_char(&mut self, c: u8) -> Result<(), DslError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.error(self.pos, format!("expected '{}', found '{}'", c as char, x as char)),
            None => self.error(self.pos, format!("expected '{}', found end of input", c as char)),
        }
    }

    fn ident(&mut self) -> Result<(String, usize), DslError> {
        self.peek();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        if !bytes.get(start).is_some_and(|c| c.is_ascii_alphabetic() || *c == b'_') {
            return self.error(start, "expected an identifier");
        }
        while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
            self.pos += 1;
        }
        Ok((self.src[start..self.pos].to_string(), start))
    }

    fn keyword(&mut self, kw: &str) -> Result<(), DslError> {
        let (word, at) = self.ident()?;
        if word != kw {
            return self.error(at, format!("expected '{kw}', found '{word}'"));
        }
        Ok(())
    }

    fn number(&mut self) -> Result<u64, DslError> {
        self.peek();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error(start, "expected a number");
        }
        self.src[start..self.pos].parse().or_else(|_| self.error(start, "number out of range"))
    }

    /// Raw polynomial text up to the next top-level `,`, `]` or `)`.
    fn entry(&mut self) -> Result<Entry, DslError> {
        self.peek();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut depth = 0usize;
        while self.pos < bytes.len() {
            match bytes[self.pos] {
                b'(' => depth += 1,
                b')' if depth > 0 => depth -= 1,
                b',' | b']' | b')' if depth == 0 => break,
                b'[' | b'#' | b'\n' => break,
                _ => {}
            }
            self.pos += 1;
        }
        let text: String = self.src[start..self.pos].chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return self.error(start, "expected a polynomial");
        }
        Ok(Entry { text, pos: self.position(start) })
    }

    /// `open item (, item)* close`, possibly empty.
    fn list<T>(&mut self, open: u8, close: u8, mut item: impl FnMut(&mut Self) -> Result<T, DslError>) -> Result<Vec<T>, DslError> {
        self.expect_char(open)?;
        let mut out = Vec::new();
        if self.peek() == Some(close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(c) if c == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(c) => return self.error(self.pos, format!("expected ',' or '{}', found '{}'", close as char, c as char)),
                None => return self.error(self.pos, format!("expected '{}', found end of input", close as char)),
            }
        }
    }

    fn matrix(&mut self) -> Result<Matrix, DslError> {
        let at = self.pos;
        let rows = self.list(b'[', b']', |p| p.list(b'[', b']', |p| p.entry()))?;
        if rows.is_empty() || rows[0].is_empty() {
            return self.error(at, "a matrix needs at least one row and one column");
        }
        if rows.iter().any(|r| r.len() != rows[0].len()) {
            return self.error(at, "matrix rows have different lengths");
        }
        Ok(rows)
    }

    fn ring(&mut self, pos: Pos) -> Result<RingDecl, DslError> {
        let (name, _) = self.ident()?;
        self.expect_char(b'=')?;
        self.keyword("char")?;
        self.peek();
        let at = self.pos;
        let p = u32::try_from(self.number()?).or_else(|_| self.error(at, "characteristic out of range"))?;
        self.keyword("vars")?;
        let vars = self.list(b'[', b']', |p| p.ident().map(|(v, _)| v))?;
        self.keyword("ideal")?;
        let ideal = self.list(b'(', b')', |p| p.entry())?;
        Ok(RingDecl { name, p, vars, ideal, pos })
    }

    fn module(&mut self, pos: Pos) -> Result<ModuleDecl, DslError> {
        let (name, _) = self.ident()?;
        self.keyword("over")?;
        let (ring, _) = self.ident()?;
        self.expect_char(b'=')?;
        let (kind, at) = self.ident()?;
        let body = match kind.as_str() {
            "coker" => ModuleBody::Coker(self.matrix()?),
            "free" => ModuleBody::Free(self.number()? as usize),
            "residue" => ModuleBody::Residue,
            other => return self.error(at, format!("expected 'coker', 'free' or 'residue', found '{other}'")),
        };
        Ok(ModuleDecl { name, ring, body, pos })
    }

    fn complex(&mut self, pos: Pos) -> Result<ComplexDecl, DslError> {
        let (name, _) = self.ident()?;
        self.keyword("over")?;
        let (ring, _) = self.ident()?;
        self.expect_char(b'=')?;
        let at = self.pos;
        let maps = self.list(b'[', b']', |p| p.matrix())?;
        if maps.is_empty() {
            return self.error(at, "a complex needs at least one map");
        }
        Ok(ComplexDecl { name, ring, maps, pos })
    }
}

/// 1-based line and column of a byte offset.
pub fn position_of(src: &str, offset: usize) -> Pos {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Pos { line, col }
}

/// Parses a program; errors carry line and column.
pub fn parse_program(src: &str) -> Result<Program, DslError> {
    let mut p = Parser { src, pos: 0 };
    let mut decls = Vec::new();
    while !p.at_end() {
        let (kw, at) = p.ident()?;
        let pos = p.position(at);
        decls.push(match kw.as_str() {
            "ring" => Decl::Ring(p.ring(pos)?),
            "module" => Decl::Module(p.module(pos)?),
            "complex" => Decl::Complex(p.complex(pos)?),
            other => return p.error(at, format!("expected 'ring', 'module' or 'complex', found '{other}'")),
        });
    }
    Ok(Program { decls })
}

fn write_matrix(f: &mut fmt::Formatter<'_>, m: &Matrix) -> fmt::Result {
    let rows: Vec<String> =
        m.iter().map(|r| format!("[{}]", r.iter().map(|e| e.text.as_str()).collect::<Vec<_>>().join(", "))).collect();
    write!(f, "[{}]", rows.join(", "))
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Ring(r) => {
                let ideal: Vec<&str> = r.ideal.iter().map(|e| e.text.as_str()).collect();
                write!(f, "ring {} = char {} vars [{}] ideal ({})", r.name, r.p, r.vars.join(", "), ideal.join(", "))
            }
            Decl::Module(m) => {
                write!(f, "module {} over {} = ", m.name, m.ring)?;
                match &m.body {
                    ModuleBody::Coker(a) => {
                        write!(f, "coker ")?;
                        write_matrix(f, a)
                    }
                    ModuleBody::Free(n) => write!(f, "free {n}"),
                    ModuleBody::Residue => write!(f, "residue"),
                }
            }
            Decl::Complex(c) => {
                write!(f, "complex {} over {} = [", c.name, c.ring)?;
                for (i, m) in c.maps.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write_matrix(f, m)?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}
