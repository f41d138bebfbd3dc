use std::fmt;

use super::{Atom, Expr};
use crate::Complex;

/// Syntax error with a 0-based byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at byte {}: expected {}, found {}",
            self.offset,
            self.expected.join(" | "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

const ATOMS: &[&str] = &[
    "a", "c[k]", "b[k]", "N", "NN", "H", "Q", "Qz", "tau", "tauz", "I",
];
const CALLS: &[&str] = &["dag(", "comm(", "acomm(", "qcomm("];

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(&["'+'", "'-'", "'*'", "'^'", "end of input"]));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn found(&self) -> String {
        match self.rest().chars().next() {
            None => "end of input".into(),
            Some(c) => format!("{c:?}"),
        }
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.found(),
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{}'", b as char)]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::add(lhs, self.term()?);
            } else if self.eat(b'-') {
                lhs = Expr::sub(lhs, self.term()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.eat(b'*') {
            lhs = Expr::mul(lhs, self.factor()?);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        if let Some(z) = self.scalar() {
            self.eat(b'*');
            let inner = self.factor()?;
            return Ok(Expr::scale(z, inner));
        }
        let base = self.primary()?;
        if self.eat(b'^') {
            self.skip_ws();
            let k = self.uint()?;
            let k = u32::try_from(k).map_err(|_| ParseError {
                offset: self.pos,
                expected: vec!["exponent fitting in 32 bits".into()],
                found: k.to_string(),
            })?;
            return Ok(Expr::pow(base, k));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(&["unsigned integer"]));
        }
        self.src[start..self.pos].parse().map_err(|_| ParseError {
            offset: start,
            expected: vec!["unsigned integer".into()],
            found: self.src[start..self.pos].to_string(),
        })
    }

    /// Unsigned decimal: `digits ('.' digits?)? ([eE] [+-]? digits)?` or `'.' digits`.
    fn number(&mut self) -> Option<f64> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while matches!(p.peek(), Some(b) if b.is_ascii_digit()) {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut n = digits(self);
        if self.peek() == Some(b'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            self.pos = start;
            return None;
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = mark;
            }
        }
        self.src[start..self.pos].parse().ok()
    }

    fn signed_number(&mut self) -> Option<f64> {
        let start = self.pos;
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        match self.number() {
            Some(x) => Some(if negative { -x } else { x }),
            None => {
                self.pos = start;
                None
            }
        }
    }

    /// Scalar literal, or `None` with the position restored.
    fn scalar(&mut self) -> Option<Complex> {
        let start = self.pos;
        match self.peek() {
            Some(b'0'..=b'9' | b'.' | b'-') => {
                if let Some(x) = self.signed_number() {
                    return Some(Complex::new(x, 0.0));
                }
            }
            Some(b'(') => {
                if let Some(z) = self.complex_literal() {
                    return Some(z);
                }
            }
            _ => {}
        }
        self.pos = start;
        None
    }

    fn complex_literal(&mut self) -> Option<Complex> {
        self.pos += 1; // '('
        self.skip_ws();
        let first = self.signed_number()?;
        self.skip_ws();
        let z = match self.peek()? {
            b'i' => {
                self.pos += 1;
                Complex::new(0.0, first)
            }
            b'+' | b'-' => {
                let negative = self.peek() == Some(b'-');
                self.pos += 1;
                self.skip_ws();
                let im = self.number()?;
                if self.peek() != Some(b'i') {
                    return None;
                }
                self.pos += 1;
                Complex::new(first, if negative { -im } else { im })
            }
            _ => Complex::new(first, 0.0),
        };
        self.skip_ws();
        if self.peek() != Some(b')') {
            return None;
        }
        self.pos += 1;
        Some(z)
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn index(&mut self) -> Result<usize, ParseError> {
        self.expect(b'[')?;
        self.skip_ws();
        let k = self.uint()?;
        self.expect(b']')?;
        Ok(k)
    }

    fn pair(&mut self) -> Result<(Expr, Expr), ParseError> {
        self.expect(b'(')?;
        let x = self.expr()?;
        self.expect(b',')?;
        let y = self.expr()?;
        self.expect(b')')?;
        Ok((x, y))
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(b')')?;
            return Ok(e);
        }
        let start = self.pos;
        let name = self.ident();
        let atom = match name {
            "a" => Atom::A,
            "c" => Atom::C(self.index()?),
            "b" => Atom::B(self.index()?),
            "N" => Atom::N,
            "NN" => Atom::NN,
            "H" => Atom::H,
            "Q" => Atom::Q,
            "Qz" => Atom::Qz,
            "tau" => Atom::Tau,
            "tauz" => Atom::Tauz,
            "I" => Atom::I,
            "dag" => {
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b')')?;
                return Ok(Expr::dag(e));
            }
            "comm" | "acomm" | "qcomm" => {
                let (x, y) = self.pair()?;
                return Ok(match name {
                    "comm" => Expr::comm(x, y),
                    "acomm" => Expr::acomm(x, y),
                    _ => Expr::qcomm(x, y),
                });
            }
            _ => {
                self.pos = start;
                let mut expected: Vec<&str> = ATOMS.to_vec();
                expected.extend_from_slice(CALLS);
                expected.extend_from_slice(&["'('", "scalar"]);
                let mut err = self.error(&expected);
                if !name.is_empty() {
                    err.found = format!("{name:?}");
                }
                return Err(err);
            }
        };
        Ok(Expr::Atom(atom))
    }
}
