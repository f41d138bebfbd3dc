//! A small operator-expression language.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := scalar '*'? factor | primary ('^' uint)?
//! primary := atom | 'dag(' expr ')' | 'comm(' expr ',' expr ')'
//!          | 'acomm(' expr ',' expr ')' | 'qcomm(' expr ',' expr ')' | '(' expr ')'
//! atom    := 'a' | 'c[' uint ']' | 'b[' uint ']' | 'N' | 'NN' | 'H'
//!          | 'Q' | 'Qz' | 'tau' | 'tauz' | 'I'
//! scalar  := real | '(' real ('+' | '-') real 'i' ')' | '(' real 'i' ')'
//! ```
//!
//! `NN` is the ball-counting operator `sum_a a c_a^dag c_a`; `Q`/`tau` are
//! the Z2 generator and grading, `Qz`/`tauz` the Zn ones. A leading `-` is
//! accepted on scalars, so `-1*X` and `A + -2*B` parse.

mod eval;
mod parser;

use std::fmt;

pub use eval::{boson_raising_count, eval, EvalContext, EvalError};
pub use parser::{parse, ParseError};

use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    /// Boson lowering operator `a`.
    A,
    /// Orthofermion annihilator `c[k]`.
    C(usize),
    /// Cylinder annihilator `b[k]`.
    B(usize),
    N,
    NN,
    H,
    Q,
    Qz,
    Tau,
    Tauz,
    I,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Atom(Atom),
    Dag(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Scale(Complex, Box<Expr>),
    Pow(Box<Expr>, u32),
    Comm(Box<Expr>, Box<Expr>),
    Acomm(Box<Expr>, Box<Expr>),
    Qcomm(Box<Expr>, Box<Expr>),
}

// Tree constructors, not arithmetic: `Expr::mul(x, y)` builds a product node.
#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn atom(a: Atom) -> Self {
        Expr::Atom(a)
    }

    pub fn dag(e: Expr) -> Self {
        Expr::Dag(Box::new(e))
    }

    pub fn mul(x: Expr, y: Expr) -> Self {
        Expr::Mul(Box::new(x), Box::new(y))
    }

    pub fn add(x: Expr, y: Expr) -> Self {
        Expr::Add(Box::new(x), Box::new(y))
    }

    pub fn sub(x: Expr, y: Expr) -> Self {
        Expr::Sub(Box::new(x), Box::new(y))
    }

    pub fn scale(z: Complex, e: Expr) -> Self {
        Expr::Scale(z, Box::new(e))
    }

    pub fn pow(e: Expr, k: u32) -> Self {
        Expr::Pow(Box::new(e), k)
    }

    pub fn comm(x: Expr, y: Expr) -> Self {
        Expr::Comm(Box::new(x), Box::new(y))
    }

    pub fn acomm(x: Expr, y: Expr) -> Self {
        Expr::Acomm(Box::new(x), Box::new(y))
    }

    pub fn qcomm(x: Expr, y: Expr) -> Self {
        Expr::Qcomm(Box::new(x), Box::new(y))
    }

    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Scale(..) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::A => f.write_str("a"),
            Atom::C(k) => write!(f, "c[{k}]"),
            Atom::B(k) => write!(f, "b[{k}]"),
            Atom::N => f.write_str("N"),
            Atom::NN => f.write_str("NN"),
            Atom::H => f.write_str("H"),
            Atom::Q => f.write_str("Q"),
            Atom::Qz => f.write_str("Qz"),
            Atom::Tau => f.write_str("tau"),
            Atom::Tauz => f.write_str("tauz"),
            Atom::I => f.write_str("I"),
        }
    }
}

fn write_scalar(f: &mut fmt::Formatter<'_>, z: Complex) -> fmt::Result {
    if z.im == 0.0 {
        write!(f, "{}", z.re)
    } else {
        let sign = if z.im.is_sign_negative() { '-' } else { '+' };
        write!(f, "({}{}{}i)", z.re, sign, z.im.abs())
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min_level: u8) -> fmt::Result {
    if e.level() < min_level {
        write!(f, "(")?;
        write!(f, "{e}")?;
        write!(f, ")")
    } else {
        write!(f, "{e}")
    }
}

/// Canonical form: `parse(&e.to_string()) == Ok(e)`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Dag(e) => write!(f, "dag({e})"),
            Expr::Comm(x, y) => write!(f, "comm({x}, {y})"),
            Expr::Acomm(x, y) => write!(f, "acomm({x}, {y})"),
            Expr::Qcomm(x, y) => write!(f, "qcomm({x}, {y})"),
            Expr::Add(x, y) | Expr::Sub(x, y) => {
                write_at(f, x, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) {
                    " + "
                } else {
                    " - "
                })?;
                write_at(f, y, 2)
            }
            Expr::Mul(x, y) => {
                write_at(f, x, 2)?;
                f.write_str("*")?;
                write_at(f, y, 3)
            }
            Expr::Scale(z, e) => {
                write_scalar(f, *z)?;
                f.write_str("*")?;
                write_at(f, e, 3)
            }
            Expr::Pow(e, k) => {
                write_at(f, e, 5)?;
                write!(f, "^{k}")
            }
        }
    }
}
