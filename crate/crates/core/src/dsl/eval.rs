use thiserror::Error;

use super::{Atom, Expr};
use crate::error::Error;
use crate::operator::{Bracket, Operator};
use crate::representations::{b_op, boson_a, c_op, embed, number_ops, Factor, SpaceConfig};
use crate::symmetries::{grading_root, hamiltonian, q_z2, q_zn, tau_z2, tau_zn, Z2Spec, ZnSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("atom Q needs a Z2 generator specification (split r)")]
    UnboundGenerator,
    #[error(transparent)]
    Operator(#[from] Error),
}

/// Space and optional Z2 generator that atoms are bound against.
#[derive(Debug, Clone)]
pub struct EvalContext {
    pub cfg: SpaceConfig,
    pub z2: Option<Z2Spec>,
}

impl EvalContext {
    pub fn new(cfg: SpaceConfig) -> Self {
        Self { cfg, z2: None }
    }

    pub fn with_z2(mut self, spec: Z2Spec) -> Self {
        self.z2 = Some(spec);
        self
    }

    fn ortho(&self, op: &Operator) -> Result<Operator, EvalError> {
        Ok(embed(&self.cfg, Factor::Ortho(op))?)
    }

    fn atom(&self, atom: Atom) -> Result<Operator, EvalError> {
        let cfg = &self.cfg;
        let p = cfg.p();
        Ok(match atom {
            Atom::A => embed(cfg, Factor::Boson(&boson_a(cfg.cutoff())?))?,
            Atom::C(k) => self.ortho(&c_op(p, k)?)?,
            Atom::B(k) => self.ortho(&b_op(p, k)?)?,
            Atom::N => self.ortho(&number_ops(p)?.0)?,
            Atom::NN => self.ortho(&number_ops(p)?.1)?,
            Atom::H => hamiltonian(cfg)?,
            Atom::Q => {
                let spec = self.z2.as_ref().ok_or(EvalError::UnboundGenerator)?;
                if spec.cfg() != cfg {
                    return Err(Error::InvalidConfig(
                        "Z2 specification was built for a different space".into(),
                    )
                    .into());
                }
                q_z2(spec)?
            }
            Atom::Qz => q_zn(&ZnSpec::new(*cfg))?,
            Atom::Tau => tau_z2(cfg)?,
            Atom::Tauz => tau_zn(&ZnSpec::new(*cfg))?,
            Atom::I => Operator::identity(cfg.dim()),
        })
    }
}

/// Evaluates `e` in the full `D(p+1)`-dimensional space.
pub fn eval(e: &Expr, ctx: &EvalContext) -> Result<Operator, EvalError> {
    let bin = |x: &Expr, y: &Expr| -> Result<(Operator, Operator), EvalError> {
        Ok((eval(x, ctx)?, eval(y, ctx)?))
    };
    Ok(match e {
        Expr::Atom(a) => ctx.atom(*a)?,
        Expr::Dag(x) => eval(x, ctx)?.adjoint(),
        Expr::Mul(x, y) => {
            let (x, y) = bin(x, y)?;
            x.mul(&y)?
        }
        Expr::Add(x, y) => {
            let (x, y) = bin(x, y)?;
            x.add(&y)?
        }
        Expr::Sub(x, y) => {
            let (x, y) = bin(x, y)?;
            x.sub(&y)?
        }
        Expr::Scale(z, x) => eval(x, ctx)?.scale(*z)?,
        Expr::Pow(x, k) => eval(x, ctx)?.pow(*k),
        Expr::Comm(x, y) => {
            let (x, y) = bin(x, y)?;
            x.bracket(&y, Bracket::Commutator)?
        }
        Expr::Acomm(x, y) => {
            let (x, y) = bin(x, y)?;
            x.bracket(&y, Bracket::Anticommutator)?
        }
        Expr::Qcomm(x, y) => {
            let (x, y) = bin(x, y)?;
            let q = grading_root(ctx.cfg.p() + 1);
            x.bracket(&y, Bracket::QCommutator(q))?
        }
    })
}

/// `(raising, lowering)`: the most `a^dag` / `a` factors in any product term.
fn ladder_degree(e: &Expr) -> (usize, usize) {
    match e {
        Expr::Atom(Atom::A) => (0, 1),
        Expr::Atom(Atom::Q | Atom::Qz) => (1, 1),
        // a^dag a is exact in the truncated space
        Expr::Atom(_) => (0, 0),
        Expr::Dag(x) => {
            let (u, d) = ladder_degree(x);
            (d, u)
        }
        Expr::Scale(_, x) => ladder_degree(x),
        Expr::Pow(x, k) => {
            let (u, d) = ladder_degree(x);
            (u * *k as usize, d * *k as usize)
        }
        Expr::Add(x, y) | Expr::Sub(x, y) => {
            let (a, b) = (ladder_degree(x), ladder_degree(y));
            (a.0.max(b.0), a.1.max(b.1))
        }
        Expr::Mul(x, y) | Expr::Comm(x, y) | Expr::Acomm(x, y) | Expr::Qcomm(x, y) => {
            let (a, b) = (ladder_degree(x), ladder_degree(y));
            (a.0 + b.0, a.1 + b.1)
        }
    }
}

/// Guard band for `e`: an upper bound on the number of boson raising
/// factors in any term, so `e` is exact on columns with boson level
/// `n <= D - 1 - guard`.
pub fn boson_raising_count(e: &Expr) -> usize {
    ladder_degree(e).0
}
