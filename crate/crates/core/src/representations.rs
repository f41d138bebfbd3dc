//! Concrete matrices for orthofermions, cylinder operators and the
//! truncated boson, plus exact checks of the orthofermion and cylinder
//! relations.
//!
//! The orthofermion factor has basis `|0>, |1>, ..., |p>` where `|alpha>` is
//! the cylinder holding `alpha` balls. `c_alpha` is the matrix unit taking
//! `|alpha>` to `|0>`; `b_alpha` takes `|alpha>` to `|alpha-1>`.
//!
//! The full space is `boson (x) orthofermion` with flat index
//! `n * (p + 1) + s`.

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::report::VerificationReport;

/// Orthofermion order `p` and boson cutoff `D` (levels `0..D`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceConfig {
    p: usize,
    cutoff: usize,
}

impl SpaceConfig {
    pub fn new(p: usize, cutoff: usize) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidConfig(format!("order p={p} must be >= 1")));
        }
        if cutoff == 0 {
            return Err(Error::InvalidConfig("boson cutoff D must be >= 1".into()));
        }
        Ok(Self { p, cutoff })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Dimension of the orthofermion factor, `p + 1`.
    pub fn ortho_dim(&self) -> usize {
        self.p + 1
    }

    /// Dimension of the full space, `D * (p + 1)`.
    pub fn dim(&self) -> usize {
        self.cutoff * (self.p + 1)
    }

    pub fn label(&self, index: usize) -> BasisLabel {
        BasisLabel {
            s: index % (self.p + 1),
            n: index / (self.p + 1),
        }
    }

    pub fn index(&self, label: BasisLabel) -> usize {
        label.n * (self.p + 1) + label.s
    }
}

/// Basis state `|s> (x) |n>`: orthofermion level `s` and boson occupation `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    pub s: usize,
    pub n: usize,
}

fn check_index(p: usize, alpha: usize) -> Result<()> {
    if p >= 1 && (1..=p).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: alpha, p })
    }
}

fn check_order(p: usize) -> Result<()> {
    if p >= 1 {
        Ok(())
    } else {
        Err(Error::InvalidConfig("order p must be >= 1".into()))
    }
}

/// Orthofermion annihilator `c_alpha`: single 1 at 0-based `(0, alpha)`.
pub fn c_op(p: usize, alpha: usize) -> Result<Operator> {
    check_index(p, alpha)?;
    Ok(Operator::unit(p + 1, 0, alpha))
}

pub fn c_dag_op(p: usize, alpha: usize) -> Result<Operator> {
    Ok(c_op(p, alpha)?.adjoint())
}

/// Cylinder annihilator `b_alpha`, built from the orthofermions:
/// `b_1 = c_1` and `b_alpha = c_{alpha-1}^dag c_alpha` for `alpha > 1`.
pub fn b_op(p: usize, alpha: usize) -> Result<Operator> {
    check_index(p, alpha)?;
    if alpha == 1 {
        c_op(p, 1)
    } else {
        c_dag_op(p, alpha - 1)?.mul(&c_op(p, alpha)?)
    }
}

pub fn b_dag_op(p: usize, alpha: usize) -> Result<Operator> {
    Ok(b_op(p, alpha)?.adjoint())
}

/// `c_alpha^dag = b_alpha^dag ... b_1^dag`.
pub fn c_dag_from_b(p: usize, alpha: usize) -> Result<Operator> {
    check_index(p, alpha)?;
    let factors = (1..=alpha)
        .rev()
        .map(|k| b_dag_op(p, k))
        .collect::<Result<Vec<_>>>()?;
    Operator::product(p + 1, &factors)
}

/// `c_alpha = b_1 ... b_alpha`.
pub fn c_from_b(p: usize, alpha: usize) -> Result<Operator> {
    check_index(p, alpha)?;
    let factors = (1..=alpha)
        .map(|k| b_op(p, k))
        .collect::<Result<Vec<_>>>()?;
    Operator::product(p + 1, &factors)
}

/// Truncated boson lowering operator, `a|n> = sqrt(n)|n-1>` for `n < D`.
pub fn boson_a(cutoff: usize) -> Result<Operator> {
    if cutoff == 0 {
        return Err(Error::InvalidConfig("boson cutoff D must be >= 1".into()));
    }
    let mut entries = vec![crate::Complex::new(0.0, 0.0); cutoff * cutoff];
    for n in 1..cutoff {
        entries[(n - 1) * cutoff + n] = crate::Complex::new((n as f64).sqrt(), 0.0);
    }
    Operator::new(cutoff, entries)
}

pub fn boson_a_dag(cutoff: usize) -> Result<Operator> {
    Ok(boson_a(cutoff)?.adjoint())
}

/// `(N, script-N)`: `N = sum_a c_a^dag c_a` and `script-N = sum_a a c_a^dag c_a`.
pub fn number_ops(p: usize) -> Result<(Operator, Operator)> {
    check_order(p)?;
    let mut n = Operator::zero(p + 1);
    let mut script_n = Operator::zero(p + 1);
    for alpha in 1..=p {
        let proj = c_dag_op(p, alpha)?.mul(&c_op(p, alpha)?)?;
        n = n.add(&proj)?;
        script_n = script_n.add(&proj.scale_real(alpha as f64)?)?;
    }
    Ok((n, script_n))
}

/// A factor to be lifted into the full space.
#[derive(Debug, Clone, Copy)]
pub enum Factor<'a> {
    Boson(&'a Operator),
    Ortho(&'a Operator),
}

/// Lifts a boson factor as `A (x) 1` or an orthofermion factor as `1 (x) B`.
pub fn embed(cfg: &SpaceConfig, which: Factor<'_>) -> Result<Operator> {
    match which {
        Factor::Boson(a) => {
            if a.dim() != cfg.cutoff() {
                return Err(Error::DimensionMismatch {
                    op: "embed boson",
                    left: a.dim(),
                    right: cfg.cutoff(),
                });
            }
            Ok(a.tensor(&Operator::identity(cfg.ortho_dim())))
        }
        Factor::Ortho(b) => {
            if b.dim() != cfg.ortho_dim() {
                return Err(Error::DimensionMismatch {
                    op: "embed ortho",
                    left: b.dim(),
                    right: cfg.ortho_dim(),
                });
            }
            Ok(Operator::identity(cfg.cutoff()).tensor(b))
        }
    }
}

/// Exact check of the orthofermion algebra and its relation to the
/// cylinder operators. Every residual must be exactly zero.
pub fn verify_orthofermion_relations(p: usize) -> Result<VerificationReport> {
    check_order(p)?;
    let dim = p + 1;
    let mut report = VerificationReport::new("ortho", p, 0);
    let id = Operator::identity(dim);
    let zero = Operator::zero(dim);

    let c: Vec<Operator> = (1..=p).map(|a| c_op(p, a)).collect::<Result<_>>()?;
    let cd: Vec<Operator> = c.iter().map(Operator::adjoint).collect();
    let b: Vec<Operator> = (1..=p).map(|a| b_op(p, a)).collect::<Result<_>>()?;
    let bd: Vec<Operator> = b.iter().map(Operator::adjoint).collect();
    let n_total = Operator::sum(
        dim,
        &cd.iter()
            .zip(&c)
            .map(|(x, y)| x.mul(y))
            .collect::<Result<Vec<_>>>()?,
    )?;

    for a in 0..p {
        for bi in 0..p {
            let (al, be) = (a + 1, bi + 1);
            let mut lhs = c[a].mul(&cd[bi])?;
            let rhs = if a == bi {
                lhs = lhs.add(&n_total)?;
                &id
            } else {
                &zero
            };
            report.record_eq(
                format!("anticommutation[{al},{be}]"),
                "c_a c_b^dag + delta_ab sum_g c_g^dag c_g = delta_ab",
                &lhs,
                rhs,
                0.0,
            )?;
            report.record_eq(
                format!("annihilators nilpotent[{al},{be}]"),
                "c_a c_b = 0",
                &c[a].mul(&c[bi])?,
                &zero,
                0.0,
            )?;
            report.record_eq(
                format!("creators nilpotent[{al},{be}]"),
                "c_a^dag c_b^dag = 0",
                &cd[a].mul(&cd[bi])?,
                &zero,
                0.0,
            )?;
            if a != bi {
                report.record_eq(
                    format!("off-diagonal product[{al},{be}]"),
                    "c_a c_b^dag = 0 (b != a)",
                    &c[a].mul(&cd[bi])?,
                    &zero,
                    0.0,
                )?;
            }
        }

        let al = a + 1;
        report.record_eq(
            format!("occupation[{al}]"),
            "c_a^dag c_a = b_a^dag b_a",
            &cd[a].mul(&c[a])?,
            &bd[a].mul(&b[a])?,
            0.0,
        )?;
        report.record_eq(
            format!("vacancy[{al}]"),
            "c_a c_a^dag = b_1 b_1^dag",
            &c[a].mul(&cd[a])?,
            &b[0].mul(&bd[0])?,
            0.0,
        )?;
        report.record_eq(
            format!("creator from cylinder[{al}]"),
            "c_a^dag = b_a^dag ... b_1^dag",
            &c_dag_from_b(p, al)?,
            &cd[a],
            0.0,
        )?;
        report.record_eq(
            format!("annihilator from cylinder[{al}]"),
            "c_a = b_1 ... b_a",
            &c_from_b(p, al)?,
            &c[a],
            0.0,
        )?;
    }

    if p == 1 {
        report.record_eq(
            "fermion anticommutator",
            "c c^dag + c^dag c = 1",
            &c[0].anticommutator(&cd[0])?,
            &id,
            0.0,
        )?;
        report.record_eq(
            "fermion nilpotent",
            "c^2 = 0",
            &c[0].mul(&c[0])?,
            &zero,
            0.0,
        )?;
    }
    Ok(report)
}

/// Exact check of the cylinder (LIFO) operator relations on the
/// `(p+1)`-dimensional orthofermion factor.
pub fn verify_b_relations(p: usize) -> Result<VerificationReport> {
    check_order(p)?;
    let dim = p + 1;
    let mut report = VerificationReport::new("cylinder", p, 0);
    let id = Operator::identity(dim);
    let zero = Operator::zero(dim);

    // index 0 unused so b[alpha] reads naturally
    let mut b = vec![zero.clone()];
    for alpha in 1..=p {
        b.push(b_op(p, alpha)?);
    }
    let bd: Vec<Operator> = b.iter().map(Operator::adjoint).collect();

    for alpha in 1..=p {
        for beta in 1..=p {
            if beta != alpha + 1 {
                report.record_eq(
                    format!("double creation[{beta},{alpha}]"),
                    "b_beta^dag b_alpha^dag = 0 (beta != alpha+1)",
                    &bd[beta].mul(&bd[alpha])?,
                    &zero,
                    0.0,
                )?;
                report.record_eq(
                    format!("double annihilation[{alpha},{beta}]"),
                    "b_alpha b_beta = 0 (beta != alpha+1)",
                    &b[alpha].mul(&b[beta])?,
                    &zero,
                    0.0,
                )?;
            }
            if beta != alpha {
                report.record_eq(
                    format!("create after remove[{beta},{alpha}]"),
                    "b_beta^dag b_alpha = 0 (beta != alpha)",
                    &bd[beta].mul(&b[alpha])?,
                    &zero,
                    0.0,
                )?;
                report.record_eq(
                    format!("remove after create[{alpha},{beta}]"),
                    "b_alpha b_beta^dag = 0 (beta != alpha)",
                    &b[alpha].mul(&bd[beta])?,
                    &zero,
                    0.0,
                )?;
            }
        }
    }

    let occupied: Vec<Operator> = (1..=p).map(|a| bd[a].mul(&b[a])).collect::<Result<_>>()?;
    let vacated: Vec<Operator> = (1..=p).map(|a| b[a].mul(&bd[a])).collect::<Result<_>>()?;
    report.record_eq(
        "completeness (occupied)",
        "sum_a b_a^dag b_a + b_1 b_1^dag = 1",
        &Operator::sum(dim, &occupied)?.add(&vacated[0])?,
        &id,
        0.0,
    )?;
    report.record_eq(
        "completeness (vacated)",
        "sum_a b_a b_a^dag + b_p^dag b_p = 1",
        &Operator::sum(dim, &vacated)?.add(&occupied[p - 1])?,
        &id,
        0.0,
    )?;

    for beta in 1..=p {
        report.record_eq(
            format!("annihilator sandwich[{beta}]"),
            "b_beta = b_beta b_beta^dag b_beta",
            &Operator::product(dim, [&b[beta], &bd[beta], &b[beta]])?,
            &b[beta],
            0.0,
        )?;
        report.record_eq(
            format!("creator sandwich[{beta}]"),
            "b_beta^dag = b_beta^dag b_beta b_beta^dag",
            &Operator::product(dim, [&bd[beta], &b[beta], &bd[beta]])?,
            &bd[beta],
            0.0,
        )?;
        if beta >= 2 {
            report.record_eq(
                format!("annihilator below[{beta}]"),
                "b_beta = b_{beta-1}^dag b_{beta-1} b_beta",
                &Operator::product(dim, [&bd[beta - 1], &b[beta - 1], &b[beta]])?,
                &b[beta],
                0.0,
            )?;
            report.record_eq(
                format!("creator below[{beta}]"),
                "b_beta^dag = b_beta^dag b_{beta-1}^dag b_{beta-1}",
                &Operator::product(dim, [&bd[beta], &bd[beta - 1], &b[beta - 1]])?,
                &bd[beta],
                0.0,
            )?;
        }
        if beta < p {
            report.record_eq(
                format!("annihilator above[{beta}]"),
                "b_beta = b_beta b_{beta+1} b_{beta+1}^dag",
                &Operator::product(dim, [&b[beta], &b[beta + 1], &bd[beta + 1]])?,
                &b[beta],
                0.0,
            )?;
            report.record_eq(
                format!("creator above[{beta}]"),
                "b_beta^dag = b_{beta+1} b_{beta+1}^dag b_beta^dag",
                &Operator::product(dim, [&b[beta + 1], &bd[beta + 1], &bd[beta]])?,
                &bd[beta],
                0.0,
            )?;
        }
    }

    // vacuum conditions, read off column 0
    let vacuum_col = |op: &Operator| op.restrict_columns(|j| j == 0);
    for alpha in 1..=p {
        report.record_eq(
            format!("vacuum annihilated[{alpha}]"),
            "b_alpha |0> = 0",
            &vacuum_col(&b[alpha]),
            &zero,
            0.0,
        )?;
        let (expected, relation) = if alpha == 1 {
            (Operator::unit(dim, 1, 0), "b_1^dag |0> = |1>")
        } else {
            (zero.clone(), "b_alpha^dag |0> = 0 (alpha >= 2)")
        };
        report.record_eq(
            format!("vacuum creation[{alpha}]"),
            relation,
            &vacuum_col(&bd[alpha]),
            &expected,
            0.0,
        )?;
    }

    for alpha in 1..=p {
        let occ = &occupied[alpha - 1];
        let vac = &vacated[alpha - 1];
        report.record_eq(
            format!("occupied projector[{alpha}]"),
            "b_alpha^dag b_alpha = |alpha><alpha|",
            occ,
            &Operator::unit(dim, alpha, alpha),
            0.0,
        )?;
        report.record_eq(
            format!("vacated projector[{alpha}]"),
            "b_alpha b_alpha^dag = |alpha-1><alpha-1|",
            vac,
            &Operator::unit(dim, alpha - 1, alpha - 1),
            0.0,
        )?;
        for (tag, proj) in [("occupied", occ), ("vacated", vac)] {
            report.record_eq(
                format!("{tag} idempotent[{alpha}]"),
                "P^2 = P",
                &proj.mul(proj)?,
                proj,
                0.0,
            )?;
            report.record_eq(
                format!("{tag} hermitian[{alpha}]"),
                "P^dag = P",
                &proj.adjoint(),
                proj,
                0.0,
            )?;
        }
    }
    Ok(report)
}
