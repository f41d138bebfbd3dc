//! Hamiltonian, topological-symmetry generators, gradings and the checks of
//! the Z2-graded type (1,p) and Zn-graded type (1,...,1) algebras.
//!
//! The boson is truncated at `D` levels, so identities involving `a^dag` are
//! only tested on columns with boson level `n <= D - 1 - g`, where `g` is
//! the largest number of `a^dag` factors in any term. On those columns the
//! truncated products coincide with the untruncated ones.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::operator::{Bracket, Operator};
use crate::report::VerificationReport;
use crate::representations::{
    boson_a, boson_a_dag, c_dag_op, c_op, embed, number_ops, Factor, SpaceConfig,
};
use crate::Complex;

/// Residual tolerance for identities with floating-point ladder amplitudes.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Smallest number of boson levels left after the guard band.
const MIN_GUARDED_LEVELS: usize = 2;

/// Overall factor of the Z2-graded generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// `1 / sqrt(2p)`.
    #[default]
    Stated,
    /// `sqrt(2 / p)`, the factor for which `{Q^2,Q^dag} + Q Q^dag Q = 2HQ`
    /// holds with `H = a^dag a + N`. For `Q = c (aA + a^dag B)` the left side
    /// is `c^3 p X` and the right side `2 c X`, so `c^2 = 2/p`.
    Balanced,
}

impl Normalization {
    pub fn factor(self, p: usize) -> f64 {
        match self {
            Normalization::Stated => 1.0 / (2.0 * p as f64).sqrt(),
            Normalization::Balanced => (2.0 / p as f64).sqrt(),
        }
    }
}

/// Parameters of the Z2-graded generator: split `r` and a permutation of
/// `1..=p` (1-based) applied to the orthofermion labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z2Spec {
    cfg: SpaceConfig,
    r: usize,
    perm: Vec<usize>,
    norm: Normalization,
}

impl Z2Spec {
    /// Uses the identity permutation.
    pub fn new(cfg: SpaceConfig, r: usize) -> Result<Self> {
        let perm = (1..=cfg.p()).collect();
        Self::with_permutation(cfg, r, perm)
    }

    pub fn with_permutation(cfg: SpaceConfig, r: usize, perm: Vec<usize>) -> Result<Self> {
        let p = cfg.p();
        if p < 2 || r < 1 || r > p - 1 {
            return Err(Error::SplitOutOfRange { r, p });
        }
        let mut seen = vec![false; p + 1];
        let bijective = perm.len() == p
            && perm.iter().all(|&g| {
                let fresh = (1..=p).contains(&g) && !seen[g];
                if fresh {
                    seen[g] = true;
                }
                fresh
            });
        if !bijective {
            return Err(Error::InvalidPermutation(perm, p));
        }
        Ok(Self {
            cfg,
            r,
            perm,
            norm: Normalization::Stated,
        })
    }

    pub fn with_normalization(mut self, norm: Normalization) -> Self {
        self.norm = norm;
        self
    }

    pub fn normalization(&self) -> Normalization {
        self.norm
    }

    pub fn cfg(&self) -> &SpaceConfig {
        &self.cfg
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }
}

/// The Zn-graded setting, `n = p + 1` and `q = exp(2 pi i / n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZnSpec {
    cfg: SpaceConfig,
}

impl ZnSpec {
    pub fn new(cfg: SpaceConfig) -> Self {
        Self { cfg }
    }

    pub fn cfg(&self) -> &SpaceConfig {
        &self.cfg
    }

    pub fn n(&self) -> usize {
        self.cfg.p() + 1
    }

    pub fn q(&self) -> Complex {
        grading_root(self.n())
    }
}

/// `exp(2 pi i / n)`.
pub fn grading_root(n: usize) -> Complex {
    Complex::from_polar(1.0, 2.0 * PI / n as f64)
}

fn boson(cfg: &SpaceConfig, op: &Operator) -> Result<Operator> {
    embed(cfg, Factor::Boson(op))
}

fn ortho(cfg: &SpaceConfig, op: &Operator) -> Result<Operator> {
    embed(cfg, Factor::Ortho(op))
}

/// `H = a^dag a + sum_g c_g^dag c_g`.
pub fn hamiltonian(cfg: &SpaceConfig) -> Result<Operator> {
    let a = boson_a(cfg.cutoff())?;
    let number = a.adjoint().mul(&a)?;
    let (n, _) = number_ops(cfg.p())?;
    boson(cfg, &number)?.add(&ortho(cfg, &n)?)
}

/// `Q = (a sum_{j<=r} c_{s(j)}^dag + a^dag sum_{j>r} c_{s(j)}) / sqrt(2p)`,
/// or with factor `sqrt(2/p)` under [`Normalization::Balanced`].
pub fn q_z2(spec: &Z2Spec) -> Result<Operator> {
    let cfg = spec.cfg();
    let p = cfg.p();
    let dim = cfg.ortho_dim();
    let creators = spec.perm[..spec.r]
        .iter()
        .map(|&g| c_dag_op(p, g))
        .collect::<Result<Vec<_>>>()?;
    let annihilators = spec.perm[spec.r..]
        .iter()
        .map(|&g| c_op(p, g))
        .collect::<Result<Vec<_>>>()?;

    let lower = boson(cfg, &boson_a(cfg.cutoff())?)?;
    let raise = boson(cfg, &boson_a_dag(cfg.cutoff())?)?;
    let first = lower.mul(&ortho(cfg, &Operator::sum(dim, &creators)?)?)?;
    let second = raise.mul(&ortho(cfg, &Operator::sum(dim, &annihilators)?)?)?;
    first.add(&second)?.scale_real(spec.norm.factor(p))
}

/// `(-1)^N`: `+1` on the empty cylinder, `-1` otherwise.
pub fn tau_z2(cfg: &SpaceConfig) -> Result<Operator> {
    let signs: Vec<f64> = (0..=cfg.p())
        .map(|s| if s == 0 { 1.0 } else { -1.0 })
        .collect();
    ortho(cfg, &Operator::real_diagonal(&signs)?)
}

/// `Q = a c_1^dag + c_2^dag c_1 + ... + c_p^dag c_{p-1} + a^dag c_p`.
pub fn q_zn(spec: &ZnSpec) -> Result<Operator> {
    let cfg = spec.cfg();
    let p = cfg.p();
    let lower = boson(cfg, &boson_a(cfg.cutoff())?)?;
    let raise = boson(cfg, &boson_a_dag(cfg.cutoff())?)?;

    let mut q = lower.mul(&ortho(cfg, &c_dag_op(p, 1)?)?)?;
    for alpha in 2..=p {
        let hop = c_dag_op(p, alpha)?.mul(&c_op(p, alpha - 1)?)?;
        q = q.add(&ortho(cfg, &hop)?)?;
    }
    q.add(&raise.mul(&ortho(cfg, &c_op(p, p)?)?)?)
}

/// `q^{script-N}`: `diag(1, q, ..., q^p)` on the orthofermion factor.
pub fn tau_zn(spec: &ZnSpec) -> Result<Operator> {
    let q = spec.q();
    let phases: Vec<Complex> = (0..=spec.cfg().p()).map(|s| q.powu(s as u32)).collect();
    ortho(spec.cfg(), &Operator::diagonal(&phases)?)
}

/// `C(a, b)` with the convention `C(a, b) = 0` for `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> f64 {
    if b < 0 || a < 0 || b > a {
        return 0.0;
    }
    let b = b.min(a - b);
    (0..b).fold(1.0, |acc, i| acc * (a - i) as f64 / (i + 1) as f64)
}

/// `M_{n-2k} = (-1)^k [C(n-k-1, k) / 2^k + C(n-k-1, k-1) H / 2^(k-1)]`.
pub fn m_coeff(n: usize, k: usize, h: &Operator) -> Result<Operator> {
    if n < 2 || k < 1 || k > n / 2 {
        return Err(Error::CoefficientOutOfRange { n, k });
    }
    let (ni, ki) = (n as i64, k as i64);
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let constant = binomial(ni - ki - 1, ki) / 2f64.powi(k as i32);
    let linear = binomial(ni - ki - 1, ki - 1) / 2f64.powi(k as i32 - 1);
    Operator::identity(h.dim())
        .scale_real(sign * constant)?
        .add(&h.scale_real(sign * linear)?)
}

fn check_cutoff(cfg: &SpaceConfig, max_guard: usize) -> Result<()> {
    if cfg.cutoff() < 1 + max_guard + MIN_GUARDED_LEVELS {
        return Err(Error::CutoffTooSmall {
            cutoff: cfg.cutoff(),
            guard: max_guard,
            min_levels: MIN_GUARDED_LEVELS,
        });
    }
    Ok(())
}

/// Residual of `lhs - rhs` on columns with boson level `n <= D - 1 - guard`.
pub fn guarded_residual(
    cfg: &SpaceConfig,
    lhs: &Operator,
    rhs: &Operator,
    guard: usize,
) -> Result<f64> {
    let top = cfg
        .cutoff()
        .checked_sub(1 + guard)
        .ok_or(Error::CutoffTooSmall {
            cutoff: cfg.cutoff(),
            guard,
            min_levels: 0,
        })?;
    let diff = lhs.sub(rhs)?;
    let kept = diff.restrict_columns(|j| cfg.label(j).n <= top);
    Ok(kept.entries().iter().map(|z| z.norm()).fold(0.0, f64::max))
}

struct Recorder<'a> {
    cfg: &'a SpaceConfig,
    tol: f64,
    report: VerificationReport,
}

impl Recorder<'_> {
    fn check(
        &mut self,
        name: &str,
        relation: &str,
        lhs: &Operator,
        rhs: &Operator,
        guard: usize,
    ) -> Result<()> {
        let r = guarded_residual(self.cfg, lhs, rhs, guard)?;
        self.report.record(name, relation, r, self.tol, guard);
        Ok(())
    }
}

/// Checks the Z2-graded topological symmetry of type `(1,p)` generated by
/// [`q_z2`] with grading [`tau_z2`].
pub fn verify_z2(spec: &Z2Spec, tolerance: f64) -> Result<VerificationReport> {
    let cfg = spec.cfg();
    check_cutoff(cfg, 3)?;
    let dim = cfg.dim();
    let h = hamiltonian(cfg)?;
    let q = q_z2(spec)?;
    let qd = q.adjoint();
    let tau = tau_z2(cfg)?;
    let zero = Operator::zero(dim);
    let id = Operator::identity(dim);
    let q2 = q.mul(&q)?;

    let mut rec = Recorder {
        cfg,
        tol: tolerance,
        report: VerificationReport::new("z2", cfg.p(), cfg.cutoff()),
    };
    rec.check("[H,Q] = 0", "[H,Q] = 0", &h.commutator(&q)?, &zero, 1)?;
    let cubic = q2
        .anticommutator(&qd)?
        .add(&Operator::product(dim, [&q, &qd, &q])?)?;
    rec.check(
        "{Q^2,Q^dag} + Q Q^dag Q = 2HQ",
        "{Q^2,Q^dag} + Q Q^dag Q = 2 H Q",
        &cubic,
        &h.mul(&q)?.scale_real(2.0)?,
        3,
    )?;
    rec.check("Q^3 = 0", "Q^3 = 0", &q2.mul(&q)?, &zero, 3)?;
    rec.check("[H,tau] = 0", "[H,tau] = 0", &h.commutator(&tau)?, &zero, 1)?;
    rec.check(
        "{tau,Q} = 0",
        "{tau,Q} = 0",
        &tau.anticommutator(&q)?,
        &zero,
        1,
    )?;
    rec.check("tau^2 = 1", "tau^2 = 1", &tau.mul(&tau)?, &id, 0)?;
    rec.check("tau^dag = tau", "tau^dag = tau", &tau.adjoint(), &tau, 0)?;
    Ok(rec.report)
}

/// Checks the Zn-graded topological symmetry of type `(1,...,1)`,
/// `n = p + 1`, generated by [`q_zn`] with grading [`tau_zn`] and
/// `K = H`.
///
/// The series on the left of the `Q_1`/`Q_2` identities is
/// `sum_{k=0}^{n/2} M_{n-2k} Q_i^{n-2k}` with `M_n = 1` and the remaining
/// coefficients from [`m_coeff`].
pub fn verify_zn(spec: &ZnSpec, tolerance: f64) -> Result<VerificationReport> {
    let cfg = spec.cfg();
    let n = spec.n();
    check_cutoff(cfg, n)?;
    let dim = cfg.dim();
    let h = hamiltonian(cfg)?;
    let k_op = h.clone();
    let q = q_zn(spec)?;
    let qd = q.adjoint();
    let tau = tau_zn(spec)?;
    let zero = Operator::zero(dim);
    let id = Operator::identity(dim);
    let sqrt_half = std::f64::consts::FRAC_1_SQRT_2;
    let i = Complex::new(0.0, 1.0);

    let q1 = q.add(&qd)?.scale_real(sqrt_half)?;
    let q2 = q.sub(&qd)?.scale(-i * sqrt_half)?;

    let coeffs: Vec<Operator> = (1..=n / 2)
        .map(|k| m_coeff(n, k, &h))
        .collect::<Result<_>>()?;
    let series = |x: &Operator| -> Result<Operator> {
        let mut acc = x.pow(n as u32);
        for (k, m) in (1..=n / 2).zip(&coeffs) {
            acc = acc.add(&m.mul(&x.pow((n - 2 * k) as u32))?)?;
        }
        Ok(acc)
    };
    let norm = sqrt_half.powi(n as i32);

    let mut rec = Recorder {
        cfg,
        tol: tolerance,
        report: VerificationReport::new("zn", cfg.p(), cfg.cutoff()),
    };
    rec.check(
        &format!("Q^{n} = K (K = H)"),
        "Q^n = K",
        &q.pow(n as u32),
        &k_op,
        n,
    )?;
    rec.check(
        "Q1 series",
        "Q1^n + M_{n-2} Q1^{n-2} + ... = (K + K^dag) / sqrt2^n",
        &series(&q1)?,
        &k_op.add(&k_op.adjoint())?.scale_real(norm)?,
        n,
    )?;
    let in_ = i.powu(n as u32);
    let minus_in = (-i).powu(n as u32);
    rec.check(
        "Q2 series",
        "Q2^n + M_{n-2} Q2^{n-2} + ... = (i^n K^dag + (-i)^n K) / sqrt2^n",
        &series(&q2)?,
        &k_op
            .adjoint()
            .scale(in_)?
            .add(&k_op.scale(minus_in)?)?
            .scale_real(norm)?,
        n,
    )?;
    rec.check(
        "[tau,Q]_q = 0",
        "tau Q - q Q tau = 0",
        &tau.bracket(&q, Bracket::QCommutator(spec.q()))?,
        &zero,
        1,
    )?;
    rec.check(
        &format!("tau^{n} = 1"),
        "tau^n = 1",
        &tau.pow(n as u32),
        &id,
        0,
    )?;
    rec.check(
        "tau^dag tau = 1",
        "tau^dag = tau^-1",
        &tau.adjoint().mul(&tau)?,
        &id,
        0,
    )?;
    rec.check(
        "tau tau^dag = 1",
        "tau^dag = tau^-1",
        &tau.mul(&tau.adjoint())?,
        &id,
        0,
    )?;
    rec.check("[H,tau] = 0", "[H,tau] = 0", &h.commutator(&tau)?, &zero, 0)?;
    rec.check("[H,Q] = 0", "[H,Q] = 0", &h.commutator(&q)?, &zero, 1)?;
    for (k, m) in (1..=n / 2).zip(&coeffs) {
        let label = n - 2 * k;
        rec.check(
            &format!("[M_{label},Q] = 0"),
            "[M_i,Q] = 0",
            &m.commutator(&q)?,
            &zero,
            1,
        )?;
        rec.check(
            &format!("M_{label} hermitian"),
            "M_i^dag = M_i",
            &m.adjoint(),
            m,
            0,
        )?;
    }
    Ok(rec.report)
}

/// An energy level of `H` with its degeneracy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub energy: f64,
    pub multiplicity: usize,
}

/// Eigenvalues of `H` grouped by energy, for energies `E <= D - 2` (the
/// levels not cut by the truncation).
pub fn degeneracies(cfg: &SpaceConfig) -> Result<Vec<Level>> {
    const GROUP_TOL: f64 = 1e-8;
    let values = hamiltonian(cfg)?.hermitian_eigenvalues()?;
    let ceiling = cfg.cutoff() as f64 - 2.0 + GROUP_TOL;
    let mut levels: Vec<Level> = Vec::new();
    for e in values.into_iter().filter(|&e| e <= ceiling) {
        match levels.last_mut() {
            Some(last) if (e - last.energy).abs() <= GROUP_TOL => last.multiplicity += 1,
            _ => levels.push(Level {
                energy: e,
                multiplicity: 1,
            }),
        }
    }
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representations::BasisLabel;
    use approx::assert_abs_diff_eq;

    fn cfg(p: usize, d: usize) -> SpaceConfig {
        SpaceConfig::new(p, d).unwrap()
    }

    fn real(x: f64) -> Complex {
        Complex::new(x, 0.0)
    }

    #[test]
    fn hamiltonian_small_case() {
        let c = cfg(1, 2);
        let h = hamiltonian(&c).unwrap();
        let at = |s, n| h.get(c.index(BasisLabel { s, n }), c.index(BasisLabel { s, n }));
        assert_eq!(at(0, 0), real(0.0));
        assert_eq!(at(1, 0), real(1.0));
        assert_eq!(at(0, 1), real(1.0));
        assert_eq!(at(1, 1), real(2.0));
        assert_eq!(h.nonzero_count(), 3);
        assert_eq!(h.hermitian_deviation(), 0.0);
    }

    #[test]
    fn ground_state_is_unique() {
        let levels = degeneracies(&cfg(2, 8)).unwrap();
        assert_eq!(levels[0].energy, 0.0);
        assert_eq!(levels[0].multiplicity, 1);
        assert_eq!(levels.len(), 7);
        for l in &levels[1..] {
            assert_eq!(l.multiplicity, 3);
        }
    }

    #[test]
    fn susy_pairing_at_p1() {
        let levels = degeneracies(&cfg(1, 8)).unwrap();
        assert_eq!(levels[0].multiplicity, 1);
        assert!(levels[1..].iter().all(|l| l.multiplicity == 2));
    }

    #[test]
    fn z2_generator_p2() {
        let c = cfg(2, 4);
        let spec = Z2Spec::new(c, 1).unwrap();
        let q = q_z2(&spec).unwrap();
        let a = boson_a(4).unwrap();
        let expected = a
            .tensor(&c_dag_op(2, 1).unwrap())
            .add(&a.adjoint().tensor(&c_op(2, 2).unwrap()))
            .unwrap()
            .scale_real(0.5)
            .unwrap();
        assert!(q.residual_norm(&expected).unwrap() < 1e-15);
        let vac = c.index(BasisLabel { s: 0, n: 0 });
        assert!(q.column(vac).iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn z2_generator_term_split() {
        // p=3, r=2: a (c1^dag + c2^dag) + a^dag c3
        let c = cfg(3, 4);
        let q = q_z2(&Z2Spec::new(c, 2).unwrap()).unwrap();
        let s6 = 6f64.sqrt();
        // a c1^dag: (s=0,n=1) -> (s=1,n=0) amplitude 1/sqrt6
        let from = c.index(BasisLabel { s: 0, n: 1 });
        assert_abs_diff_eq!(q.get(c.index(BasisLabel { s: 1, n: 0 }), from).re, 1.0 / s6);
        assert_abs_diff_eq!(q.get(c.index(BasisLabel { s: 2, n: 0 }), from).re, 1.0 / s6);
        // a^dag c3: (s=3,n=0) -> (s=0,n=1)
        let from = c.index(BasisLabel { s: 3, n: 0 });
        assert_abs_diff_eq!(q.get(c.index(BasisLabel { s: 0, n: 1 }), from).re, 1.0 / s6);
    }

    #[test]
    fn z2_spec_validation() {
        assert!(matches!(
            Z2Spec::new(cfg(1, 12), 1),
            Err(Error::SplitOutOfRange { .. })
        ));
        assert!(Z2Spec::new(cfg(3, 12), 0).is_err());
        assert!(Z2Spec::new(cfg(3, 12), 3).is_err());
        assert!(matches!(
            Z2Spec::with_permutation(cfg(3, 12), 1, vec![1, 1, 2]),
            Err(Error::InvalidPermutation(..))
        ));
        assert!(Z2Spec::with_permutation(cfg(3, 12), 1, vec![1, 2]).is_err());
        assert!(Z2Spec::with_permutation(cfg(3, 12), 1, vec![0, 1, 2]).is_err());
        assert!(Z2Spec::with_permutation(cfg(3, 12), 1, vec![2, 3, 1]).is_ok());
    }

    #[test]
    fn z2_grading() {
        let c = cfg(2, 3);
        let tau = tau_z2(&c).unwrap();
        let expected =
            Operator::identity(3).tensor(&Operator::real_diagonal(&[1.0, -1.0, -1.0]).unwrap());
        assert_eq!(tau, expected);
        assert_eq!(tau.mul(&tau).unwrap(), Operator::identity(9));
        let t1 = tau_z2(&cfg(1, 2)).unwrap();
        assert_eq!(
            t1,
            Operator::identity(2).tensor(&Operator::real_diagonal(&[1.0, -1.0]).unwrap())
        );
    }

    #[test]
    fn verify_z2_balanced_generator() {
        let spec = Z2Spec::new(cfg(2, 12), 1)
            .unwrap()
            .with_normalization(Normalization::Balanced);
        let r = verify_z2(&spec, DEFAULT_TOLERANCE).unwrap();
        assert!(r.pass, "{r}");
        assert_eq!(r.find("tau^2 = 1").unwrap().residual, 0.0);
        let spec = Z2Spec::with_permutation(cfg(3, 12), 2, vec![2, 3, 1])
            .unwrap()
            .with_normalization(Normalization::Balanced);
        let r = verify_z2(&spec, DEFAULT_TOLERANCE).unwrap();
        assert!(r.pass, "{r}");
    }

    #[test]
    fn stated_generator_misses_cubic_relation_by_four() {
        // every relation except the cubic one is homogeneous in Q
        let c = cfg(3, 10);
        let spec = Z2Spec::new(c, 1).unwrap();
        let r = verify_z2(&spec, DEFAULT_TOLERANCE).unwrap();
        let failing: Vec<_> = r.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(failing, ["{Q^2,Q^dag} + Q Q^dag Q = 2HQ"]);

        let h = hamiltonian(&c).unwrap();
        let q = q_z2(&spec).unwrap();
        let qd = q.adjoint();
        let lhs = q
            .mul(&q)
            .unwrap()
            .anticommutator(&qd)
            .unwrap()
            .add(&Operator::product(c.dim(), [&q, &qd, &q]).unwrap())
            .unwrap();
        let rhs_quarter = h.mul(&q).unwrap().scale_real(0.5).unwrap();
        assert!(guarded_residual(&c, &lhs, &rhs_quarter, 3).unwrap() < 1e-12);
    }

    #[test]
    fn normalization_factors() {
        assert_abs_diff_eq!(Normalization::Stated.factor(2), 0.5);
        assert_abs_diff_eq!(Normalization::Balanced.factor(2), 1.0);
        assert_abs_diff_eq!(
            Normalization::Balanced.factor(5),
            2.0 * Normalization::Stated.factor(5),
            epsilon = 1e-15
        );
    }

    #[test]
    fn verify_z2_rejects_small_cutoff() {
        let spec = Z2Spec::new(cfg(2, 5), 1).unwrap();
        assert!(matches!(
            verify_z2(&spec, DEFAULT_TOLERANCE),
            Err(Error::CutoffTooSmall { .. })
        ));
        assert!(verify_z2(&Z2Spec::new(cfg(2, 6), 1).unwrap(), DEFAULT_TOLERANCE).is_ok());
    }

    #[test]
    fn zn_generator_p1_has_no_middle_terms() {
        let c = cfg(1, 5);
        let q = q_zn(&ZnSpec::new(c)).unwrap();
        let a = boson_a(5).unwrap();
        let expected = a
            .tensor(&c_dag_op(1, 1).unwrap())
            .add(&a.adjoint().tensor(&c_op(1, 1).unwrap()))
            .unwrap();
        assert_eq!(q, expected);
    }

    #[test]
    fn zn_generator_actions() {
        let c = cfg(2, 6);
        let q = q_zn(&ZnSpec::new(c)).unwrap();
        for n in 0..6 {
            let from = c.index(BasisLabel { s: 1, n });
            assert_eq!(q.get(c.index(BasisLabel { s: 2, n }), from), real(1.0));
        }
        for n in 1..6 {
            let from = c.index(BasisLabel { s: 0, n });
            let col = q.column(from);
            let to = c.index(BasisLabel { s: 1, n: n - 1 });
            assert_abs_diff_eq!(col[to].re, (n as f64).sqrt(), epsilon = 1e-15);
            assert_eq!(col.iter().filter(|z| z.norm() != 0.0).count(), 1);
        }
    }

    #[test]
    fn zn_grading() {
        let spec = ZnSpec::new(cfg(2, 4));
        let q = spec.q();
        assert_abs_diff_eq!(q.norm(), 1.0, epsilon = 1e-15);
        assert!((q.powu(3) - real(1.0)).norm() < 1e-15);
        let tau = tau_zn(&spec).unwrap();
        let expected =
            Operator::identity(4).tensor(&Operator::diagonal(&[real(1.0), q, q * q]).unwrap());
        assert_eq!(tau, expected);
        assert!(tau.pow(3).residual_norm(&Operator::identity(12)).unwrap() < 1e-12);
        let conj = Operator::from_fn(12, |i, j| tau.get(i, j).conj()).unwrap();
        assert_eq!(tau.adjoint(), conj);
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(0, 1), 0.0);
        assert_eq!(binomial(0, 0), 1.0);
        assert_eq!(binomial(1, 2), 0.0);
        assert_eq!(binomial(3, -1), 0.0);
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(6, 3), 20.0);
    }

    #[test]
    fn m_coefficients() {
        let c = cfg(1, 4);
        let h = hamiltonian(&c).unwrap();
        let id = Operator::identity(c.dim());
        // n=2: M_0 = -H
        assert_eq!(m_coeff(2, 1, &h).unwrap(), h.scale_real(-1.0).unwrap());
        // n=3: M_1 = -(1/2 + H)
        let m1 = m_coeff(3, 1, &h).unwrap();
        let expected = id
            .scale_real(0.5)
            .unwrap()
            .add(&h)
            .unwrap()
            .scale_real(-1.0)
            .unwrap();
        assert_eq!(m1, expected);
        // n=4, k=2: M_0 = H/2
        assert_eq!(m_coeff(4, 2, &h).unwrap(), h.scale_real(0.5).unwrap());
        assert!(m_coeff(4, 3, &h).is_err());
        assert!(m_coeff(4, 0, &h).is_err());
        assert!(m_coeff(1, 1, &h).is_err());
    }

    #[test]
    fn zn_cube_on_p2_matches_hand_trace() {
        let c = cfg(2, 12);
        let q3 = q_zn(&ZnSpec::new(c)).unwrap().pow(3);
        for n in 0..=8 {
            for (s, e) in [(0, n as f64), (1, n as f64 + 1.0), (2, n as f64 + 1.0)] {
                let j = c.index(BasisLabel { s, n });
                let col = q3.column(j);
                for (i, z) in col.iter().enumerate() {
                    let want = if i == j { e } else { 0.0 };
                    assert_abs_diff_eq!(z.re, want, epsilon = 1e-12);
                    assert_abs_diff_eq!(z.im, 0.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn verify_zn_examples() {
        for p in [1, 2] {
            let r = verify_zn(&ZnSpec::new(cfg(p, 12)), DEFAULT_TOLERANCE).unwrap();
            assert!(r.pass, "{r}");
        }
    }

    #[test]
    fn verify_zn_rejects_small_cutoff() {
        // n=3 needs D >= 6
        assert!(verify_zn(&ZnSpec::new(cfg(2, 5)), DEFAULT_TOLERANCE).is_err());
        assert!(verify_zn(&ZnSpec::new(cfg(2, 6)), DEFAULT_TOLERANCE).is_ok());
    }

    #[test]
    fn guard_band_excludes_top_levels() {
        let c = cfg(1, 4);
        let a = boson(&c, &boson_a(4).unwrap()).unwrap();
        let ad = a.adjoint();
        // [a, a^dag] = 1 fails only on the top boson level
        let comm = a.commutator(&ad).unwrap();
        let id = Operator::identity(c.dim());
        assert!(guarded_residual(&c, &comm, &id, 0).unwrap() > 1.0);
        assert!(guarded_residual(&c, &comm, &id, 1).unwrap() < 1e-14);
    }
}
