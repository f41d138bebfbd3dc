//! Dense complex square matrices.
//!
//! Every algebra element in the crate (ladder operators, number operators,
//! Hamiltonians, symmetry generators, gradings) is an [`Operator`]. Entries
//! are stored row-major; basis indices are 0-based.

use std::fmt;

use crate::eigen;
use crate::error::{Error, Result};
use crate::Complex;

/// A square complex matrix with all entries finite.
#[derive(Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    data: Vec<Complex>,
}

/// The bracket used by [`Operator::bracket`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bracket {
    /// `AB - BA`
    Commutator,
    /// `AB + BA`
    Anticommutator,
    /// `AB - q BA`
    QCommutator(Complex),
}

fn check_finite(z: Complex) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(format!("{z}")))
    }
}

impl Operator {
    /// Builds an operator from `dim * dim` row-major entries.
    pub fn new(dim: usize, data: Vec<Complex>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyOperator);
        }
        if data.len() != dim * dim {
            return Err(Error::EntryCount {
                dim,
                expected: dim * dim,
                actual: data.len(),
            });
        }
        for z in &data {
            check_finite(*z)?;
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Result<Self> {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self::new(dim, data)
    }

    /// Builds an operator from real rows. Handy for tests and fixed matrices.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        for row in rows {
            if row.len() != dim {
                return Err(Error::EntryCount {
                    dim,
                    expected: dim * dim,
                    actual: rows.iter().map(Vec::len).sum(),
                });
            }
        }
        Self::new(
            dim,
            rows.iter()
                .flat_map(|r| r.iter().map(|&x| Complex::new(x, 0.0)))
                .collect(),
        )
    }

    /// # Panics
    /// Panics when `dim == 0`.
    pub fn zero(dim: usize) -> Self {
        assert!(dim > 0, "operator dimension must be at least 1");
        Self {
            dim,
            data: vec![Complex::new(0.0, 0.0); dim * dim],
        }
    }

    /// # Panics
    /// Panics when `dim == 0`.
    pub fn identity(dim: usize) -> Self {
        let mut op = Self::zero(dim);
        for i in 0..dim {
            op.data[i * dim + i] = Complex::new(1.0, 0.0);
        }
        op
    }

    /// Diagonal operator from complex diagonal values.
    pub fn diagonal(values: &[Complex]) -> Result<Self> {
        let dim = values.len();
        if dim == 0 {
            return Err(Error::EmptyOperator);
        }
        for z in values {
            check_finite(*z)?;
        }
        let mut op = Self::zero(dim);
        for (i, z) in values.iter().enumerate() {
            op.data[i * dim + i] = *z;
        }
        Ok(op)
    }

    pub fn real_diagonal(values: &[f64]) -> Result<Self> {
        let values: Vec<Complex> = values.iter().map(|&x| Complex::new(x, 0.0)).collect();
        Self::diagonal(&values)
    }

    /// The matrix unit with a single 1 at 0-based `(row, col)`.
    ///
    /// # Panics
    /// Panics when `row` or `col` is out of range.
    pub fn unit(dim: usize, row: usize, col: usize) -> Self {
        assert!(row < dim && col < dim, "matrix unit index out of range");
        let mut op = Self::zero(dim);
        op.data[row * dim + col] = Complex::new(1.0, 0.0);
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.data[row * self.dim + col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    /// Column `col` as a vector.
    pub fn column(&self, col: usize) -> Vec<Complex> {
        (0..self.dim).map(|i| self.get(i, col)).collect()
    }

    /// Number of entries that are not exactly zero.
    pub fn nonzero_count(&self) -> usize {
        self.data
            .iter()
            .filter(|z| z.re != 0.0 || z.im != 0.0)
            .count()
    }

    fn same_dim(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                op,
                left: self.dim,
                right: other.dim,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other, "add")?;
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other, "sub")?;
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other, "mul")?;
        let n = self.dim;
        let mut data = vec![Complex::new(0.0, 0.0); n * n];
        for i in 0..n {
            let out = &mut data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                // most operators here are very sparse
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                for (o, b) in out.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { dim: n, data })
    }

    pub fn scale(&self, z: Complex) -> Result<Self> {
        check_finite(z)?;
        Ok(Self {
            dim: self.dim,
            data: self.data.iter().map(|a| z * a).collect(),
        })
    }

    pub fn scale_real(&self, x: f64) -> Result<Self> {
        self.scale(Complex::new(x, 0.0))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.data[j * n + i].conj());
            }
        }
        Self { dim: n, data }
    }

    /// `self^k`, with `self^0` the identity.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.dim);
        for _ in 0..k {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    /// Kronecker product; entry `(i*dB + k, j*dB + l)` is `A[i][j] * B[k][l]`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let n = da * db;
        let mut data = vec![Complex::new(0.0, 0.0); n * n];
        for i in 0..da {
            for j in 0..da {
                let a = self.data[i * da + j];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for k in 0..db {
                    for l in 0..db {
                        data[(i * db + k) * n + j * db + l] = a * other.data[k * db + l];
                    }
                }
            }
        }
        Self { dim: n, data }
    }

    pub fn bracket(&self, other: &Self, kind: Bracket) -> Result<Self> {
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        match kind {
            Bracket::Commutator => ab.sub(&ba),
            Bracket::Anticommutator => ab.add(&ba),
            Bracket::QCommutator(q) => ab.sub(&ba.scale(q)?),
        }
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.bracket(other, Bracket::Commutator)
    }

    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.bracket(other, Bracket::Anticommutator)
    }

    /// Copy with every column whose index fails `keep` set to zero.
    pub fn restrict_columns(&self, keep: impl Fn(usize) -> bool) -> Self {
        let n = self.dim;
        let mut out = self.clone();
        for j in (0..n).filter(|&j| !keep(j)) {
            for i in 0..n {
                out.data[i * n + j] = Complex::new(0.0, 0.0);
            }
        }
        out
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn residual_norm(&self, other: &Self) -> Result<f64> {
        self.same_dim(other, "residual_norm")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest entrywise modulus of `self - self†`.
    pub fn hermitian_deviation(&self) -> f64 {
        self.residual_norm(&self.adjoint())
            .expect("adjoint has the same dimension")
    }

    /// Real eigenvalues in ascending order.
    ///
    /// The input must be Hermitian within `1e-12` (scaled by the largest
    /// entry when that exceeds one).
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        eigen::hermitian_eigenvalues(self)
    }

    /// Sum of operators of equal dimension.
    pub fn sum<'a>(dim: usize, ops: impl IntoIterator<Item = &'a Operator>) -> Result<Self> {
        ops.into_iter()
            .try_fold(Self::zero(dim), |acc, op| acc.add(op))
    }

    /// Ordered product `ops[0] * ops[1] * ...`.
    pub fn product<'a>(dim: usize, ops: impl IntoIterator<Item = &'a Operator>) -> Result<Self> {
        ops.into_iter()
            .try_fold(Self::identity(dim), |acc, op| acc.mul(op))
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, "{}{:+}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
