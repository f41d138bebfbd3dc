//! Cyclic Jacobi eigenvalues for Hermitian operators.
//!
//! A Hermitian `A = X + iY` is embedded as the real symmetric
//! `[[X, -Y], [Y, X]]`, whose spectrum is that of `A` with every
//! eigenvalue doubled. Real inputs skip the embedding.

use crate::error::{Error, Result};
use crate::operator::Operator;

const HERMITIAN_TOL: f64 = 1e-12;
const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

pub(crate) fn hermitian_eigenvalues(a: &Operator) -> Result<Vec<f64>> {
    let n = a.dim();
    let scale = a.entries().iter().map(|z| z.norm()).fold(1.0, f64::max);
    let deviation = a.hermitian_deviation();
    if deviation > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian { deviation });
    }

    let is_real = a.entries().iter().all(|z| z.im == 0.0);
    if is_real {
        // symmetrize to wash out sub-tolerance asymmetry
        let m = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                0.5 * (a.get(i, j).re + a.get(j, i).re)
            })
            .collect();
        let mut values = symmetric_jacobi(m, n)?;
        values.sort_by(f64::total_cmp);
        return Ok(values);
    }

    let m = 2 * n;
    let mut s = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = 0.5 * (a.get(i, j) + a.get(j, i).conj());
            s[i * m + j] = z.re;
            s[(i + n) * m + j + n] = z.re;
            s[i * m + j + n] = -z.im;
            s[(i + n) * m + j] = z.im;
        }
    }
    let mut doubled = symmetric_jacobi(s, m)?;
    doubled.sort_by(f64::total_cmp);
    Ok(doubled.into_iter().step_by(2).collect())
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j] * a[i * n + j];
            }
        }
    }
    sum.sqrt()
}

/// Eigenvalues (unsorted) of a real symmetric `n x n` row-major matrix.
fn symmetric_jacobi(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>> {
    let frobenius = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = OFF_DIAGONAL_TOL * frobenius.max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) < threshold {
            return Ok((0..n).map(|i| a[i * n + i]).collect());
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    Err(Error::NoConvergence {
        sweeps: MAX_SWEEPS,
        off: off_diagonal_norm(&a, n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Complex;
    use approx::assert_abs_diff_eq;

    #[test]
    fn diagonal_and_identity() {
        let d = Operator::real_diagonal(&[1.0, 0.0, 1.0]).unwrap();
        assert_eq!(d.hermitian_eigenvalues().unwrap(), vec![0.0, 1.0, 1.0]);
        assert_eq!(
            Operator::identity(4).hermitian_eigenvalues().unwrap(),
            vec![1.0; 4]
        );
    }

    #[test]
    fn pauli_x() {
        let x = Operator::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let ev = x.hermitian_eigenvalues().unwrap();
        assert_abs_diff_eq!(ev[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ev[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn complex_2x2_matches_quadratic_roots() {
        // [[a, b], [b*, d]] has roots (a+d)/2 +- sqrt(((a-d)/2)^2 + |b|^2)
        let (a, d) = (0.3, -1.7);
        let b = Complex::new(0.4, -2.2);
        let m = Operator::new(
            2,
            vec![Complex::new(a, 0.0), b, b.conj(), Complex::new(d, 0.0)],
        )
        .unwrap();
        let mid = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        let ev = m.hermitian_eigenvalues().unwrap();
        assert_abs_diff_eq!(ev[0], mid - rad, epsilon = 1e-10);
        assert_abs_diff_eq!(ev[1], mid + rad, epsilon = 1e-10);
    }

    #[test]
    fn complex_3x3_against_characteristic_polynomial() {
        // Pauli-y type couplings on a 3-level ladder:
        // [[1, -i, 0], [i, 1, -i], [0, i, 1]] has eigenvalues 1 - sqrt2, 1, 1 + sqrt2.
        let i = Complex::new(0.0, 1.0);
        let one = Complex::new(1.0, 0.0);
        let z = Complex::new(0.0, 0.0);
        let m = Operator::new(3, vec![one, -i, z, i, one, -i, z, i, one]).unwrap();
        let ev = m.hermitian_eigenvalues().unwrap();
        let s = 2f64.sqrt();
        for (got, want) in ev.iter().zip([1.0 - s, 1.0, 1.0 + s]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-10);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = Operator::unit(2, 0, 1);
        assert!(matches!(
            m.hermitian_eigenvalues(),
            Err(Error::NotHermitian { .. })
        ));
    }
}
