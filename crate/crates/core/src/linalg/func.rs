//! Matrix functions: Schatten norms, positive-semidefiniteness checks,
//! PSD square roots, and the matrix exponential.

use crate::error::{Error, Result};
use crate::linalg::eig::eig_hermitian;
use crate::linalg::matrix::{c64, tol_scale, ComplexMatrix};

/// Verdict of a positive-semidefiniteness check.
#[derive(Debug, Clone, Copy)]
pub struct PsdVerdict {
    pub is_psd: bool,
    pub min_eig: f64,
}

/// Singular values of `a`, ascending: square roots of the spectrum of `A* A`.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let gram = &a.adjoint() * a;
    let e = eig_hermitian(&gram, 1e-9)?;
    Ok(e.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect())
}

/// Schatten p-norm for `p >= 1`; `p = f64::INFINITY` gives the operator norm.
pub fn schatten_norm(a: &ComplexMatrix, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidP(format!("p must be >= 1 or infinite, got {p}")));
    }
    let sv = singular_values(a)?;
    if p.is_infinite() {
        return Ok(sv.last().copied().unwrap_or(0.0));
    }
    Ok(sv.iter().map(|s| s.powf(p)).sum::<f64>().powf(1.0 / p))
}

/// Checks `A >= 0`: Hermitian within `tol` and smallest eigenvalue above
/// `-tol * max(1, ||A||_inf)`.
pub fn psd_check(a: &ComplexMatrix, tol: f64) -> Result<PsdVerdict> {
    let e = eig_hermitian(a, tol)?;
    let min_eig = e.eigenvalues.first().copied().unwrap_or(0.0);
    Ok(PsdVerdict { is_psd: min_eig >= -tol * tol_scale(a), min_eig })
}

/// Unique PSD square root of a PSD matrix. Eigenvalues inside the negative
/// tolerance band are clamped to zero.
pub fn sqrt_psd(a: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let verdict = psd_check(a, tol)?;
    if !verdict.is_psd {
        return Err(Error::NotPsd(format!("min eigenvalue {:.3e}", verdict.min_eig)));
    }
    let e = eig_hermitian(a, tol)?;
    let roots: Vec<f64> = e.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let v = &e.eigenvectors;
    Ok(&(v * &ComplexMatrix::diag_real(&roots)) * &v.adjoint())
}

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
pub fn matrix_exp(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.n();
    let norm = a.norm_inf_op();
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let b = a.scale_re(0.5_f64.powi(s as i32));

    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=64 {
        term = (&term * &b).scale(c64(1.0 / k as f64, 0.0));
        sum = &sum + &term;
        if term.norm_fro() <= 1e-18 * sum.norm_fro() {
            break;
        }
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::residual;

    #[test]
    fn schatten_orders_on_a_diagonal_matrix() {
        let a = ComplexMatrix::diag_real(&[3.0, -4.0]);
        assert!((schatten_norm(&a, 1.0).unwrap() - 7.0).abs() < 1e-12);
        assert!((schatten_norm(&a, 2.0).unwrap() - 5.0).abs() < 1e-12);
        assert!((schatten_norm(&a, f64::INFINITY).unwrap() - 4.0).abs() < 1e-12);
        assert!(matches!(schatten_norm(&a, 0.5), Err(Error::InvalidP(_))));
    }

    #[test]
    fn trace_norm_of_psd_matrix_is_its_trace() {
        let c = ComplexMatrix::from_rows(&[
            vec![c64(1.0, 0.0), c64(0.5, 0.2)],
            vec![c64(-0.3, 0.1), c64(0.8, 0.0)],
        ])
        .unwrap();
        let a = &c.adjoint() * &c;
        let t1 = schatten_norm(&a, 1.0).unwrap();
        assert!((t1 - a.trace().re).abs() < 1e-12);
    }

    #[test]
    fn psd_verdicts() {
        let good = ComplexMatrix::diag_real(&[1.0, 0.0]);
        assert!(psd_check(&good, 1e-10).unwrap().is_psd);
        let bad = ComplexMatrix::diag_real(&[1.0, -1e-3]);
        let v = psd_check(&bad, 1e-10).unwrap();
        assert!(!v.is_psd);
        assert!((v.min_eig + 1e-3).abs() < 1e-15);
    }

    #[test]
    fn sqrt_roundtrip() {
        let a = ComplexMatrix::from_rows(&[
            vec![c64(2.0, 0.0), c64(0.5, 0.5)],
            vec![c64(0.5, -0.5), c64(1.0, 0.0)],
        ])
        .unwrap();
        let r = sqrt_psd(&a, 1e-9).unwrap();
        assert!(residual(&(&r * &r), &a) < 1e-12);
        assert!(matches!(
            sqrt_psd(&ComplexMatrix::diag_real(&[1.0, -0.5]), 1e-9),
            Err(Error::NotPsd(_))
        ));
    }

    #[test]
    fn exponential_of_diagonal_rotation() {
        // exp(-i pi/2 diag(1,-1)) = diag(-i, i)
        let a = ComplexMatrix::diag(&[
            c64(0.0, -std::f64::consts::FRAC_PI_2),
            c64(0.0, std::f64::consts::FRAC_PI_2),
        ]);
        let e = matrix_exp(&a);
        assert!((e.get(0, 0) - c64(0.0, -1.0)).norm() < 1e-14);
        assert!((e.get(1, 1) - c64(0.0, 1.0)).norm() < 1e-14);
        assert!(e.get(0, 1).norm() < 1e-15 && e.get(1, 0).norm() < 1e-15);
    }

    #[test]
    fn exponential_inverse_pairing() {
        let a = ComplexMatrix::from_rows(&[
            vec![c64(0.3, 1.1), c64(-2.0, 0.4), c64(0.0, 0.7)],
            vec![c64(1.5, 0.0), c64(-0.2, -0.9), c64(0.8, 0.1)],
            vec![c64(0.0, -0.6), c64(0.4, 0.4), c64(1.2, 0.0)],
        ])
        .unwrap();
        let prod = &matrix_exp(&a) * &matrix_exp(&a.scale_re(-1.0));
        assert!(residual(&prod, &ComplexMatrix::identity(3)) < 1e-10);
    }
}
