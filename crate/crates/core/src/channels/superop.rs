//! Superoperators, Choi matrices and complete J-positivity.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * matrices are stacked column-major: `vec(A)[c*n + r] = A[r][c]`, so a
//!   superoperator is the `n^2 x n^2` matrix acting on stacked inputs;
//! * the Choi matrix of a map `Phi` has block `(i, j)` equal to
//!   `Phi(E_ij)`, with the matrix units `E_ij` enumerated row index first;
//! * a Choi eigenpair `(mu, w)` regenerates the Kraus operator
//!   `K[i][r] = sqrt(mu) conj(w[i*n + r])`, so that
//!   `Phi(A) = sum_k K_k* A K_k`.
//!
//! A map `Psi` between spaces carrying symmetries `J1`, `J2` is completely
//! J-positive exactly when the associated ordinary map
//! `Phi(A) = J2 Psi(J1 A)` is completely positive, certified by a PSD Choi
//! matrix.

use crate::error::{Error, Result};
use crate::linalg::eig::eig_hermitian;
use crate::linalg::func::psd_check;
use crate::linalg::matrix::{c64, tol_scale, Complex64, ComplexMatrix};
use crate::metric::FundamentalSymmetry;

use super::KrausJMap;

/// Linear map on `n x n` matrices, stored as its `n^2 x n^2` matrix in the
/// column-stacking convention.
#[derive(Debug, Clone)]
pub struct Superoperator {
    n: usize,
    mat: ComplexMatrix,
}

fn stack(a: &ComplexMatrix) -> Vec<Complex64> {
    let n = a.n();
    let mut v = vec![c64(0.0, 0.0); n * n];
    for c in 0..n {
        for r in 0..n {
            v[c * n + r] = a.get(r, c);
        }
    }
    v
}

fn unstack(n: usize, v: &[Complex64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |r, c| v[c * n + r])
}

impl Superoperator {
    pub fn from_matrix(n: usize, mat: ComplexMatrix) -> Result<Self> {
        if mat.n() != n * n {
            return Err(Error::Shape(format!(
                "superoperator on dimension {n} needs a {} x {} matrix",
                n * n,
                n * n
            )));
        }
        Ok(Superoperator { n, mat })
    }

    /// Materializes a map by applying it to every matrix unit.
    pub fn from_map(n: usize, mut f: impl FnMut(&ComplexMatrix) -> ComplexMatrix) -> Self {
        let mut mat = ComplexMatrix::zeros(n * n);
        for c in 0..n {
            for r in 0..n {
                let image = f(&ComplexMatrix::unit(n, r, c));
                let col = stack(&image);
                for (row, &z) in col.iter().enumerate() {
                    mat.set(row, c * n + r, z);
                }
            }
        }
        Superoperator { n, mat }
    }

    pub fn identity(n: usize) -> Self {
        Superoperator { n, mat: ComplexMatrix::identity(n * n) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn apply(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        if a.n() != self.n {
            return Err(Error::Shape(format!(
                "superoperator on dimension {} applied to a {} x {} matrix",
                self.n,
                a.n(),
                a.n()
            )));
        }
        Ok(unstack(self.n, &self.mat.matvec(&stack(a))))
    }

    /// Composition `self . other`.
    pub fn compose(&self, other: &Superoperator) -> Result<Superoperator> {
        if self.n != other.n {
            return Err(Error::Shape("composing superoperators of different dimension".into()));
        }
        Ok(Superoperator { n: self.n, mat: &self.mat * &other.mat })
    }
}

/// Choi matrix `sum_ij E_ij (x) Phi(E_ij)` of a superoperator.
#[derive(Debug, Clone)]
pub struct ChoiMatrix {
    n: usize,
    mat: ComplexMatrix,
}

impl ChoiMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }
}

pub fn choi_matrix(phi: &Superoperator) -> Result<ChoiMatrix> {
    let n = phi.n();
    let mut mat = ComplexMatrix::zeros(n * n);
    for i in 0..n {
        for j in 0..n {
            let image = phi.apply(&ComplexMatrix::unit(n, i, j))?;
            mat.set_block(i, j, &image);
        }
    }
    Ok(ChoiMatrix { n, mat })
}

fn check_symmetry_dims(
    m: &Superoperator,
    j1: &FundamentalSymmetry,
    j2: &FundamentalSymmetry,
) -> Result<()> {
    if j1.n() != m.n() || j2.n() != m.n() {
        return Err(Error::Shape("symmetry dimension does not match superoperator".into()));
    }
    Ok(())
}

/// Ordinary map associated with an indefinite-metric map:
/// `Phi(A) = J2 Psi(J1 A)`.
pub fn to_ordinary(
    psi: &Superoperator,
    j1: &FundamentalSymmetry,
    j2: &FundamentalSymmetry,
) -> Result<Superoperator> {
    check_symmetry_dims(psi, j1, j2)?;
    let mut err = None;
    let out = Superoperator::from_map(psi.n(), |a| match psi.apply(&(j1.matrix() * a)) {
        Ok(m) => j2.matrix() * &m,
        Err(e) => {
            err = Some(e);
            ComplexMatrix::zeros(psi.n())
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Indefinite-metric map associated with an ordinary map:
/// `Psi(A) = J2 Phi(J1 A)`. Mutually inverse with [`to_ordinary`].
pub fn from_ordinary(
    phi: &Superoperator,
    j1: &FundamentalSymmetry,
    j2: &FundamentalSymmetry,
) -> Result<Superoperator> {
    to_ordinary(phi, j1, j2)
}

/// Verdict of a complete J-positivity check.
#[derive(Debug, Clone, Copy)]
pub struct CompleteJPositivity {
    pub is_completely_jpositive: bool,
    /// Smallest eigenvalue of (the Hermitian part of) the associated Choi
    /// matrix.
    pub min_choi_eig: f64,
    pub choi_hermitian_residual: f64,
}

/// Certifies complete J-positivity of `Psi` through the Choi matrix of the
/// associated ordinary map.
pub fn is_completely_jpositive(
    psi: &Superoperator,
    j1: &FundamentalSymmetry,
    j2: &FundamentalSymmetry,
    tol: f64,
) -> Result<CompleteJPositivity> {
    let phi = to_ordinary(psi, j1, j2)?;
    let choi = choi_matrix(&phi)?;
    let c = choi.matrix();
    let herm_residual = c.hermitian_residual();
    if herm_residual > tol * tol_scale(c) {
        let e = eig_hermitian(&c.hermitize(), tol)?;
        return Ok(CompleteJPositivity {
            is_completely_jpositive: false,
            min_choi_eig: e.eigenvalues.first().copied().unwrap_or(0.0),
            choi_hermitian_residual: herm_residual,
        });
    }
    let v = psd_check(c, tol)?;
    Ok(CompleteJPositivity {
        is_completely_jpositive: v.is_psd,
        min_choi_eig: v.min_eig,
        choi_hermitian_residual: herm_residual,
    })
}

/// Extracts a Kraus family for a completely J-positive map from the
/// spectral decomposition of its Choi matrix. Eigenvalues below
/// `tol * max-eigenvalue` are discarded; the number of retained pairs is
/// the numerical Kraus rank.
pub fn kraus_from_superoperator(
    psi: &Superoperator,
    j1: &FundamentalSymmetry,
    j2: &FundamentalSymmetry,
    tol: f64,
) -> Result<KrausJMap> {
    let verdict = is_completely_jpositive(psi, j1, j2, tol)?;
    if !verdict.is_completely_jpositive {
        return Err(Error::NotCompletelyJPositive(format!(
            "min Choi eigenvalue {:.3e}",
            verdict.min_choi_eig
        )));
    }
    let n = psi.n();
    let phi = to_ordinary(psi, j1, j2)?;
    let choi = choi_matrix(&phi)?;
    let e = eig_hermitian(choi.matrix(), tol)?;
    let max_eig = e.eigenvalues.last().copied().unwrap_or(0.0);
    let cut = tol * max_eig;
    let mut ops = Vec::new();
    for k in (0..e.eigenvalues.len()).rev() {
        let mu = e.eigenvalues[k];
        if mu <= cut || mu <= 0.0 {
            break;
        }
        let w = e.eigenvectors.col(k);
        let root = mu.sqrt();
        ops.push(ComplexMatrix::from_fn(n, |i, r| w[i * n + r].conj() * root));
    }
    if ops.is_empty() {
        // zero map: keep the family nonempty
        ops.push(ComplexMatrix::zeros(n));
    }
    KrausJMap::new(ops, j1.clone(), j2.clone())
}

/// Blockwise lift `Psi^k` acting on `kn x kn` matrices; pairs with the
/// lifted symmetries `J.lift(k)`. Supported for `1 <= k <= 4`.
pub fn block_lift(psi: &Superoperator, k: usize) -> Result<Superoperator> {
    if !(1..=4).contains(&k) {
        return Err(Error::OutOfRange(format!("block lift order {k} outside 1..=4")));
    }
    let n = psi.n();
    let mut err = None;
    let lifted = Superoperator::from_map(k * n, |c| {
        let mut out = ComplexMatrix::zeros(k * n);
        for bi in 0..k {
            for bj in 0..k {
                match psi.apply(&c.block(bi, bj, n)) {
                    Ok(m) => out.set_block(bi, bj, &m),
                    Err(e) => err = Some(e),
                }
            }
        }
        out
    });
    match err {
        Some(e) => Err(e),
        None => Ok(lifted),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::residual;

    fn sig11() -> FundamentalSymmetry {
        FundamentalSymmetry::from_signature(1, 1).unwrap()
    }

    #[test]
    fn stacking_roundtrip_and_identity() {
        let a = ComplexMatrix::from_rows(&[
            vec![c64(1.0, 2.0), c64(3.0, -1.0)],
            vec![c64(0.0, 0.5), c64(-2.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(unstack(2, &stack(&a)), a);
        let id = Superoperator::identity(2);
        assert_eq!(id.apply(&a).unwrap(), a);
        let built = Superoperator::from_map(2, |m| m.clone());
        assert_eq!(built.matrix(), id.matrix());
    }

    #[test]
    fn choi_of_identity_map() {
        let id = Superoperator::identity(2);
        let c = choi_matrix(&id).unwrap();
        assert!((c.matrix().trace() - c64(2.0, 0.0)).norm() < 1e-15);
        let e = eig_hermitian(c.matrix(), 1e-12).unwrap();
        assert!(e.eigenvalues[..3].iter().all(|&l| l.abs() < 1e-14));
        assert!((e.eigenvalues[3] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn twist_maps_are_mutually_inverse() {
        let j1 = sig11();
        let j2 = FundamentalSymmetry::from_matrix(
            &ComplexMatrix::from_rows(&[
                vec![c64(0.0, 0.0), c64(1.0, 0.0)],
                vec![c64(1.0, 0.0), c64(0.0, 0.0)],
            ])
            .unwrap(),
        )
        .unwrap();
        let psi = Superoperator::from_map(2, |a| {
            // arbitrary fixed map
            let m = ComplexMatrix::from_rows(&[
                vec![c64(0.3, 0.1), c64(-0.7, 0.0)],
                vec![c64(1.1, -0.4), c64(0.2, 0.9)],
            ])
            .unwrap();
            &(&m * a) * &m.adjoint()
        });
        let phi = to_ordinary(&psi, &j1, &j2).unwrap();
        let back = from_ordinary(&phi, &j1, &j2).unwrap();
        assert!(residual(back.matrix(), psi.matrix()) < 1e-13);
    }

    #[test]
    fn twisted_transpose_fails_choi_certificate() {
        let j = sig11();
        let jm = j.matrix().clone();
        let psi = Superoperator::from_map(2, |a| &(&jm * &a.transpose()) * &jm);
        let v = is_completely_jpositive(&psi, &j, &j, 1e-9).unwrap();
        assert!(!v.is_completely_jpositive);
        assert!((v.min_choi_eig + 1.0).abs() < 1e-12);
        assert!(matches!(
            kraus_from_superoperator(&psi, &j, &j, 1e-9),
            Err(Error::NotCompletelyJPositive(_))
        ));
    }

    #[test]
    fn identity_is_certified_and_extracts_one_kraus_operator() {
        let j = sig11();
        let psi = Superoperator::identity(2);
        let v = is_completely_jpositive(&psi, &j, &j, 1e-9).unwrap();
        assert!(v.is_completely_jpositive);
        assert!(v.min_choi_eig > -1e-12);
        let k = kraus_from_superoperator(&psi, &j, &j, 1e-9).unwrap();
        assert_eq!(k.nu(), 1);
        assert!(residual(&k.ops()[0], &ComplexMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn twisted_maximally_mixing_map_has_flat_choi() {
        let j = sig11();
        let jm = j.matrix().clone();
        // Phi(A) = Tr(A) I / 2, twisted by J on both sides
        let psi = Superoperator::from_map(2, |a| {
            let t = (&jm * a).trace();
            jm.scale(t * 0.5)
        });
        let phi = to_ordinary(&psi, &j, &j).unwrap();
        let c = choi_matrix(&phi).unwrap();
        assert!(residual(c.matrix(), &ComplexMatrix::identity(4).scale_re(0.5)) < 1e-13);
        let k = kraus_from_superoperator(&psi, &j, &j, 1e-9).unwrap();
        assert_eq!(k.nu(), 4);
    }

    #[test]
    fn block_lift_acts_blockwise() {
        let j = sig11();
        let jm = j.matrix().clone();
        let psi = Superoperator::from_map(2, move |a| &(&jm * &a.transpose()) * &jm);
        let lifted = block_lift(&psi, 2).unwrap();
        let c = ComplexMatrix::from_fn(4, |i, jx| c64((i * 4 + jx) as f64, -(jx as f64)));
        let out = lifted.apply(&c).unwrap();
        for bi in 0..2 {
            for bj in 0..2 {
                let expect = psi.apply(&c.block(bi, bj, 2)).unwrap();
                assert!(residual(&out.block(bi, bj, 2), &expect) < 1e-14);
            }
        }
        assert!(matches!(block_lift(&psi, 0), Err(Error::OutOfRange(_))));
        assert!(matches!(block_lift(&psi, 5), Err(Error::OutOfRange(_))));
    }
}
