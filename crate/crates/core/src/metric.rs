//! The indefinite metric layer.
//!
//! A fundamental symmetry is a Hermitian matrix `J` with `J^2 = I`. It
//! induces the indefinite inner product `[x, y] = <Jx, y>` and the adjoint
//! `A# = J A* J` with respect to that product. Two symmetries `J1`, `J2`
//! acting on the same space induce the generalized adjoint
//! `A(flat) = J2 A* J1`, which is not an involution unless `J2 = +/-J1`.

use crate::error::{Error, Result};
use crate::linalg::eig::eig_hermitian;
use crate::linalg::func::{psd_check, sqrt_psd};
use crate::linalg::matrix::{c64, residual, tol_scale, Complex64, ComplexMatrix};

/// Validation tolerance baked into symmetry construction.
const SYMMETRY_TOL: f64 = 1e-12;

/// A fundamental symmetry: Hermitian, involutive, with signature `(p, q)`
/// counting its +1 and -1 eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalSymmetry {
    j: ComplexMatrix,
    p: usize,
    q: usize,
}

impl FundamentalSymmetry {
    /// Diagonal symmetry with `p` entries `+1` followed by `q` entries `-1`.
    pub fn from_signature(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::Empty("signature (0, 0)".into()));
        }
        let d: Vec<f64> = (0..p + q).map(|i| if i < p { 1.0 } else { -1.0 }).collect();
        Ok(FundamentalSymmetry { j: ComplexMatrix::diag_real(&d), p, q })
    }

    /// The trivial symmetry `J = I` (classical limit).
    pub fn identity(n: usize) -> Result<Self> {
        Self::from_signature(n, 0)
    }

    /// Builds `J = 2P - I` from an orthogonal projector `P`.
    pub fn from_projector(pr: &ComplexMatrix) -> Result<Self> {
        let scale = tol_scale(pr);
        if pr.hermitian_residual() > SYMMETRY_TOL * scale
            || residual(&(pr * pr), pr) > SYMMETRY_TOL * scale
        {
            return Err(Error::NotProjector("P* = P = P^2 fails".into()));
        }
        let two_p = pr.scale_re(2.0);
        let j = &two_p - &ComplexMatrix::identity(pr.n());
        Self::from_matrix(&j)
    }

    /// Validates a raw matrix as a fundamental symmetry and computes its
    /// signature by counting eigenvalues near +1 and -1.
    pub fn from_matrix(j: &ComplexMatrix) -> Result<Self> {
        let n = j.n();
        if n == 0 {
            return Err(Error::Empty("zero-dimensional symmetry".into()));
        }
        if j.hermitian_residual() > SYMMETRY_TOL * tol_scale(j) {
            return Err(Error::NotHermitian(format!(
                "symmetry residual {:.3e}",
                j.hermitian_residual()
            )));
        }
        let sq = j * j;
        let inv_residual = residual(&sq, &ComplexMatrix::identity(n));
        if inv_residual > SYMMETRY_TOL * tol_scale(j).powi(2) {
            return Err(Error::SymmetryMismatch(format!(
                "J^2 = I fails with residual {inv_residual:.3e}"
            )));
        }
        let e = eig_hermitian(j, SYMMETRY_TOL)?;
        let mut p = 0usize;
        let mut q = 0usize;
        for &l in &e.eigenvalues {
            if (l - 1.0).abs() < 0.5 {
                p += 1;
            } else if (l + 1.0).abs() < 0.5 {
                q += 1;
            }
        }
        if p + q != n {
            return Err(Error::SymmetryMismatch("spectrum not contained in {+1, -1}".into()));
        }
        Ok(FundamentalSymmetry { j: j.clone(), p, q })
    }

    pub fn n(&self) -> usize {
        self.j.n()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.j
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    /// Block-diagonal lift `diag(J, ..., J)` with `k` copies.
    pub fn lift(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::OutOfRange("lift order must be positive".into()));
        }
        let n = self.n();
        let mut big = ComplexMatrix::zeros(k * n);
        for b in 0..k {
            big.set_block(b, b, &self.j);
        }
        Ok(FundamentalSymmetry { j: big, p: k * self.p, q: k * self.q })
    }

    /// Whether two symmetries coincide entrywise within `tol`.
    pub fn same_as(&self, other: &Self, tol: f64) -> bool {
        self.n() == other.n() && residual(&self.j, &other.j) <= tol
    }
}

fn check_dim(a: &ComplexMatrix, j: &FundamentalSymmetry) -> Result<()> {
    if a.n() != j.n() {
        return Err(Error::Shape(format!(
            "matrix dimension {} does not match symmetry dimension {}",
            a.n(),
            j.n()
        )));
    }
    Ok(())
}

/// Indefinite inner product `[x, y] = <Jx, y>`, linear in the first slot.
pub fn indefinite_inner(
    x: &[Complex64],
    y: &[Complex64],
    j: &FundamentalSymmetry,
) -> Result<Complex64> {
    if x.len() != j.n() || y.len() != j.n() {
        return Err(Error::Shape("vector length does not match symmetry".into()));
    }
    let jx = j.matrix().matvec(x);
    Ok(crate::linalg::matrix::inner(&jx, y))
}

/// Adjoint with respect to the indefinite product: `A# = J A* J`.
pub fn j_adjoint(a: &ComplexMatrix, j: &FundamentalSymmetry) -> Result<ComplexMatrix> {
    check_dim(a, j)?;
    Ok(&(j.matrix() * &a.adjoint()) * j.matrix())
}

/// Two-symmetry adjoint `A(flat) = J2 A* J1`. Applying it twice gives
/// `J2 J1 A J2 J1`, the identity exactly when `J2 = +/-J1`.
pub fn flat_adjoint(
    a: &ComplexMatrix,
    j1: &FundamentalSymmetry,
    j2: &FundamentalSymmetry,
) -> Result<ComplexMatrix> {
    check_dim(a, j1)?;
    check_dim(a, j2)?;
    Ok(&(j2.matrix() * &a.adjoint()) * j1.matrix())
}

/// Whether `A = A#` within `tol * max(1, ||A||_inf)`.
pub fn is_j_selfadjoint(a: &ComplexMatrix, j: &FundamentalSymmetry, tol: f64) -> Result<bool> {
    let adj = j_adjoint(a, j)?;
    Ok(residual(a, &adj) <= tol * tol_scale(a))
}

/// Verdict of a J-positivity check: `[Ax, x] >= 0` for all `x`, i.e. `JA`
/// positive semidefinite.
#[derive(Debug, Clone, Copy)]
pub struct JPositivity {
    pub is_j_positive: bool,
    /// Smallest eigenvalue of the Hermitian part of `JA`.
    pub min_eig: f64,
}

/// Checks `JA >= 0`. A non-Hermitian `JA` yields a false verdict with the
/// spectrum of its Hermitian part reported.
pub fn is_j_positive(a: &ComplexMatrix, j: &FundamentalSymmetry, tol: f64) -> Result<JPositivity> {
    check_dim(a, j)?;
    let ja = j.matrix() * a;
    match psd_check(&ja, tol) {
        Ok(v) => Ok(JPositivity { is_j_positive: v.is_psd, min_eig: v.min_eig }),
        Err(Error::NotHermitian(_)) => {
            let e = eig_hermitian(&ja.hermitize(), tol)?;
            Ok(JPositivity {
                is_j_positive: false,
                min_eig: e.eigenvalues.first().copied().unwrap_or(0.0),
            })
        }
        Err(e) => Err(e),
    }
}

/// Factorizes a J-positive `A` as `A = B# J B` with `B = sqrt(JA)`.
pub fn j_positive_factor(
    a: &ComplexMatrix,
    j: &FundamentalSymmetry,
    tol: f64,
) -> Result<ComplexMatrix> {
    let verdict = is_j_positive(a, j, tol)?;
    if !verdict.is_j_positive {
        return Err(Error::NotJPositive(format!("min eigenvalue {:.3e}", verdict.min_eig)));
    }
    sqrt_psd(&(j.matrix() * a), tol)
}

/// Jordan decomposition `T = T(+) - T(-)` of a J-selfadjoint matrix into a
/// difference of J-positive parts with `(JT+)(JT-) = 0`.
#[derive(Debug, Clone)]
pub struct JordanSplit {
    pub positive: ComplexMatrix,
    pub negative: ComplexMatrix,
}

/// Splits a J-selfadjoint `T` along the spectral decomposition of `JT`;
/// zero eigenvalues are assigned to the positive part.
pub fn jordan_split(t: &ComplexMatrix, j: &FundamentalSymmetry, tol: f64) -> Result<JordanSplit> {
    if !is_j_selfadjoint(t, j, tol)? {
        return Err(Error::NotJSelfadjoint("jordan split requires T = T#".into()));
    }
    let jt = j.matrix() * t;
    let e = eig_hermitian(&jt, tol)?;
    let n = t.n();
    let mut a_pos = ComplexMatrix::zeros(n);
    let mut a_neg = ComplexMatrix::zeros(n);
    for (k, &l) in e.eigenvalues.iter().enumerate() {
        let v = e.eigenvectors.col(k);
        let proj = crate::linalg::matrix::outer(&v, &v);
        if l >= 0.0 {
            a_pos = &a_pos + &proj.scale(c64(l, 0.0));
        } else {
            a_neg = &a_neg + &proj.scale(c64(-l, 0.0));
        }
    }
    Ok(JordanSplit {
        positive: j.matrix() * &a_pos,
        negative: j.matrix() * &a_neg,
    })
}

/// Trace functional `Theta(T) = Tr(T J)`.
pub fn trace_functional(t: &ComplexMatrix, j: &FundamentalSymmetry) -> Result<Complex64> {
    check_dim(t, j)?;
    Ok((t * j.matrix()).trace())
}
