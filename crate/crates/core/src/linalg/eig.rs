//! Eigendecompositions for dense complex matrices.
//!
//! Two solvers cover the crate's needs at desk scale (n <= 16):
//!
//! * [`eig_hermitian`]: cyclic Jacobi with complex rotations. Quadratic
//!   convergence, orthonormal eigenvectors, eigenvalues returned ascending.
//! * [`eig_general`]: Householder reduction to Hessenberg form followed by
//!   shifted QR iteration to a Schur form, with eigenvectors recovered by
//!   triangular back-substitution. For n <= 2 the characteristic polynomial
//!   is solved in closed form instead.
//!
//! Both solvers are deterministic for a fixed input: eigenvalues are sorted
//! (ascending, general spectra by real then imaginary part) and each
//! eigenvector is phase-fixed so that its first component above 1e-12 in
//! magnitude is real and positive. Defective matrices get no factorization
//! guarantee beyond the per-pair residual `A v = lambda v`.

use crate::error::{Error, Result};
use crate::linalg::matrix::{c64, tol_scale, vec_norm, Complex64, ComplexMatrix};

/// Eigensystem of a Hermitian matrix: real ascending eigenvalues and
/// orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

/// Eigensystem of a general matrix: complex eigenvalues sorted by
/// (re, im) and unit-norm eigenvector columns.
#[derive(Debug, Clone)]
pub struct GeneralEig {
    pub eigenvalues: Vec<Complex64>,
    pub eigenvectors: ComplexMatrix,
}

const PHASE_FLOOR: f64 = 1e-12;
const MAX_JACOBI_SWEEPS: usize = 60;
const MAX_QR_STEPS_PER_EIGENVALUE: usize = 60;

fn phase_fix_column(m: &mut ComplexMatrix, col: usize) {
    let n = m.n();
    for i in 0..n {
        let v = m.get(i, col);
        if v.norm() > PHASE_FLOOR {
            let phase = v / v.norm();
            for k in 0..n {
                let w = m.get(k, col) * phase.conj();
                m.set(k, col, w);
            }
            return;
        }
    }
}

fn permute_columns(m: &ComplexMatrix, order: &[usize]) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.n(), |i, j| m.get(i, order[j]))
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a.get(i, j).norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.
///
/// The input must be Hermitian within `tol * max(1, ||A||_inf)`; iteration
/// runs on the exactly Hermitian part `(A + A*)/2`.
pub fn eig_hermitian(a: &ComplexMatrix, tol: f64) -> Result<HermitianEig> {
    if a.hermitian_residual() > tol * tol_scale(a) {
        return Err(Error::NotHermitian(format!(
            "residual {:.3e} exceeds {:.3e}",
            a.hermitian_residual(),
            tol * tol_scale(a)
        )));
    }
    let n = a.n();
    let mut h = a.hermitize();
    let mut v = ComplexMatrix::identity(n);
    let fro = h.norm_fro();
    let stop = f64::EPSILON * fro.max(f64::MIN_POSITIVE);

    let mut converged = fro == 0.0 || n < 2;
    for _ in 0..MAX_JACOBI_SWEEPS {
        if converged {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let b = h.get(p, q);
                if b.norm() <= stop * 1e-2 {
                    continue;
                }
                let app = h.get(p, p).re;
                let aqq = h.get(q, q).re;
                let theta = 0.5 * (2.0 * b.norm()).atan2(app - aqq);
                let (s, c) = theta.sin_cos();
                let phase = b / b.norm();

                // rows p, q of U* A
                for j in 0..n {
                    let hp = h.get(p, j);
                    let hq = h.get(q, j);
                    h.set(p, j, hp * c + hq * (phase * s));
                    h.set(q, j, hq * c - hp * (phase.conj() * s));
                }
                // columns p, q of (U* A) U, and accumulate V <- V U
                for i in 0..n {
                    let hp = h.get(i, p);
                    let hq = h.get(i, q);
                    h.set(i, p, hp * c + hq * (phase.conj() * s));
                    h.set(i, q, hq * c - hp * (phase * s));
                    let vp = v.get(i, p);
                    let vq = v.get(i, q);
                    v.set(i, p, vp * c + vq * (phase.conj() * s));
                    v.set(i, q, vq * c - vp * (phase * s));
                }
            }
        }
        converged = off_diagonal_norm(&h) <= stop * (n as f64);
    }
    if !converged {
        return Err(Error::NoConvergence("jacobi sweep limit reached".into()));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| h.get(i, i).re.total_cmp(&h.get(j, j).re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| h.get(i, i).re).collect();
    let mut eigenvectors = permute_columns(&v, &order);
    for j in 0..n {
        phase_fix_column(&mut eigenvectors, j);
    }
    Ok(HermitianEig { eigenvalues, eigenvectors })
}

fn sqrt_complex(z: Complex64) -> Complex64 {
    z.sqrt()
}

fn eig_2x2(a: &ComplexMatrix) -> GeneralEig {
    let (a00, a01, a10, a11) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
    let tr = a00 + a11;
    let det = a00 * a11 - a01 * a10;
    let disc = sqrt_complex(tr * tr - det * 4.0);
    let mut pairs: Vec<(Complex64, Vec<Complex64>)> = [(tr + disc) * 0.5, (tr - disc) * 0.5]
        .into_iter()
        .map(|lambda| {
            let r1 = (a01, lambda - a00);
            let r2 = (lambda - a11, a10);
            let n1 = r1.0.norm() + r1.1.norm();
            let n2 = r2.0.norm() + r2.1.norm();
            let scale = a.norm_fro().max(1.0);
            let mut v = if n1 >= n2 { vec![r1.0, r1.1] } else { vec![r2.0, r2.1] };
            if vec_norm(&v) <= 1e-14 * scale {
                // diagonal matrix: pick the basis vector matching the eigenvalue
                v = if (a00 - lambda).norm() <= (a11 - lambda).norm() {
                    vec![c64(1.0, 0.0), c64(0.0, 0.0)]
                } else {
                    vec![c64(0.0, 0.0), c64(1.0, 0.0)]
                };
            }
            let nv = vec_norm(&v);
            (lambda, v.into_iter().map(|z| z / nv).collect())
        })
        .collect();
    pairs.sort_by(|x, y| (x.0.re, x.0.im).partial_cmp(&(y.0.re, y.0.im)).unwrap());
    let eigenvalues = pairs.iter().map(|p| p.0).collect();
    let mut eigenvectors =
        ComplexMatrix::from_fn(2, |i, j| pairs[j].1[i]);
    for j in 0..2 {
        phase_fix_column(&mut eigenvectors, j);
    }
    GeneralEig { eigenvalues, eigenvectors }
}

/// Reduces `a` to upper Hessenberg form `H = Q* A Q`, returning `(H, Q)`.
fn hessenberg(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.n();
    let mut h = a.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| h.get(i, k)).collect();
        let norm_x = vec_norm(&x);
        if norm_x <= f64::EPSILON * h.norm_fro() {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { c64(1.0, 0.0) };
        let mut v = x;
        v[0] += phase * norm_x;
        let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vv == 0.0 {
            continue;
        }
        let tau = 2.0 / vv;
        // A <- P A with P = I - tau v v* acting on rows k+1..n
        for j in 0..n {
            let dot: Complex64 =
                v.iter().enumerate().map(|(i, &vi)| vi.conj() * h.get(k + 1 + i, j)).sum();
            let f = dot * tau;
            for (i, &vi) in v.iter().enumerate() {
                let w = h.get(k + 1 + i, j) - vi * f;
                h.set(k + 1 + i, j, w);
            }
        }
        // A <- A P on columns k+1..n, and Q <- Q P
        for i in 0..n {
            let dot: Complex64 =
                v.iter().enumerate().map(|(jj, &vj)| h.get(i, k + 1 + jj) * vj).sum();
            let f = dot * tau;
            for (jj, &vj) in v.iter().enumerate() {
                let w = h.get(i, k + 1 + jj) - f * vj.conj();
                h.set(i, k + 1 + jj, w);
            }
            let dotq: Complex64 =
                v.iter().enumerate().map(|(jj, &vj)| q.get(i, k + 1 + jj) * vj).sum();
            let fq = dotq * tau;
            for (jj, &vj) in v.iter().enumerate() {
                let w = q.get(i, k + 1 + jj) - fq * vj.conj();
                q.set(i, k + 1 + jj, w);
            }
        }
        // clean the annihilated part of the column
        for i in k + 2..n {
            h.set(i, k, c64(0.0, 0.0));
        }
    }
    (h, q)
}

/// Wilkinson shift: eigenvalue of the trailing 2x2 block closest to its
/// bottom-right entry.
fn wilkinson_shift(h: &ComplexMatrix, hi: usize) -> Complex64 {
    let a = h.get(hi - 1, hi - 1);
    let b = h.get(hi - 1, hi);
    let c = h.get(hi, hi - 1);
    let d = h.get(hi, hi);
    let tr = a + d;
    let disc = sqrt_complex(tr * tr - (a * d - b * c) * 4.0);
    let l1 = (tr + disc) * 0.5;
    let l2 = (tr - disc) * 0.5;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Shifted QR iteration on a Hessenberg matrix; returns the Schur factor
/// `T` (upper triangular) and accumulates the similarity into `q`.
fn schur_from_hessenberg(
    mut h: ComplexMatrix,
    mut q: ComplexMatrix,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let n = h.n();
    if n < 2 {
        return Ok((h, q));
    }
    let fro = h.norm_fro().max(f64::MIN_POSITIVE);
    let negligible = |x: f64, local: f64| x <= f64::EPSILON * local.max(f64::EPSILON * fro);

    let mut hi = n - 1;
    let mut steps_here = 0usize;
    loop {
        // deflate fully converged trailing eigenvalues
        while hi > 0 {
            let off = h.get(hi, hi - 1).norm();
            let local = h.get(hi - 1, hi - 1).norm() + h.get(hi, hi).norm();
            if negligible(off, local) {
                h.set(hi, hi - 1, c64(0.0, 0.0));
                hi -= 1;
                steps_here = 0;
            } else {
                break;
            }
        }
        if hi == 0 {
            break;
        }
        // locate the start of the active block
        let mut lo = hi;
        while lo > 0 {
            let off = h.get(lo, lo - 1).norm();
            let local = h.get(lo - 1, lo - 1).norm() + h.get(lo, lo).norm();
            if negligible(off, local) {
                h.set(lo, lo - 1, c64(0.0, 0.0));
                break;
            }
            lo -= 1;
        }

        steps_here += 1;
        if steps_here > MAX_QR_STEPS_PER_EIGENVALUE {
            return Err(Error::NoConvergence("qr iteration limit reached".into()));
        }
        let mu = if steps_here % 12 == 0 {
            // exceptional shift to break symmetric stalls
            h.get(hi, hi) + c64(h.get(hi, hi - 1).norm(), 0.0)
        } else {
            wilkinson_shift(&h, hi)
        };

        for i in lo..=hi {
            let d = h.get(i, i) - mu;
            h.set(i, i, d);
        }
        // QR by Givens rotations on the active block
        let mut rots: Vec<(Complex64, Complex64)> = Vec::with_capacity(hi - lo);
        for i in lo..hi {
            let a = h.get(i, i);
            let b = h.get(i + 1, i);
            let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
            if r == 0.0 {
                rots.push((c64(1.0, 0.0), c64(0.0, 0.0)));
                continue;
            }
            let ca = a / r;
            let cb = b / r;
            rots.push((ca, cb));
            for j in i..n {
                let hp = h.get(i, j);
                let hq = h.get(i + 1, j);
                h.set(i, j, ca.conj() * hp + cb.conj() * hq);
                h.set(i + 1, j, ca * hq - cb * hp);
            }
        }
        // multiply back on the right and accumulate Q
        for (idx, &(ca, cb)) in rots.iter().enumerate() {
            let i = lo + idx;
            for r_ in 0..=(i + 1).min(n - 1) {
                let hp = h.get(r_, i);
                let hq = h.get(r_, i + 1);
                h.set(r_, i, hp * ca + hq * cb);
                h.set(r_, i + 1, hq * ca.conj() - hp * cb.conj());
            }
            for r_ in 0..n {
                let qp = q.get(r_, i);
                let qq = q.get(r_, i + 1);
                q.set(r_, i, qp * ca + qq * cb);
                q.set(r_, i + 1, qq * ca.conj() - qp * cb.conj());
            }
        }
        for i in lo..=hi {
            let d = h.get(i, i) + mu;
            h.set(i, i, d);
        }
    }
    Ok((h, q))
}

/// Eigenvalues and eigenvectors of a general complex matrix.
pub fn eig_general(a: &ComplexMatrix) -> Result<GeneralEig> {
    let n = a.n();
    if n == 0 {
        return Ok(GeneralEig { eigenvalues: vec![], eigenvectors: ComplexMatrix::zeros(0) });
    }
    if n == 1 {
        return Ok(GeneralEig {
            eigenvalues: vec![a.get(0, 0)],
            eigenvectors: ComplexMatrix::identity(1),
        });
    }
    if n == 2 {
        return Ok(eig_2x2(a));
    }

    let (h, q) = hessenberg(a);
    let (t, q) = schur_from_hessenberg(h, q)?;

    let scale = t.norm_fro().max(1.0);
    let smin = f64::EPSILON * scale;
    let mut pairs: Vec<(Complex64, Vec<Complex64>)> = Vec::with_capacity(n);
    for i in 0..n {
        let lambda = t.get(i, i);
        let mut y = vec![c64(0.0, 0.0); n];
        y[i] = c64(1.0, 0.0);
        for k in (0..i).rev() {
            let mut s = c64(0.0, 0.0);
            for j in k + 1..=i {
                s += t.get(k, j) * y[j];
            }
            let mut denom = t.get(k, k) - lambda;
            if denom.norm() < smin {
                denom = c64(smin, 0.0);
            }
            y[k] = -s / denom;
        }
        let mut v = q.matvec(&y);
        let nv = vec_norm(&v);
        for z in v.iter_mut() {
            *z /= nv;
        }
        pairs.push((lambda, v));
    }
    pairs.sort_by(|x, y| (x.0.re, x.0.im).partial_cmp(&(y.0.re, y.0.im)).unwrap());
    let eigenvalues = pairs.iter().map(|p| p.0).collect();
    let mut eigenvectors = ComplexMatrix::from_fn(n, |i, j| pairs[j].1[i]);
    for j in 0..n {
        phase_fix_column(&mut eigenvectors, j);
    }
    Ok(GeneralEig { eigenvalues, eigenvectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::residual;

    fn reconstruct_hermitian(e: &HermitianEig) -> ComplexMatrix {
        let v = &e.eigenvectors;
        let lam = ComplexMatrix::diag_real(&e.eigenvalues);
        &(v * &lam) * &v.adjoint()
    }

    #[test]
    fn pauli_x_spectrum() {
        let sx = ComplexMatrix::from_rows(&[
            vec![c64(0.0, 0.0), c64(1.0, 0.0)],
            vec![c64(1.0, 0.0), c64(0.0, 0.0)],
        ])
        .unwrap();
        let e = eig_hermitian(&sx, 1e-9).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
        assert!(residual(&reconstruct_hermitian(&e), &sx) < 1e-13);
    }

    #[test]
    fn hermitian_rejects_general_input() {
        let a = ComplexMatrix::from_rows(&[
            vec![c64(0.0, 0.0), c64(1.0, 0.0)],
            vec![c64(0.0, 0.0), c64(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(eig_hermitian(&a, 1e-9), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn diag_example_spectrum_ascending() {
        let a = ComplexMatrix::diag_real(&[0.75, 0.25]);
        let e = eig_hermitian(&a, 1e-9).unwrap();
        assert_eq!(e.eigenvalues, vec![0.25, 0.75]);
    }

    #[test]
    fn indefinite_observable_eigenvalues() {
        // y = (0, 0, 1, 2): eigenvalues +/- sqrt(3)/2
        let a = ComplexMatrix::from_rows(&[
            vec![c64(1.0, 0.0), c64(0.5, 0.0)],
            vec![c64(-0.5, 0.0), c64(-1.0, 0.0)],
        ])
        .unwrap();
        let e = eig_general(&a).unwrap();
        let s3 = 3.0_f64.sqrt() / 2.0;
        assert!((e.eigenvalues[0] - c64(-s3, 0.0)).norm() < 1e-12);
        assert!((e.eigenvalues[1] - c64(s3, 0.0)).norm() < 1e-12);
        for k in 0..2 {
            let v = e.eigenvectors.col(k);
            let av = a.matvec(&v);
            let lv: Vec<Complex64> = v.iter().map(|&z| z * e.eigenvalues[k]).collect();
            let err: f64 = av.iter().zip(&lv).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
            assert!(err < 1e-12);
        }
    }

    #[test]
    fn schur_path_handles_larger_matrices() {
        // deterministic non-normal 4x4 with known spectrum along the diagonal
        let mut t = ComplexMatrix::zeros(4);
        for i in 0..4 {
            t.set(i, i, c64(i as f64 - 1.5, 0.5 * i as f64));
            for j in i + 1..4 {
                t.set(i, j, c64(0.3 * (i + j) as f64, -0.2));
            }
        }
        // conjugate by a fixed unitary (Householder reflection)
        let v = [c64(0.5, 0.1), c64(-0.3, 0.4), c64(0.7, 0.0), c64(0.1, -0.2)];
        let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let p = ComplexMatrix::from_fn(4, |i, j| {
            let delta = if i == j { c64(1.0, 0.0) } else { c64(0.0, 0.0) };
            delta - v[i] * v[j].conj() * (2.0 / vv)
        });
        let a = &(&p * &t) * &p.adjoint();
        let e = eig_general(&a).unwrap();
        let mut expected: Vec<Complex64> = (0..4).map(|i| c64(i as f64 - 1.5, 0.5 * i as f64)).collect();
        expected.sort_by(|x, y| (x.re, x.im).partial_cmp(&(y.re, y.im)).unwrap());
        for (got, want) in e.eigenvalues.iter().zip(&expected) {
            assert!((got - want).norm() < 1e-9, "{got} vs {want}");
        }
        for k in 0..4 {
            let vk = e.eigenvectors.col(k);
            let av = a.matvec(&vk);
            let lv: Vec<Complex64> = vk.iter().map(|&z| z * e.eigenvalues[k]).collect();
            let err: f64 = av.iter().zip(&lv).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
            assert!(err < 1e-8 * a.norm_fro());
        }
    }

    #[test]
    fn phase_fixing_is_deterministic() {
        let a = ComplexMatrix::from_rows(&[
            vec![c64(1.0, 0.0), c64(0.0, -1.0)],
            vec![c64(0.0, 1.0), c64(2.0, 0.0)],
        ])
        .unwrap();
        let e1 = eig_hermitian(&a, 1e-9).unwrap();
        let e2 = eig_hermitian(&a, 1e-9).unwrap();
        assert_eq!(e1.eigenvectors.data(), e2.eigenvectors.data());
        for j in 0..2 {
            let first = e1.eigenvectors.col(j).into_iter().find(|z| z.norm() > 1e-12).unwrap();
            assert!(first.im.abs() < 1e-14 && first.re > 0.0);
        }
    }
}
