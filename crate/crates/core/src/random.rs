//! Seeded random generators for matrices, states and channels.
//!
//! Everything is driven by a caller-supplied [`rand::Rng`], so a fixed
//! `ChaCha20` seed reproduces the exact same objects across runs and
//! platforms.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::eig::eig_hermitian;
use crate::linalg::matrix::{c64, inner, vec_norm, Complex64, ComplexMatrix};
use crate::metric::FundamentalSymmetry;

/// Matrix with independent standard complex Gaussian entries.
pub fn complex_gaussian(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c64(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Haar-distributed unitary: modified Gram-Schmidt orthonormalization of a
/// Gaussian matrix (the triangular factor then has a positive diagonal,
/// which makes the distribution Haar).
pub fn haar_unitary(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = complex_gaussian(n, rng);
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| g.col(j)).collect();
    for j in 0..n {
        for k in 0..j {
            let proj = inner(&cols[j], &cols[k]);
            for i in 0..n {
                let w = cols[j][i] - proj * cols[k][i];
                cols[j][i] = w;
            }
        }
        let r = vec_norm(&cols[j]);
        for z in cols[j].iter_mut() {
            *z /= r;
        }
    }
    ComplexMatrix::from_fn(n, |i, j| cols[j][i])
}

/// Random Hermitian matrix `(G + G*)/2`.
pub fn hermitian(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    complex_gaussian(n, rng).hermitize()
}

/// Random density matrix `C* C / Tr(C* C)`.
pub fn density(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let c = complex_gaussian(n, rng);
    let g = &c.adjoint() * &c;
    let t = g.trace().re;
    g.scale_re(1.0 / t)
}

/// Random J-positive matrix `J (C* C)`.
pub fn j_positive(j: &FundamentalSymmetry, rng: &mut impl Rng) -> ComplexMatrix {
    let c = complex_gaussian(j.n(), rng);
    j.matrix() * &(&c.adjoint() * &c)
}

/// Random J-selfadjoint matrix `J H` with `H` Hermitian.
pub fn j_selfadjoint(j: &FundamentalSymmetry, rng: &mut impl Rng) -> ComplexMatrix {
    j.matrix() * &hermitian(j.n(), rng)
}

/// Matrix of a random J-state of unitary origin: `J` times a random density.
pub fn jstate_matrix(j: &FundamentalSymmetry, rng: &mut impl Rng) -> ComplexMatrix {
    j.matrix() * &density(j.n(), rng)
}

/// Random unit vector.
pub fn unit_vector(n: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    let g = complex_gaussian(n, rng);
    let col = g.col(0);
    let r = vec_norm(&col);
    col.into_iter().map(|z| z / r).collect()
}

/// Kraus family of a random quantum channel: `nu` Gaussian operators
/// normalized on the left so that `sum_i K_i K_i* = I`.
pub fn cptp_kraus(n: usize, nu: usize, rng: &mut impl Rng) -> Vec<ComplexMatrix> {
    assert!(nu >= 1, "kraus family must be nonempty");
    let raw: Vec<ComplexMatrix> = (0..nu).map(|_| complex_gaussian(n, rng)).collect();
    let mut t = ComplexMatrix::zeros(n);
    for k in &raw {
        t = &t + &(k * &k.adjoint());
    }
    let e = eig_hermitian(&t, 1e-9).expect("gram sum is Hermitian");
    let inv_roots: Vec<f64> = e.eigenvalues.iter().map(|&l| 1.0 / l.max(1e-300).sqrt()).collect();
    let v = &e.eigenvectors;
    let w = &(v * &ComplexMatrix::diag_real(&inv_roots)) * &v.adjoint();
    raw.into_iter().map(|k| &w * &k).collect()
}

/// Random fundamental symmetry with the given signature, conjugated by a
/// Haar unitary.
pub fn symmetry(p: usize, q: usize, rng: &mut impl Rng) -> FundamentalSymmetry {
    let n = p + q;
    let u = haar_unitary(n, rng);
    let d: Vec<f64> = (0..n).map(|i| if i < p { 1.0 } else { -1.0 }).collect();
    let j = &(&u * &ComplexMatrix::diag_real(&d)) * &u.adjoint();
    // re-Hermitize to keep the construction tolerance well inside 1e-12
    FundamentalSymmetry::from_matrix(&j.hermitize()).expect("conjugated signature matrix")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::residual;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn haar_unitary_is_unitary_and_deterministic() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let u = haar_unitary(4, &mut rng);
        let uu = &u.adjoint() * &u;
        assert!(residual(&uu, &ComplexMatrix::identity(4)) < 1e-12);
        let mut rng2 = ChaCha20Rng::seed_from_u64(7);
        let u2 = haar_unitary(4, &mut rng2);
        assert_eq!(u.data(), u2.data());
    }

    #[test]
    fn cptp_kraus_closure() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        let ks = cptp_kraus(3, 4, &mut rng);
        let mut s = ComplexMatrix::zeros(3);
        for k in &ks {
            s = &s + &(k * &k.adjoint());
        }
        assert!(residual(&s, &ComplexMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn random_symmetry_is_valid() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let j = symmetry(2, 1, &mut rng);
        assert_eq!(j.signature(), (2, 1));
        let sq = j.matrix() * j.matrix();
        assert!(residual(&sq, &ComplexMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn density_is_normalized_psd() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let d = density(4, &mut rng);
        assert!((d.trace().re - 1.0).abs() < 1e-12);
        let v = crate::linalg::func::psd_check(&d, 1e-10).unwrap();
        assert!(v.is_psd);
    }
}
