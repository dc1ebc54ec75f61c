//! Dense square complex matrices over `Complex64`, stored row-major.
//!
//! This is the universal carrier for the rest of the crate: metrics,
//! states, channel blocks and superoperator matrices are all square, so
//! the type only models square shapes. Entries are validated to be finite
//! at construction; arithmetic operators assume matching shapes and are
//! meant for internal use after inputs have been validated.

use num_complex::Complex;

use crate::error::{Error, Result};

pub type Complex64 = Complex<f64>;

/// Shorthand for a complex scalar.
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex::new(re, im)
}

/// Square complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds an `n x n` matrix from `n*n` row-major entries.
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Shape(format!(
                "expected {} entries for a {n} x {n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Shape("non-finite entry".into()));
        }
        Ok(ComplexMatrix { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        ComplexMatrix { n, data: vec![Complex::default(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, c64(1.0, 0.0));
        }
        m
    }

    /// Diagonal matrix from complex entries.
    pub fn diag(d: &[Complex64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn diag_real(d: &[f64]) -> Self {
        Self::diag(&d.iter().map(|&x| c64(x, 0.0)).collect::<Vec<_>>())
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("rows of unequal length".into()));
        }
        Self::new(n, rows.concat())
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Matrix unit with a single 1 at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.set(i, j, c64(1.0, 0.0));
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn col(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j).conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        ComplexMatrix { n: self.n, data: self.data.iter().map(|&z| z * alpha).collect() }
    }

    pub fn scale_re(&self, alpha: f64) -> Self {
        self.scale(c64(alpha, 0.0))
    }

    /// Hermitian part `(A + A*)/2`.
    pub fn hermitize(&self) -> Self {
        Self::from_fn(self.n, |i, j| (self.get(i, j) + self.get(j, i).conj()) * 0.5)
    }

    /// Frobenius norm.
    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Operator infinity norm (maximum absolute row sum).
    pub fn norm_inf_op(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `||A - A*||_F`, zero exactly when Hermitian.
    pub fn hermitian_residual(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                s += (self.get(i, j) - self.get(j, i).conj()).norm_sqr();
            }
        }
        s.sqrt()
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.n, "matvec dimension mismatch");
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// Copies the `bn x bn` matrix `m` into block position `(bi, bj)`.
    pub fn set_block(&mut self, bi: usize, bj: usize, m: &ComplexMatrix) {
        let bn = m.n;
        for r in 0..bn {
            for c in 0..bn {
                self.set(bi * bn + r, bj * bn + c, m.get(r, c));
            }
        }
    }

    /// Extracts the `bn x bn` block at block position `(bi, bj)`.
    pub fn block(&self, bi: usize, bj: usize, bn: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(bn, |r, c| self.get(bi * bn + r, bj * bn + c))
    }
}

impl std::ops::Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "add dimension mismatch");
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl std::ops::Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "sub dimension mismatch");
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl std::ops::Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "mul dimension mismatch");
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex::default() {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl std::ops::Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale(c64(-1.0, 0.0))
    }
}

/// `||A - B||_F`.
pub fn residual(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.n(), b.n(), "residual dimension mismatch");
    (a - b).norm_fro()
}

/// Relative-tolerance scale `max(1, ||A||_inf)`.
pub fn tol_scale(a: &ComplexMatrix) -> f64 {
    a.norm_inf_op().max(1.0)
}

/// Inner product, linear in the first argument: `sum_i x_i conj(y_i)`.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    assert_eq!(x.len(), y.len(), "inner dimension mismatch");
    x.iter().zip(y).map(|(&a, &b)| a * b.conj()).sum()
}

pub fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Rank-one matrix `x y*`, the map `z -> <z, y> x`.
pub fn outer(x: &[Complex64], y: &[Complex64]) -> ComplexMatrix {
    assert_eq!(x.len(), y.len(), "outer dimension mismatch");
    ComplexMatrix::from_fn(x.len(), |i, j| x[i] * y[j].conj())
}
