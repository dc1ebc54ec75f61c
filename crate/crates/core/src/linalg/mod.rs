//! Dense complex linear algebra kernel.

pub mod eig;
pub mod func;
pub mod matrix;

pub use eig::{eig_general, eig_hermitian, GeneralEig, HermitianEig};
pub use func::{matrix_exp, psd_check, schatten_norm, singular_values, sqrt_psd, PsdVerdict};
pub use matrix::{c64, inner, outer, residual, tol_scale, vec_norm, Complex64, ComplexMatrix};
