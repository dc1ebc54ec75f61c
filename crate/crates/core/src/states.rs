//! J-states and J-effects.
//!
//! A J-state of unitary origin is a J-positive matrix `B` with
//! `Tr(BJ) = 1`; equivalently `JB` is an ordinary density matrix. The
//! J-unitary origin variant normalizes `Tr(B) = 1` instead. J-effects `E`
//! are matrices with `0 <= JE <= I`; the generalized probability of an
//! effect in a state is `Tr((JE)(JB))`.

use crate::error::{Error, Result};
use crate::linalg::eig::eig_hermitian;
use crate::linalg::func::schatten_norm;
use crate::linalg::matrix::{
    c64, outer, residual, tol_scale, vec_norm, Complex64, ComplexMatrix,
};
use crate::metric::{is_j_positive, j_adjoint, jordan_split, FundamentalSymmetry};

/// Normalization convention a J-state was validated against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateOrigin {
    /// `Tr(BJ) = 1`: `JB` is an ordinary density matrix.
    Unitary,
    /// `Tr(B) = 1`.
    JUnitary,
}

/// Trace tolerance of state validation.
const TRACE_TOL: f64 = 1e-9;

/// A validated J-state.
#[derive(Debug, Clone)]
pub struct JState {
    b: ComplexMatrix,
    j: FundamentalSymmetry,
    origin: StateOrigin,
}

impl JState {
    /// Validates `b` as a J-state of the given origin: J-positivity within
    /// `tol` and trace normalization within 1e-9.
    pub fn new(
        b: ComplexMatrix,
        j: FundamentalSymmetry,
        origin: StateOrigin,
        tol: f64,
    ) -> Result<Self> {
        let verdict = is_j_positive(&b, &j, tol)?;
        if !verdict.is_j_positive {
            return Err(Error::NotJPositive(format!(
                "min eigenvalue of JB is {:.3e}",
                verdict.min_eig
            )));
        }
        let tr = match origin {
            StateOrigin::Unitary => (&b * j.matrix()).trace(),
            StateOrigin::JUnitary => b.trace(),
        };
        if (tr - c64(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::TraceViolation(format!(
                "normalization trace is {tr}, expected 1"
            )));
        }
        Ok(JState { b, j, origin })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.b
    }

    pub fn symmetry(&self) -> &FundamentalSymmetry {
        &self.j
    }

    pub fn origin(&self) -> StateOrigin {
        self.origin
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    /// Whether `JB` has rank one within `tol` (second-largest eigenvalue).
    pub fn is_pure(&self, tol: f64) -> Result<bool> {
        let e = eig_hermitian(&(self.j.matrix() * &self.b), tol)?;
        let n = e.eigenvalues.len();
        if n < 2 {
            return Ok(true);
        }
        Ok(e.eigenvalues[n - 2].abs() <= tol)
    }
}

/// Pure J-state `(Je) e*` built from a unit vector `e`.
///
/// The result satisfies `Pi# = Pi`, `Pi J Pi = Pi` and `Tr(Pi J) = 1`.
pub fn pure_jstate(e: &[Complex64], j: &FundamentalSymmetry) -> Result<JState> {
    if e.len() != j.n() {
        return Err(Error::Shape("vector length does not match symmetry".into()));
    }
    let norm = vec_norm(e);
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized(format!("||e|| = {norm}")));
    }
    let je = j.matrix().matvec(e);
    JState::new(outer(&je, e), j.clone(), StateOrigin::Unitary, 1e-9)
}

/// Spectral ensemble of a J-state: `B = sum_i w_i (J e_i) e_i*` with
/// orthonormal `e_i` and weights sorted descending (zero weights dropped).
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    pub weights: Vec<f64>,
    pub vectors: Vec<Vec<Complex64>>,
}

pub fn schmidt_decompose(s: &JState) -> Result<SchmidtDecomposition> {
    let e = eig_hermitian(&(s.j.matrix() * &s.b), 1e-9)?;
    let cut = 1e-12 * e.eigenvalues.last().map(|l| l.abs()).unwrap_or(0.0).max(1.0);
    let mut weights = Vec::new();
    let mut vectors = Vec::new();
    for (k, &l) in e.eigenvalues.iter().enumerate().rev() {
        if l > cut {
            weights.push(l);
            vectors.push(e.eigenvectors.col(k));
        }
    }
    Ok(SchmidtDecomposition { weights, vectors })
}

/// Convex combination of J-states sharing the same symmetry and origin.
pub fn convex_mix(states: &[JState], weights: &[f64]) -> Result<JState> {
    if states.is_empty() {
        return Err(Error::Empty("no states to mix".into()));
    }
    if states.len() != weights.len() {
        return Err(Error::BadWeights(format!(
            "{} states but {} weights",
            states.len(),
            weights.len()
        )));
    }
    if weights.iter().any(|&w| !(w >= 0.0)) {
        return Err(Error::BadWeights("negative or non-finite weight".into()));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::BadWeights(format!("weights sum to {sum}")));
    }
    let first = &states[0];
    for s in &states[1..] {
        if !s.j.same_as(&first.j, 1e-12) || s.origin != first.origin {
            return Err(Error::SymmetryMismatch(
                "mixed states must share symmetry and origin".into(),
            ));
        }
    }
    let mut b = ComplexMatrix::zeros(first.n());
    for (s, &w) in states.iter().zip(weights) {
        b = &b + &s.b.scale_re(w);
    }
    JState::new(b, first.j.clone(), first.origin, 1e-9)
}

/// A validated J-effect: `0 <= JE <= I` within 1e-9.
#[derive(Debug, Clone)]
pub struct JEffect {
    e: ComplexMatrix,
    j: FundamentalSymmetry,
}

/// Spectrum bounds of `JE` for effect validation and reporting.
#[derive(Debug, Clone, Copy)]
pub struct EffectVerdict {
    pub ok: bool,
    pub min_eig: f64,
    pub max_eig: f64,
}

/// Checks `0 <= JE <= I` within `tol`.
pub fn effect_verdict(
    e: &ComplexMatrix,
    j: &FundamentalSymmetry,
    tol: f64,
) -> Result<EffectVerdict> {
    if e.n() != j.n() {
        return Err(Error::Shape("effect dimension does not match symmetry".into()));
    }
    let je = j.matrix() * e;
    if je.hermitian_residual() > tol * tol_scale(&je) {
        return Err(Error::NotHermitian(format!(
            "JE residual {:.3e}",
            je.hermitian_residual()
        )));
    }
    let eig = eig_hermitian(&je, tol)?;
    let min_eig = eig.eigenvalues.first().copied().unwrap_or(0.0);
    let max_eig = eig.eigenvalues.last().copied().unwrap_or(0.0);
    Ok(EffectVerdict { ok: min_eig >= -tol && max_eig <= 1.0 + tol, min_eig, max_eig })
}

impl JEffect {
    pub fn new(e: ComplexMatrix, j: FundamentalSymmetry) -> Result<Self> {
        let v = effect_verdict(&e, &j, 1e-9)?;
        if !v.ok {
            return Err(Error::NotPsd(format!(
                "effect spectrum [{:.3e}, {:.3e}] outside [0, 1]",
                v.min_eig, v.max_eig
            )));
        }
        Ok(JEffect { e, j })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.e
    }

    pub fn symmetry(&self) -> &FundamentalSymmetry {
        &self.j
    }
}

/// Generalized probability of an effect in a state, together with the
/// trace/operator norm bound that caps its magnitude.
#[derive(Debug, Clone, Copy)]
pub struct EffectProbability {
    /// `Tr((JE)(JB))`.
    pub probability: f64,
    /// `||JB||_1 ||JE||_inf`, an upper bound for `|probability|`.
    pub holder_bound: f64,
}

pub fn effect_probability(effect: &JEffect, state: &JState) -> Result<EffectProbability> {
    if !effect.j.same_as(&state.j, 1e-12) {
        return Err(Error::SymmetryMismatch("effect and state symmetries differ".into()));
    }
    let je = effect.j.matrix() * &effect.e;
    let jb = state.j.matrix() * &state.b;
    let probability = (&je * &jb).trace().re;
    let holder_bound = schatten_norm(&jb, 1.0)? * schatten_norm(&je, f64::INFINITY)?;
    Ok(EffectProbability { probability, holder_bound })
}

/// State automorphism `B -> V# B V` induced by a unitary `V`.
///
/// The image is revalidated as a J-state of the same origin.
pub fn conjugation_automorphism(v: &ComplexMatrix, state: &JState, tol: f64) -> Result<JState> {
    if v.n() != state.n() {
        return Err(Error::Shape("conjugating matrix has wrong dimension".into()));
    }
    let gram = &v.adjoint() * v;
    let r = residual(&gram, &ComplexMatrix::identity(v.n()));
    if r > tol * tol_scale(v).powi(2) {
        return Err(Error::NotUnitary(format!("||V*V - I|| = {r:.3e}")));
    }
    let vadj = j_adjoint(v, &state.j)?;
    let b = &(&vadj * &state.b) * v;
    JState::new(b, state.j.clone(), state.origin, tol.max(1e-9))
}

/// Extends a map on J-states to all J-selfadjoint matrices through the
/// Jordan split: `T = T(+) - T(-)` maps to
/// `w(+) s(T(+)/w(+)) - w(-) s(T(-)/w(-))` with `w = Tr(T(+/-) J)`,
/// skipping vanishing parts. The extension preserves `Tr(. J)`.
pub fn extend_automorphism(
    s: impl Fn(&JState) -> Result<JState>,
    t: &ComplexMatrix,
    j: &FundamentalSymmetry,
    tol: f64,
) -> Result<ComplexMatrix> {
    let split = jordan_split(t, j, tol)?;
    let mut out = ComplexMatrix::zeros(t.n());
    let cut = 1e-12 * tol_scale(t);
    for (part, sign) in [(&split.positive, 1.0), (&split.negative, -1.0)] {
        let w = (part * j.matrix()).trace().re;
        if w <= cut {
            continue;
        }
        let normalized = JState::new(
            part.scale_re(1.0 / w),
            j.clone(),
            StateOrigin::Unitary,
            tol,
        )
        .map_err(|e| Error::NotAnAutomorphism(format!("jordan part is not a state: {e}")))?;
        let image = s(&normalized)
            .map_err(|e| Error::NotAnAutomorphism(format!("callable failed: {e}")))?;
        if !image.symmetry().same_as(j, 1e-12) || image.origin() != StateOrigin::Unitary {
            return Err(Error::NotAnAutomorphism(
                "callable changed the symmetry or origin".into(),
            ));
        }
        out = &out + &image.matrix().scale_re(sign * w);
    }
    Ok(out)
}
