//! Closed-form coherence, photon statistics, and phase-space densities of
//! displaced thermal states.

use num_complex::Complex;

use crate::error::{CoherenceError, Result};
use crate::float::Float;
use crate::special::bessel_i0_scaled;
use crate::state::{DisplacedThermalState, PhaseSpacePoint};

/// Hilbert-Schmidt quantum coherence of a displaced thermal state,
///
/// `C = {1 - exp(-X) I0(X)} / (2 nbar + 1)` with `X = 2|alpha0|^2 / (2 nbar + 1)`.
///
/// The Bessel product is evaluated through the exponentially scaled `I0`,
/// so arguments up to `|alpha0|^2 ~ 1e6` do not overflow.
pub fn coherence_closed_form<T: Float>(state: &DisplacedThermalState<T>) -> Result<T> {
    if state.nbar < T::zero() {
        return Err(CoherenceError::NegativeThermalOccupation(
            state.nbar.to_f64().unwrap_or(f64::NAN),
        ));
    }
    let denom = T::of(2.0) * state.nbar + T::one();
    let x = T::of(2.0) * state.alpha0_sq() / denom;
    Ok((T::one() - bessel_i0_scaled(x)) / denom)
}

/// Purity `tr(rho^2) = 1 / (2 nbar + 1)` of a displaced thermal state.
pub fn purity<T: Float>(state: &DisplacedThermalState<T>) -> T {
    (T::of(2.0) * state.nbar + T::one()).recip()
}

/// Purity of the dephased (best incoherent) counterpart,
/// `exp(-X) I0(X) / (2 nbar + 1)`.
pub fn incoherent_purity<T: Float>(state: &DisplacedThermalState<T>) -> T {
    let denom = T::of(2.0) * state.nbar + T::one();
    let x = T::of(2.0) * state.alpha0_sq() / denom;
    bessel_i0_scaled(x) / denom
}

/// Which phase-space representation to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseSpaceKind {
    GlauberSudarshan,
    Wigner,
    Husimi,
}

impl PhaseSpaceKind {
    /// Gaussian variance of the representation in the alpha measure.
    fn variance<T: Float>(&self, nbar: T) -> T {
        match self {
            PhaseSpaceKind::GlauberSudarshan => nbar,
            PhaseSpaceKind::Wigner => nbar + T::of(0.5),
            PhaseSpaceKind::Husimi => nbar + T::one(),
        }
    }
}

/// Phase-space density of a displaced thermal state at `point`, normalized to
/// one under `\int d^2 alpha`.
pub fn phase_space_density<T: Float>(
    state: &DisplacedThermalState<T>,
    point: &PhaseSpacePoint<T>,
    kind: PhaseSpaceKind,
) -> Result<T> {
    if kind == PhaseSpaceKind::GlauberSudarshan && state.nbar <= T::zero() {
        return Err(CoherenceError::DegenerateDistribution);
    }
    let var = kind.variance(state.nbar);
    let d = point.alpha() - state.alpha0;
    Ok((-d.norm_sqr() / var).exp() / (T::PI() * var))
}

/// Phase-averaged Husimi density,
///
/// `Q_inc(alpha) = exp[-(|alpha|^2+|alpha0|^2)/(nbar+1)] / (pi (nbar+1))
///                 * I0(2 |alpha||alpha0| / (nbar+1))`,
///
/// evaluated in scaled form as `exp[-(|alpha|-|alpha0|)^2/(nbar+1)] * I0e`.
pub fn phase_averaged_husimi<T: Float>(
    state: &DisplacedThermalState<T>,
    point: &PhaseSpacePoint<T>,
) -> Result<T> {
    if state.nbar < T::zero() {
        return Err(CoherenceError::NegativeThermalOccupation(
            state.nbar.to_f64().unwrap_or(f64::NAN),
        ));
    }
    let w = state.nbar + T::one();
    let r = point.alpha().norm();
    let r0 = state.alpha0.norm();
    let d = r - r0;
    Ok((-d * d / w).exp() * bessel_i0_scaled(T::of(2.0) * r * r0 / w) / (T::PI() * w))
}

/// Second-order equal-time correlation `g2 = 2 - (1 + nbar/|alpha0|^2)^{-2}`.
///
/// The thermal limit `alpha0 -> 0` returns exactly 2; the vacuum
/// (`nbar = alpha0 = 0`) has no defined `g2`.
pub fn g2_displaced_thermal<T: Float>(state: &DisplacedThermalState<T>) -> Result<T> {
    let a = state.alpha0_sq();
    if a == T::zero() && state.nbar == T::zero() {
        return Err(CoherenceError::UndefinedStatistic);
    }
    if a == T::zero() {
        return Ok(T::of(2.0));
    }
    let ratio = T::one() + state.nbar / a;
    Ok(T::of(2.0) - (ratio * ratio).recip())
}

/// Result of inverting the photon-number moments of the displaced-thermal
/// model.
#[derive(Debug, Clone, Copy)]
pub struct MomentDecomposition<T: Float> {
    pub nbar: T,
    pub alpha0_sq: T,
    /// Set when the `(mean, var)` pair fell outside the physical range
    /// `mean <= var <= mean^2 + mean` and was clamped to the boundary.
    pub clamped: bool,
}

/// Inverts `mean = nbar + |alpha0|^2` and
/// `var = |alpha0|^2 (2 nbar + 1) + nbar^2 + nbar` for the unique solution
/// `nbar = s - sqrt(s^2 + s - var)`, `|alpha0|^2 = s - nbar`.
///
/// Slightly unphysical inputs (noisy estimators) are clamped to the nearest
/// model boundary and flagged.
pub fn decompose_photon_moments<T: Float>(mean_n: T, var_n: T) -> Result<MomentDecomposition<T>> {
    if mean_n < T::zero() {
        return Err(CoherenceError::NegativeThermalOccupation(
            mean_n.to_f64().unwrap_or(f64::NAN),
        ));
    }
    let s = mean_n;
    let lo = s; // Poisson floor
    let hi = s * s + s; // thermal ceiling
    let (var, clamped) = if var_n < lo {
        (lo, true)
    } else if var_n > hi {
        (hi, true)
    } else {
        (var_n, false)
    };
    let disc = (s * s + s - var).max(T::zero());
    let nbar = (s - disc.sqrt()).max(T::zero());
    Ok(MomentDecomposition { nbar, alpha0_sq: s - nbar, clamped })
}

/// First and second quadrature moments of a displaced thermal state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureMoments<T: Float> {
    pub mean_q: T,
    pub mean_p: T,
    pub var_q: T,
    pub var_p: T,
    pub cov_qp: T,
}

pub fn quadrature_moments<T: Float>(state: &DisplacedThermalState<T>) -> QuadratureMoments<T> {
    let s = T::of(2.0).sqrt();
    let var = state.nbar + T::of(0.5);
    QuadratureMoments {
        mean_q: s * state.alpha0.re,
        mean_p: s * state.alpha0.im,
        var_q: var,
        var_p: var,
        cov_qp: T::zero(),
    }
}

/// Beam-splitter-like input-output map `(alpha0, nbar) -> (-r alpha0, |r|^2 nbar)`.
///
/// The ratio `nbar / |alpha0|^2`, and hence `g2`, is invariant.
pub fn linear_coupling_map<T: Float>(
    state: &DisplacedThermalState<T>,
    reflectance: Complex<T>,
) -> Result<DisplacedThermalState<T>> {
    let r2 = reflectance.norm_sqr();
    if r2 > T::one() + T::of(1e-12) {
        return Err(CoherenceError::ReflectanceOutOfRange(
            r2.sqrt().to_f64().unwrap_or(f64::NAN),
        ));
    }
    DisplacedThermalState::new(-reflectance * state.alpha0, r2 * state.nbar)
}

/// Output of the incoherent pair-conversion map `|n> -> |n> (x) |n>`.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition<T: Float> {
    pub coefficients: Vec<T>,
    pub rank: usize,
    /// Entanglement entropy in bits.
    pub entropy: T,
}

/// Schmidt data of the state obtained by converting the Fock-basis
/// superposition `sum_n psi_n |n>` into `sum_n psi_n |n>|n>`.
pub fn pair_conversion_schmidt<T: Float>(
    coefficients: &[Complex<T>],
) -> Result<SchmidtDecomposition<T>> {
    let norm_sq: T = coefficients.iter().map(|c| c.norm_sqr()).sum();
    if (norm_sq - T::one()).abs() > T::of(1e-10) {
        return Err(CoherenceError::NotNormalized(
            norm_sq.to_f64().unwrap_or(f64::NAN),
        ));
    }
    let coeffs: Vec<T> = coefficients.iter().map(|c| c.norm()).collect();
    let rank = coeffs.iter().filter(|&&c| c > T::of(1e-12)).count();
    let entropy = -coeffs
        .iter()
        .filter(|&&c| c > T::of(1e-12))
        .map(|&c| {
            let p = c * c;
            p * p.log2()
        })
        .sum::<T>();
    Ok(SchmidtDecomposition { coefficients: coeffs, rank, entropy })
}
