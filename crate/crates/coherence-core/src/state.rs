//! Domain types for displaced thermal states and phase-space points.

use num_complex::Complex;

use crate::error::{CoherenceError, Result};
use crate::float::Float;

/// Gaussian state with coherent amplitude `alpha0` and thermal occupation
/// `nbar`; its Glauber-Sudarshan distribution is a Gaussian of width `nbar`
/// centered at `alpha0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisplacedThermalState<T: Float> {
    pub alpha0: Complex<T>,
    pub nbar: T,
}

impl<T: Float> DisplacedThermalState<T> {
    pub fn new(alpha0: Complex<T>, nbar: T) -> Result<Self> {
        if nbar < T::zero() || !nbar.is_finite() {
            return Err(CoherenceError::NegativeThermalOccupation(
                nbar.to_f64().unwrap_or(f64::NAN),
            ));
        }
        Ok(Self { alpha0, nbar })
    }

    /// Convenience constructor from the photon-number magnitudes
    /// `(|alpha0|^2, nbar)`; the coherent amplitude is taken real.
    pub fn from_magnitudes(alpha0_sq: T, nbar: T) -> Result<Self> {
        Self::new(Complex::new(alpha0_sq.sqrt(), T::zero()), nbar)
    }

    /// Coherent photon number `|alpha0|^2`.
    pub fn alpha0_sq(&self) -> T {
        self.alpha0.norm_sqr()
    }

    /// Total mean photon number `nbar + |alpha0|^2`.
    pub fn mean_n(&self) -> T {
        self.nbar + self.alpha0_sq()
    }
}

/// Point in quadrature phase space with the commutator convention
/// `[q, p] = i`, i.e. `alpha = (q + i p) / sqrt(2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpacePoint<T: Float> {
    pub q: T,
    pub p: T,
}

impl<T: Float> PhaseSpacePoint<T> {
    pub fn new(q: T, p: T) -> Self {
        Self { q, p }
    }

    pub fn from_alpha(alpha: Complex<T>) -> Self {
        let s = T::of(2.0).sqrt();
        Self { q: s * alpha.re, p: s * alpha.im }
    }

    pub fn alpha(&self) -> Complex<T> {
        let s = T::of(2.0).sqrt();
        Complex::new(self.q / s, self.p / s)
    }

    /// Radius in quadrature units, `sqrt(q^2 + p^2)`.
    pub fn radius(&self) -> T {
        (self.q * self.q + self.p * self.p).sqrt()
    }
}
