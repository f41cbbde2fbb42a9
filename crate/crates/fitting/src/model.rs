//! The fit model and its internal parameterization.

use coherence_core::{
    phase_averaged_husimi, DisplacedThermal64, PhaseSpacePoint64, Result as CoreResult,
};

pub const NBAR_MAX: f64 = 1e3;
pub const ALPHA0_SQ_MAX: f64 = 1e5;

/// One histogram bin prepared for fitting: center, measured Husimi density
/// per unit (q, p) area, and its standard error (0 means exact). `width` is
/// the side of the square bin; the model is averaged over it, which matters
/// near the density peak where point evaluation overshoots the bin mean.
/// Width 0 requests plain point evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitBin {
    pub q: f64,
    pub p: f64,
    pub density: f64,
    pub sigma: f64,
    pub width: f64,
}

/// Fit parameters in physical units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitParams {
    pub nbar: f64,
    pub alpha0_sq: f64,
    pub q_c: f64,
    pub p_c: f64,
}

impl FitParams {
    pub fn state(&self) -> CoreResult<DisplacedThermal64> {
        DisplacedThermal64::from_magnitudes(self.alpha0_sq, self.nbar)
    }

    /// Internal optimizer coordinates: the magnitudes are log-scaled so
    /// positivity is built in and the dynamic range is tamed.
    pub fn to_internal(&self) -> [f64; 4] {
        [
            self.nbar.max(1e-9).ln(),
            self.alpha0_sq.max(1e-9).ln(),
            self.q_c,
            self.p_c,
        ]
    }

    pub fn from_internal(x: &[f64; 4]) -> Self {
        Self {
            nbar: x[0].exp().min(NBAR_MAX),
            alpha0_sq: x[1].exp().min(ALPHA0_SQ_MAX),
            q_c: x[2],
            p_c: x[3],
        }
    }
}

/// Model density per unit (q, p) area at a bin center: the phase-averaged
/// Husimi function of the state, centered at `(q_c, p_c)`. The factor 1/2 is
/// the Jacobian `d^2 alpha = dq dp / 2`.
pub fn model_density(params: &FitParams, q: f64, p: f64) -> f64 {
    let state = DisplacedThermal64::from_magnitudes(params.alpha0_sq, params.nbar)
        .expect("parameterization keeps magnitudes nonnegative");
    let point = PhaseSpacePoint64::new(q - params.q_c, p - params.p_c);
    0.5 * phase_averaged_husimi(&state, &point).expect("nbar >= 0")
}

/// 3-point Gauss-Legendre nodes and weights on [-1/2, 1/2].
const GL_NODES: [f64; 3] = [-0.3872983346207417, 0.0, 0.3872983346207417];
const GL_WEIGHTS: [f64; 3] = [5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0];

/// Model density averaged over a bin (tensor-product 3-point quadrature),
/// or evaluated at its center when `width` is 0.
pub fn model_bin_density(params: &FitParams, bin: &FitBin) -> f64 {
    if bin.width == 0.0 {
        return model_density(params, bin.q, bin.p);
    }
    let mut acc = 0.0;
    for (i, &u) in GL_NODES.iter().enumerate() {
        for (j, &v) in GL_NODES.iter().enumerate() {
            acc += GL_WEIGHTS[i]
                * GL_WEIGHTS[j]
                * model_density(params, bin.q + u * bin.width, bin.p + v * bin.width);
        }
    }
    acc
}

/// Weighted sum of squared residuals over the bins. Bins with `sigma > 0`
/// carry weight `1/sigma^2`; if no bin has an error estimate the data are
/// treated as exact and weighted uniformly.
pub fn chi_squared(params: &FitParams, bins: &[FitBin], uniform: bool) -> f64 {
    bins.iter()
        .map(|b| {
            let r = model_bin_density(params, b) - b.density;
            if uniform {
                r * r
            } else if b.sigma > 0.0 {
                (r / b.sigma).powi(2)
            } else {
                0.0
            }
        })
        .sum()
}

/// True when no bin carries an error estimate, i.e. the data are exact.
pub fn all_sigmas_zero(bins: &[FitBin]) -> bool {
    bins.iter().all(|b| b.sigma == 0.0)
}
