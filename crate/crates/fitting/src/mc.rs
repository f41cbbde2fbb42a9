//! Monte Carlo error propagation: perturb the bin densities within their
//! quoted errors, refit, and read the parameter scatter.

use coherence_core::{coherence_closed_form, g2_displaced_thermal};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{FittingError, Result};
use crate::fit::{refit_from, FitResult};
use crate::model::FitBin;

pub const MIN_RESAMPLES: usize = 200;

/// One-sigma uncertainties on the fitted state and its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitErrors {
    pub nbar: f64,
    pub alpha0_sq: f64,
    pub g2: f64,
    pub coherence: f64,
    /// Resamples that actually converged.
    pub n_resamples: usize,
}

fn std_dev(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}

/// Refits `resamples` noisy replicas of the data (each bin perturbed by a
/// Gaussian of its own sigma, each replica on its own RNG stream) and
/// returns the sample standard deviations. Exact data (all sigmas zero)
/// yield exactly zero errors. More than 5% failed refits is an error.
pub fn propagate_errors_mc(
    bins: &[FitBin],
    fit: &FitResult,
    resamples: usize,
    seed: u64,
) -> Result<FitErrors> {
    let resamples = resamples.max(MIN_RESAMPLES);
    // exact data: every replica is identical, so the scatter is exactly zero
    if bins.iter().all(|b| b.sigma == 0.0) {
        return Ok(FitErrors {
            nbar: 0.0,
            alpha0_sq: 0.0,
            g2: 0.0,
            coherence: 0.0,
            n_resamples: resamples,
        });
    }
    let mut nbars = Vec::with_capacity(resamples);
    let mut alphas = Vec::with_capacity(resamples);
    let mut g2s = Vec::with_capacity(resamples);
    let mut cs = Vec::with_capacity(resamples);
    let mut failed = 0usize;
    let mut replica = bins.to_vec();
    for k in 0..resamples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        for (r, b) in replica.iter_mut().zip(bins) {
            let g: f64 = rng.sample(StandardNormal);
            r.density = b.density + g * b.sigma;
        }
        match refit_from(&replica, &fit.params) {
            Ok(res) => {
                let state = res.params.state()?;
                nbars.push(res.params.nbar);
                alphas.push(res.params.alpha0_sq);
                g2s.push(g2_displaced_thermal(&state)?);
                cs.push(coherence_closed_form(&state)?);
            }
            Err(_) => failed += 1,
        }
    }
    if failed * 20 > resamples {
        return Err(FittingError::TooManyResampleFailures { failed, total: resamples });
    }
    Ok(FitErrors {
        nbar: std_dev(&nbars),
        alpha0_sq: std_dev(&alphas),
        g2: std_dev(&g2s),
        coherence: std_dev(&cs),
        n_resamples: nbars.len(),
    })
}
