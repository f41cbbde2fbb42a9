//! The 4-parameter fit driver: moment-based initialization, Nelder-Mead,
//! Levenberg-Marquardt polish.

use coherence_core::decompose_photon_moments;
use homodyne::HusimiHistogram;

use crate::error::{FittingError, Result};
use crate::model::{all_sigmas_zero, chi_squared, model_bin_density, FitBin, FitParams};
use crate::optimize::{levenberg_marquardt, nelder_mead};

pub const MIN_BINS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub params: FitParams,
    /// Weighted sum of squared residuals at the optimum.
    pub chi2: f64,
    pub n_bins: usize,
    pub converged: bool,
}

/// Moment-based starting point: the density-weighted centroid seeds the
/// center, and the antinormal radial moments about it seed the photon-number
/// split.
pub fn initial_guess(bins: &[FitBin]) -> FitParams {
    let wsum: f64 = bins.iter().map(|b| b.density.max(0.0)).sum();
    let (mut q_c, mut p_c) = (0.0, 0.0);
    if wsum > 0.0 {
        for b in bins {
            let w = b.density.max(0.0) / wsum;
            q_c += w * b.q;
            p_c += w * b.p;
        }
    }
    let (mut eu, mut eu2) = (0.0, 0.0);
    if wsum > 0.0 {
        for b in bins {
            let w = b.density.max(0.0) / wsum;
            let u = 0.5 * ((b.q - q_c).powi(2) + (b.p - p_c).powi(2));
            eu += w * u;
            eu2 += w * u * u;
        }
    }
    let mean_n = (eu - 1.0).max(1e-3);
    let mean_n_sq = (eu2 - 3.0 * mean_n - 2.0).max(0.0);
    let var_n = (mean_n_sq - mean_n * mean_n).max(0.0);
    let m = decompose_photon_moments(mean_n, var_n)
        .expect("mean_n clamped positive");
    FitParams {
        nbar: m.nbar.max(1e-3),
        alpha0_sq: m.alpha0_sq.max(1e-3),
        q_c,
        p_c,
    }
}

fn residual_vector(bins: &[FitBin], uniform: bool) -> impl Fn(&[f64; 4]) -> Vec<f64> + '_ {
    move |x| {
        let params = FitParams::from_internal(x);
        bins.iter()
            .filter(|b| uniform || b.sigma > 0.0)
            .map(|b| {
                let r = model_bin_density(&params, b) - b.density;
                if uniform {
                    r
                } else {
                    r / b.sigma
                }
            })
            .collect()
    }
}

/// Polishes from a given starting point with Levenberg-Marquardt only; used
/// for resample refits where the optimum moves little.
pub fn refit_from(bins: &[FitBin], start: &FitParams) -> Result<FitResult> {
    let uniform = all_sigmas_zero(bins);
    let lm = levenberg_marquardt(residual_vector(bins, uniform), start.to_internal(), 100, 1e-8);
    if !lm.converged {
        return Err(FittingError::NoConvergence(100));
    }
    Ok(FitResult {
        params: FitParams::from_internal(&lm.x),
        chi2: lm.chi2,
        n_bins: bins.len(),
        converged: true,
    })
}

/// Full fit: validates the data, seeds from moments, runs Nelder-Mead, then
/// polishes with Levenberg-Marquardt.
pub fn fit_husimi_bins(bins: &[FitBin]) -> Result<FitResult> {
    if bins.len() < MIN_BINS {
        return Err(FittingError::InsufficientBins { needed: MIN_BINS, got: bins.len() });
    }
    for b in bins {
        if !(b.density.is_finite() && b.sigma.is_finite() && b.sigma >= 0.0) {
            return Err(FittingError::InvalidData(format!(
                "bin at ({}, {}) has density {} sigma {}",
                b.q, b.p, b.density, b.sigma
            )));
        }
    }
    let uniform = all_sigmas_zero(bins);
    let objective = |x: &[f64; 4]| chi_squared(&FitParams::from_internal(x), bins, uniform);
    let x0 = initial_guess(bins).to_internal();
    let nm = nelder_mead(objective, x0, [0.3, 0.3, 0.5, 0.5], 2000, 1e-10);
    let lm = levenberg_marquardt(residual_vector(bins, uniform), nm.x, 200, 1e-9);
    let (x, chi2, converged) = if lm.chi2 <= nm.value {
        (lm.x, lm.chi2, lm.converged || nm.converged)
    } else {
        (nm.x, nm.value, nm.converged)
    };
    if !converged {
        return Err(FittingError::NoConvergence(2000));
    }
    Ok(FitResult { params: FitParams::from_internal(&x), chi2, n_bins: bins.len(), converged })
}

/// Extracts occupied bins (with their binomial errors) from a histogram.
pub fn bins_from_histogram(hist: &HusimiHistogram) -> Vec<FitBin> {
    let width = hist.q_edges[1] - hist.q_edges[0];
    let mut bins = Vec::new();
    for ip in 0..hist.n_p() {
        for iq in 0..hist.n_q() {
            if hist.counts[ip * hist.n_q() + iq] > 0 {
                let (q, p) = hist.bin_center(iq, ip);
                bins.push(FitBin {
                    q,
                    p,
                    density: hist.density(iq, ip),
                    sigma: hist.sigma_density(iq, ip),
                    width,
                });
            }
        }
    }
    bins
}

/// Replaces each bin's error with the binomial error implied by the model at
/// the given parameters. Weighting by observed counts lets downward
/// fluctuations grab extra weight and drags the fit off the true shape;
/// model-implied weights remove that bias.
pub fn reweight_bins(bins: &mut [FitBin], params: &FitParams, n_total: f64) {
    for b in bins.iter_mut() {
        let area = b.width * b.width;
        let pm = (model_bin_density(params, b) * area).max(0.5 / n_total);
        b.sigma = (pm * (1.0 - pm) / n_total).sqrt() / area;
    }
}

/// Fits a measured Husimi histogram: a first pass with the observed bin
/// errors, then two passes with model-implied errors. Returns the fit and
/// the reweighted bins (ready for error propagation).
pub fn fit_histogram_detailed(hist: &HusimiHistogram) -> Result<(FitResult, Vec<FitBin>)> {
    let mut bins = bins_from_histogram(hist);
    let mut fit = fit_husimi_bins(&bins)?;
    for _ in 0..2 {
        reweight_bins(&mut bins, &fit.params, hist.total as f64);
        fit = refit_from(&bins, &fit.params)?;
    }
    Ok((fit, bins))
}

/// Fits the occupied bins of a measured Husimi histogram.
pub fn fit_histogram(hist: &HusimiHistogram) -> Result<FitResult> {
    fit_histogram_detailed(hist).map(|(fit, _)| fit)
}

/// Two-scale fit with the finite-count bias extrapolated away.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtrapolatedFit {
    /// Bias-corrected parameters (chi2 and bin count from the fine grid).
    pub result: FitResult,
    pub fine: FitResult,
    pub coarse: FitResult,
    /// Reweighted coarse bins, for Monte Carlo error propagation seeded at
    /// `coarse` (the scatter of the corrected combination is dominated by,
    /// and strongly correlated with, the coarse fit's).
    pub coarse_bins: Vec<FitBin>,
}

/// Fits the same sample binned at two widths and removes the leading
/// finite-count estimator bias, which scales as 1/(counts per bin): with the
/// coarse width twice the fine one, `p* = (4 p_coarse - p_fine) / 3`.
pub fn fit_histograms_extrapolated(
    fine: &HusimiHistogram,
    coarse: &HusimiHistogram,
) -> Result<ExtrapolatedFit> {
    let (fit_fine, _) = fit_histogram_detailed(fine)?;
    let (fit_coarse, coarse_bins) = fit_histogram_detailed(coarse)?;
    let ex = |c: f64, f: f64| (4.0 * c - f) / 3.0;
    let params = FitParams {
        nbar: ex(fit_coarse.params.nbar, fit_fine.params.nbar).max(0.0),
        alpha0_sq: ex(fit_coarse.params.alpha0_sq, fit_fine.params.alpha0_sq).max(0.0),
        q_c: ex(fit_coarse.params.q_c, fit_fine.params.q_c),
        p_c: ex(fit_coarse.params.p_c, fit_fine.params.p_c),
    };
    Ok(ExtrapolatedFit {
        result: FitResult {
            params,
            chi2: fit_fine.chi2,
            n_bins: fit_fine.n_bins,
            converged: fit_fine.converged && fit_coarse.converged,
        },
        fine: fit_fine,
        coarse: fit_coarse,
        coarse_bins,
    })
}
