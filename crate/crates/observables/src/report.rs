use coherence_core::{
    coherence_closed_form, decompose_photon_moments, g2_displaced_thermal, DisplacedThermal64,
};
use twa_engine::TrajectoryEnsemble;

use crate::error::Result;
use crate::kspace::KSpaceWindow;
use crate::stats::{condensate_number_stats, CondensateStats};

/// Photon statistics and coherence of one pump point, with standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceReport {
    pub pump_ratio: f64,
    pub mean_n_c: f64,
    pub err_mean_n_c: f64,
    pub var_n_c: f64,
    pub err_var_n_c: f64,
    pub nbar: f64,
    pub err_nbar: f64,
    pub alpha0_sq: f64,
    pub err_alpha0_sq: f64,
    pub g2: f64,
    pub err_g2: f64,
    pub coherence: f64,
    pub err_coherence: f64,
    /// Whether the (mean, var) pair was clamped to the model boundary.
    pub clamped: bool,
}

/// Derived quantities from a (mean, var) pair; NaN-safe at the boundary.
fn derived(mean: f64, var: f64) -> Result<(f64, f64, f64, f64, bool)> {
    let d = decompose_photon_moments(mean.max(0.0), var.max(0.0))?;
    let state = DisplacedThermal64::from_magnitudes(d.alpha0_sq, d.nbar)?;
    let g2 = if mean > 0.0 { g2_displaced_thermal(&state)? } else { f64::NAN };
    let c = coherence_closed_form(&state)?;
    Ok((d.nbar, d.alpha0_sq, g2, c, d.clamped))
}

/// Chains the window statistics through the moment decomposition to g2 and
/// the coherence measure; errors are first-order sensitivities on
/// (mean, var) evaluated by central finite differences on the full chain.
pub fn coherence_report(
    ens: &TrajectoryEnsemble,
    window: &KSpaceWindow,
    pump_ratio: f64,
) -> Result<CoherenceReport> {
    let stats = condensate_number_stats(ens, window)?;
    report_from_stats(&stats, pump_ratio)
}

/// Builds the report from precomputed statistics (shared with the CLI and
/// with synthetic-injection tests).
pub fn report_from_stats(stats: &CondensateStats, pump_ratio: f64) -> Result<CoherenceReport> {
    let (nbar, alpha0_sq, g2, coherence, clamped) = derived(stats.mean_n_c, stats.var_n_c)?;

    let h_m = (1e-6 * stats.mean_n_c.abs()).max(1e-9);
    let h_v = (1e-6 * stats.var_n_c.abs()).max(1e-9);
    let grad = |f: &dyn Fn(f64, f64) -> f64| -> (f64, f64) {
        let dm = (f(stats.mean_n_c + h_m, stats.var_n_c) - f(stats.mean_n_c - h_m, stats.var_n_c))
            / (2.0 * h_m);
        let dv = (f(stats.mean_n_c, stats.var_n_c + h_v) - f(stats.mean_n_c, stats.var_n_c - h_v))
            / (2.0 * h_v);
        (dm, dv)
    };
    let propagate = |f: &dyn Fn(f64, f64) -> f64| -> f64 {
        let (dm, dv) = grad(f);
        ((dm * stats.err_mean).powi(2) + (dv * stats.err_var).powi(2)).sqrt()
    };
    let pick = |i: usize| {
        move |m: f64, v: f64| -> f64 {
            match derived(m, v) {
                Ok(t) => match i {
                    0 => t.0,
                    1 => t.1,
                    2 => t.2,
                    _ => t.3,
                },
                Err(_) => f64::NAN,
            }
        }
    };

    Ok(CoherenceReport {
        pump_ratio,
        mean_n_c: stats.mean_n_c,
        err_mean_n_c: stats.err_mean,
        var_n_c: stats.var_n_c,
        err_var_n_c: stats.err_var,
        nbar,
        err_nbar: propagate(&pick(0)),
        alpha0_sq,
        err_alpha0_sq: propagate(&pick(1)),
        g2,
        err_g2: propagate(&pick(2)),
        coherence,
        err_coherence: propagate(&pick(3)),
        clamped,
    })
}
