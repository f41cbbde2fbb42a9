//! Assembled fit report and its CSV schema.

use coherence_core::{coherence_closed_form, g2_displaced_thermal};

use crate::error::Result;
use crate::fit::FitResult;
use crate::mc::FitErrors;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitReport {
    pub fit: FitResult,
    /// Number of phase-space samples behind the histogram.
    pub n_total: u64,
    pub g2: f64,
    pub coherence: f64,
    pub errors: FitErrors,
}

/// Derives `g2` and the coherence of the fitted state and bundles them with
/// the Monte Carlo errors.
pub fn make_report(fit: FitResult, n_total: u64, errors: FitErrors) -> Result<FitReport> {
    let state = fit.params.state()?;
    Ok(FitReport {
        fit,
        n_total,
        g2: g2_displaced_thermal(&state)?,
        coherence: coherence_closed_form(&state)?,
        errors,
    })
}

pub const FIT_REPORT_HEADER: &str =
    "nbar,alpha0_sq,n_total,g2,C,err_nbar,err_alpha0_sq,err_g2,err_C,chi2,converged";

pub fn write_fit_report_csv(
    w: &mut impl std::io::Write,
    reports: &[FitReport],
) -> Result<()> {
    writeln!(w, "{FIT_REPORT_HEADER}")?;
    for r in reports {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.fit.params.nbar,
            r.fit.params.alpha0_sq,
            r.n_total,
            r.g2,
            r.coherence,
            r.errors.nbar,
            r.errors.alpha0_sq,
            r.errors.g2,
            r.errors.coherence,
            r.fit.chi2,
            r.fit.converged,
        )?;
    }
    Ok(())
}
