//! Weighted least-squares reconstruction of displaced thermal states from
//! measured Husimi histograms.
//!
//! The model is the phase-averaged Husimi density with four parameters:
//! thermal occupation, coherent photon number, and the phase-space center.
//! Moment estimators seed a Nelder-Mead search, Levenberg-Marquardt
//! polishes, and Monte Carlo resampling of the bin errors propagates
//! uncertainties to the fitted state and its derived `g2` and coherence.

pub mod error;
pub mod fit;
pub mod mc;
pub mod model;
pub mod optimize;
pub mod report;

pub use error::{FittingError, Result};
pub use fit::{
    bins_from_histogram, fit_histogram, fit_histogram_detailed, fit_histograms_extrapolated,
    fit_husimi_bins, initial_guess, refit_from, reweight_bins, ExtrapolatedFit, FitResult,
    MIN_BINS,
};
pub use mc::{propagate_errors_mc, FitErrors, MIN_RESAMPLES};
pub use model::{
    chi_squared, model_bin_density, model_density, FitBin, FitParams, ALPHA0_SQ_MAX, NBAR_MAX,
};
pub use report::{make_report, write_fit_report_csv, FitReport, FIT_REPORT_HEADER};
