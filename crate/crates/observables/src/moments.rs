//! Symmetric (Wigner) to normal ordering conversion for mode occupations.
//!
//! Per mode: `<n> = <|b|^2>_W - 1/2` and `<n^2> = <|b|^4>_W - <|b|^2>_W`;
//! distinct modes j != k:
//! `<n_j n_k> = <|b_j|^2 |b_k|^2>_W - <|b_j|^2>_W/2 - <|b_k|^2>_W/2 + 1/4`.

use crate::error::{ObservablesError, Result};
use crate::kspace::KSpaceWindow;

/// Symmetric-ordered input moments for a mode window.
#[derive(Debug, Clone)]
pub struct WignerMoments {
    /// `<|b_j|^2>_W` per mode.
    pub b2: Vec<f64>,
    /// `<|b_j|^4>_W` per mode.
    pub b4: Vec<f64>,
    /// `<|b_j|^2 |b_k|^2>_W` flattened row-major (diagonal ignored).
    pub cross: Vec<f64>,
}

/// Normally ordered window totals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumberMoments {
    /// `<N> = sum_j <n_j>`.
    pub mean_n: f64,
    /// `<(Delta N)^2>`.
    pub var_n: f64,
}

pub fn wigner_to_normal_moments(
    moments: &WignerMoments,
    window: &KSpaceWindow,
) -> Result<NumberMoments> {
    let m = window.n_modes();
    if moments.b2.len() != m || moments.b4.len() != m {
        return Err(ObservablesError::DimensionMismatch { expected: m, got: moments.b2.len() });
    }
    if moments.cross.len() != m * m {
        return Err(ObservablesError::DimensionMismatch {
            expected: m * m,
            got: moments.cross.len(),
        });
    }
    let mean_n: f64 = moments.b2.iter().map(|b2| b2 - 0.5).sum();
    let mut mean_n_sq = 0.0;
    for j in 0..m {
        mean_n_sq += moments.b4[j] - moments.b2[j];
        for k in 0..m {
            if k != j {
                mean_n_sq +=
                    moments.cross[j * m + k] - 0.5 * moments.b2[j] - 0.5 * moments.b2[k] + 0.25;
            }
        }
    }
    Ok(NumberMoments { mean_n, var_n: mean_n_sq - mean_n * mean_n })
}

/// Window-total shortcut used by the estimators: with `s = sum_j |b_j|^2`,
/// `<N> = <s>_W - N_p/2` and
/// `<N^2> = <s^2>_W - N_p <s>_W + N_p (N_p - 1)/4`
/// (algebraically identical to summing the per-mode formulas).
pub fn window_moments_from_sums(
    mean_s: f64,
    mean_s2: f64,
    n_modes: usize,
) -> NumberMoments {
    let np = n_modes as f64;
    let mean_n = mean_s - 0.5 * np;
    let mean_n_sq = mean_s2 - np * mean_s + 0.25 * np * (np - 1.0);
    NumberMoments { mean_n, var_n: mean_n_sq - mean_n * mean_n }
}
