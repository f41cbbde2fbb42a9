//! Synthetic eight-port data generator: the exact oracle for the Q-function
//! estimators downstream.
//!
//! Each record draws the signal from the Glauber-Sudarshan distribution of
//! the current state (coherent amplitude with a diffusing global phase plus
//! a thermal Gaussian of variance nbar), projects it on each channel's local
//! oscillator phase, and adds independent vacuum noise of variance 1/2 per
//! channel. Postselected orthogonal pairs scaled by sqrt(2) are therefore
//! exact Husimi samples.

use coherence_core::{Complex64, DisplacedThermal64};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{HomodyneError, Result};
use crate::stream::{QuadratureStream, Record};

#[derive(Debug, Clone, Copy)]
pub struct GeneratorConfig {
    pub high: DisplacedThermal64,
    /// Second emission state; when present the source alternates between
    /// `high` and `low` every `switching_period`.
    pub low: Option<DisplacedThermal64>,
    /// Dwell time per state (ps); ignored without `low`.
    pub switching_period: f64,
    /// Global-phase coherence time tau_c (ps): the phase random-walks with
    /// `Var[theta(t) - theta(0)] = 2 t / tau_c`. Non-positive disables
    /// diffusion.
    pub phase_coherence_time: f64,
    /// Period (ps) of the linear sweep of the relative channel phase.
    /// Non-positive pins the channels orthogonal (delta = pi/2).
    pub sweep_period: f64,
    pub n_samples: usize,
    /// Sample spacing (ps).
    pub sample_dt: f64,
    pub seed: u64,
}

impl GeneratorConfig {
    /// Steady single-state source. Records are spaced 1 ns apart — far
    /// beyond the 100 ps phase coherence time, as for a pulsed local
    /// oscillator — so consecutive records are statistically independent
    /// and the stream passes the decorrelation stage untouched.
    pub fn steady(state: DisplacedThermal64, n_samples: usize, seed: u64) -> Self {
        Self {
            high: state,
            low: None,
            switching_period: f64::INFINITY,
            phase_coherence_time: 100.0,
            sweep_period: 16_384.0 * 1000.0,
            n_samples,
            sample_dt: 1000.0,
            seed,
        }
    }
}

pub fn synth_homodyne_stream(cfg: &GeneratorConfig) -> Result<QuadratureStream> {
    if cfg.n_samples == 0 {
        return Err(HomodyneError::InvalidArgument("n_samples must be > 0".into()));
    }
    if !(cfg.sample_dt > 0.0) {
        return Err(HomodyneError::InvalidArgument(format!(
            "sample_dt must be positive, got {}",
            cfg.sample_dt
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut theta: f64 = if cfg.phase_coherence_time > 0.0 {
        rng.gen::<f64>() * std::f64::consts::TAU
    } else {
        0.0
    };
    let theta_step = if cfg.phase_coherence_time > 0.0 {
        (2.0 * cfg.sample_dt / cfg.phase_coherence_time).sqrt()
    } else {
        0.0
    };
    let mut records = Vec::with_capacity(cfg.n_samples);
    for i in 0..cfg.n_samples {
        let t = i as f64 * cfg.sample_dt;
        let state = match cfg.low {
            Some(low)
                if cfg.switching_period.is_finite()
                    && ((t / cfg.switching_period) as u64) % 2 == 1 =>
            {
                low
            }
            _ => cfg.high,
        };
        // P-distribution sample of the current state
        let sigma = (0.5 * state.nbar).sqrt();
        let g_re: f64 = rng.sample(StandardNormal);
        let g_im: f64 = rng.sample(StandardNormal);
        let alpha: Complex64 = state.alpha0 * Complex::from_polar(1.0, theta)
            + Complex::new(g_re * sigma, g_im * sigma);
        let delta = if cfg.sweep_period > 0.0 && cfg.sweep_period.is_finite() {
            std::f64::consts::TAU * (t / cfg.sweep_period)
        } else {
            std::f64::consts::FRAC_PI_2
        };
        let v1: f64 = rng.sample(StandardNormal);
        let v2: f64 = rng.sample(StandardNormal);
        let half = std::f64::consts::FRAC_1_SQRT_2; // sqrt(1/2)
        let x1 = alpha.re + v1 * half;
        let x2 = (alpha * Complex::from_polar(1.0, -delta)).re + v2 * half;
        records.push(Record { t, x1, x2 });

        let dw: f64 = rng.sample(StandardNormal);
        theta += dw * theta_step;
    }
    QuadratureStream::new(records, 1.0)
}
