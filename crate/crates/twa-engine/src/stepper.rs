use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{EngineError, Result};
use crate::fft::Fft2d;
use crate::grid::SimulationGrid;
use crate::params::ModelParams;
use crate::pump::PumpProfile;
use crate::state::{C64, FieldState};

/// Explicit-scheme stability bounds; checked before and during integration.
pub fn check_time_step(dt: f64, grid: &SimulationGrid, params: &ModelParams) -> Result<()> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(EngineError::InvalidConfig(format!("dt must be positive, got {dt}")));
    }
    if params.kinetic_coeff > 0.0 {
        // dt <= 0.5 (hbar / kinetic_coeff) (dx/pi)^2, i.e. half the period of
        // the fastest grid mode
        let dx = grid.dx();
        let bound = 0.5 * params.hbar / params.kinetic_coeff
            * (dx / std::f64::consts::PI).powi(2);
        if dt > bound {
            return Err(EngineError::UnstableTimeStep { dt, bound, which: "kinetic CFL" });
        }
    }
    Ok(())
}

/// Preallocated buffers and plans for integrating one trajectory.
pub struct Stepper {
    grid: SimulationGrid,
    params: ModelParams,
    pump_field: Vec<f64>,
    ksq: Vec<f64>,
    fft: Fft2d,
    lap: Vec<C64>,
    // RK4 stage storage
    k_psi: [Vec<C64>; 4],
    k_n: [Vec<f64>; 4],
    tmp_psi: Vec<C64>,
    tmp_n: Vec<f64>,
    noise_amp: Vec<f64>,
}

impl Stepper {
    pub fn new(grid: SimulationGrid, params: ModelParams, pump: &PumpProfile) -> Result<Self> {
        params.validate()?;
        grid.check_twa_validity(&params)?;
        let m = grid.n_cells();
        let zero_c = vec![C64::new(0.0, 0.0); m];
        let zero_r = vec![0.0; m];
        Ok(Self {
            grid,
            params,
            pump_field: pump.sample(&grid),
            ksq: grid.k_squared(),
            fft: Fft2d::new(grid.n_side),
            lap: zero_c.clone(),
            k_psi: [zero_c.clone(), zero_c.clone(), zero_c.clone(), zero_c.clone()],
            k_n: [zero_r.clone(), zero_r.clone(), zero_r.clone(), zero_r.clone()],
            tmp_psi: zero_c,
            tmp_n: zero_r.clone(),
            noise_amp: zero_r,
        })
    }

    pub fn grid(&self) -> &SimulationGrid {
        &self.grid
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// Drift derivatives of (psi, n_res) into stage slot `slot`.
    ///
    /// d psi/dt = i (K/hbar) lap(psi)
    ///            - (i/hbar) (g_c |psi|^2_- + g_r n) psi
    ///            + 1/2 (R n - gamma_c) psi
    /// d n/dt   = P(r) - (gamma_r + R |psi|^2_-) n
    /// with the renormalized density |psi|^2_- = |psi|^2 - renorm_factor/dV.
    fn derivative(&mut self, slot: usize) {
        let p = &self.params;
        let renorm = p.renorm_factor / self.grid.cell_volume();
        let kin = p.kinetic_coeff / p.hbar;
        let inv_hbar = 1.0 / p.hbar;

        self.lap.copy_from_slice(&self.tmp_psi);
        self.fft.forward(&mut self.lap);
        for (z, &k2) in self.lap.iter_mut().zip(&self.ksq) {
            *z *= -k2;
        }
        self.fft.inverse(&mut self.lap);

        let dpsi = &mut self.k_psi[slot];
        let dn = &mut self.k_n[slot];
        for i in 0..self.tmp_psi.len() {
            let psi = self.tmp_psi[i];
            let n = self.tmp_n[i];
            let dens = psi.norm_sqr() - renorm;
            let gain = 0.5 * (p.condensation_rate * n - p.gamma_c);
            let phase_rate = inv_hbar * (p.g_c * dens + p.g_r * n);
            dpsi[i] = Complex::new(0.0, kin) * self.lap[i]
                + psi * Complex::new(gain, -phase_rate);
            dn[i] = self.pump_field[i] - (p.gamma_r + p.condensation_rate * dens) * n;
        }
    }

    /// One classical RK4 drift step (no noise) of length `dt`.
    pub fn drift_step(&mut self, state: &mut FieldState, dt: f64) {
        let m = state.psi.len();
        let half = 0.5 * dt;

        self.tmp_psi.copy_from_slice(&state.psi);
        self.tmp_n.copy_from_slice(&state.n_res);
        self.derivative(0);

        for i in 0..m {
            self.tmp_psi[i] = state.psi[i] + self.k_psi[0][i] * half;
            self.tmp_n[i] = state.n_res[i] + self.k_n[0][i] * half;
        }
        self.derivative(1);

        for i in 0..m {
            self.tmp_psi[i] = state.psi[i] + self.k_psi[1][i] * half;
            self.tmp_n[i] = state.n_res[i] + self.k_n[1][i] * half;
        }
        self.derivative(2);

        for i in 0..m {
            self.tmp_psi[i] = state.psi[i] + self.k_psi[2][i] * dt;
            self.tmp_n[i] = state.n_res[i] + self.k_n[2][i] * dt;
        }
        self.derivative(3);

        let sixth = dt / 6.0;
        for i in 0..m {
            state.psi[i] += (self.k_psi[0][i]
                + (self.k_psi[1][i] + self.k_psi[2][i]) * 2.0
                + self.k_psi[3][i])
                * sixth;
            state.n_res[i] += (self.k_n[0][i]
                + 2.0 * (self.k_n[1][i] + self.k_n[2][i])
                + self.k_n[3][i])
                * sixth;
        }
        state.time += dt;
    }

    /// One full step: RK4 drift plus one additive Wiener increment per cell
    /// with `<dW dW*> = (R n_res + gamma_c) dt / (2 dV)` and `<dW dW> = 0`,
    /// the diffusion coefficient frozen at the step-start reservoir. Negative
    /// reservoir cells are clipped to zero and counted.
    pub fn step(&mut self, state: &mut FieldState, dt: f64, rng: &mut impl Rng) -> Result<()> {
        let p = self.params;
        let dv = self.grid.cell_volume();
        // reservoir stiffness check on the frozen step-start state
        let max_n = state.n_res.iter().cloned().fold(0.0f64, f64::max);
        let relax = dt * (p.condensation_rate * max_n + p.gamma_c);
        if relax > 0.1 {
            return Err(EngineError::UnstableTimeStep {
                dt,
                bound: 0.1 / (p.condensation_rate * max_n + p.gamma_c),
                which: "reservoir relaxation",
            });
        }

        // freeze the diffusion coefficient before the drift advances n_res
        let base = dt / (4.0 * dv);
        for i in 0..state.n_res.len() {
            let var = base * (p.condensation_rate * state.n_res[i] + p.gamma_c);
            self.noise_amp[i] = var.max(0.0).sqrt();
        }

        self.drift_step(state, dt);

        for i in 0..state.psi.len() {
            let amp = self.noise_amp[i];
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            state.psi[i] += Complex::new(re * amp, im * amp);
        }

        for n in state.n_res.iter_mut() {
            if *n < 0.0 {
                *n = 0.0;
                state.clipped += 1;
            }
        }
        Ok(())
    }
}
