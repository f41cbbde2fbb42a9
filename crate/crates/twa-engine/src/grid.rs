use crate::error::{EngineError, Result};
use crate::params::ModelParams;

/// Uniform periodic square grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationGrid {
    /// Grid points per side (power of two).
    pub n_side: usize,
    /// Physical side length L in micrometers.
    pub length: f64,
}

impl SimulationGrid {
    pub fn new(n_side: usize, length: f64) -> Result<Self> {
        if n_side < 2 || !n_side.is_power_of_two() {
            return Err(EngineError::InvalidGrid(format!(
                "n_side must be a power of two >= 2, got {n_side}"
            )));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(EngineError::InvalidGrid(format!("length must be positive, got {length}")));
        }
        Ok(Self { n_side, length })
    }

    /// Cell area `dV = L^2 / n^2` (um^2).
    pub fn cell_volume(&self) -> f64 {
        let dx = self.length / self.n_side as f64;
        dx * dx
    }

    /// Total area `V = L^2` (um^2).
    pub fn volume(&self) -> f64 {
        self.length * self.length
    }

    pub fn n_cells(&self) -> usize {
        self.n_side * self.n_side
    }

    /// Grid spacing (um).
    pub fn dx(&self) -> f64 {
        self.length / self.n_side as f64
    }

    /// Signed wavenumber of FFT bin `i` along one axis (1/um).
    pub fn wavenumber(&self, i: usize) -> f64 {
        let n = self.n_side;
        let k = if i <= n / 2 { i as isize } else { i as isize - n as isize };
        2.0 * std::f64::consts::PI * k as f64 / self.length
    }

    /// `k^2` for every cell in FFT (row-major) order.
    pub fn k_squared(&self) -> Vec<f64> {
        let n = self.n_side;
        let mut out = Vec::with_capacity(n * n);
        for iy in 0..n {
            let ky = self.wavenumber(iy);
            for ix in 0..n {
                let kx = self.wavenumber(ix);
                out.push(kx * kx + ky * ky);
            }
        }
        out
    }

    /// Cell-center coordinates `(x, y)` for row-major cell index, centered on 0.
    pub fn coordinates(&self, idx: usize) -> (f64, f64) {
        let n = self.n_side;
        let dx = self.dx();
        let ix = idx % n;
        let iy = idx / n;
        let half = 0.5 * self.length;
        (ix as f64 * dx - half, iy as f64 * dx - half)
    }

    /// TWA validity: `hbar*gamma_c >= 10 * g_c / dV`, warn below a 20x margin.
    pub fn check_twa_validity(&self, params: &ModelParams) -> Result<()> {
        let lhs = params.hbar * params.gamma_c;
        let rhs = params.g_c / self.cell_volume();
        if rhs == 0.0 {
            return Ok(());
        }
        if lhs < 10.0 * rhs {
            return Err(EngineError::ValidityViolation { lhs, rhs });
        }
        if lhs < 20.0 * rhs {
            log::warn!(
                "TWA validity margin is thin: hbar*gamma_c = {lhs:.3e} < 20x g_c/dV = {:.3e}",
                20.0 * rhs
            );
        }
        Ok(())
    }
}
