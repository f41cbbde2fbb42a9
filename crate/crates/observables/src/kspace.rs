use num_complex::Complex;
use twa_engine::{C64, Fft2d, FieldState, SimulationGrid};

use crate::error::{ObservablesError, Result};

/// Reusable projector onto grid momentum modes,
/// `beta_k = V^{-1/2} dV sum_r e^{-ikr} psi(r)`.
pub struct KSpaceProjector {
    grid: SimulationGrid,
    fft: Fft2d,
}

impl KSpaceProjector {
    pub fn new(grid: SimulationGrid) -> Self {
        Self { grid, fft: Fft2d::new(grid.n_side) }
    }

    /// Mode amplitudes in FFT (row-major, wrap-around) order.
    /// Parseval: `sum_k |beta_k|^2 = dV sum_r |psi(r)|^2`.
    pub fn project(&mut self, psi: &[C64]) -> Result<Vec<C64>> {
        if psi.len() != self.grid.n_cells() {
            return Err(ObservablesError::DimensionMismatch {
                expected: self.grid.n_cells(),
                got: psi.len(),
            });
        }
        let mut buf = psi.to_vec();
        self.fft.forward(&mut buf);
        let norm = self.grid.cell_volume() / self.grid.volume().sqrt();
        for z in buf.iter_mut() {
            *z *= norm;
        }
        Ok(buf)
    }
}

/// One-shot convenience wrapper around [`KSpaceProjector`].
pub fn project_to_kspace(snapshot: &FieldState, grid: &SimulationGrid) -> Result<Vec<C64>> {
    KSpaceProjector::new(*grid).project(&snapshot.psi)
}

/// Square window of modes centered on k = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KSpaceWindow {
    /// Odd number of modes per side.
    pub side: usize,
}

impl KSpaceWindow {
    pub fn new(side: usize) -> Result<Self> {
        if side == 0 || side % 2 == 0 {
            return Err(ObservablesError::InvalidWindow(format!(
                "window side must be odd and positive, got {side}"
            )));
        }
        Ok(Self { side })
    }

    /// `N_p = side^2`.
    pub fn n_modes(&self) -> usize {
        self.side * self.side
    }

    /// Flat FFT-order indices of the windowed modes.
    pub fn mode_indices(&self, grid: &SimulationGrid) -> Result<Vec<usize>> {
        let n = grid.n_side;
        if self.side > n {
            return Err(ObservablesError::InvalidWindow(format!(
                "window side {} exceeds grid side {n}",
                self.side
            )));
        }
        let h = (self.side / 2) as isize;
        let wrap = |i: isize| -> usize { i.rem_euclid(n as isize) as usize };
        let mut out = Vec::with_capacity(self.n_modes());
        for dy in -h..=h {
            for dx in -h..=h {
                out.push(wrap(dy) * n + wrap(dx));
            }
        }
        Ok(out)
    }
}

/// Symmetric-ordered window sums `s = sum_j |beta_j|^2` and `s^2` for one
/// snapshot.
pub fn window_sums(beta: &[C64], indices: &[usize]) -> (f64, f64) {
    let s: f64 = indices.iter().map(|&i| beta[i].norm_sqr()).sum();
    (s, s * s)
}

pub type ModeAmplitude = Complex<f64>;
