use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::grid::SimulationGrid;

pub type C64 = Complex<f64>;

/// Instantaneous field configuration of one trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    /// Condensate field per cell, row-major (amplitude in 1/um).
    pub psi: Vec<C64>,
    /// Reservoir density per cell (1/um^2), clipped to stay >= 0.
    pub n_res: Vec<f64>,
    /// Simulation time (ps).
    pub time: f64,
    /// Number of reservoir cells clipped from negative to zero so far.
    pub clipped: u64,
}

impl FieldState {
    /// Vacuum Wigner start: per-cell complex Gaussian with total variance
    /// `1/(2 dV)` split equally between real and imaginary parts; empty
    /// reservoir.
    pub fn vacuum(grid: &SimulationGrid, rng: &mut impl Rng) -> Self {
        let sigma = (0.25 / grid.cell_volume()).sqrt();
        let psi = (0..grid.n_cells())
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex::new(re * sigma, im * sigma)
            })
            .collect();
        Self { psi, n_res: vec![0.0; grid.n_cells()], time: 0.0, clipped: 0 }
    }

    pub fn is_finite(&self) -> bool {
        self.psi.iter().all(|z| z.re.is_finite() && z.im.is_finite())
            && self.n_res.iter().all(|v| v.is_finite())
    }

    /// Mean `|psi|^2` over cells (1/um^2).
    pub fn mean_density(&self) -> f64 {
        self.psi.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.psi.len() as f64
    }
}
