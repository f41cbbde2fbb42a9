use crate::error::{EngineError, Result};
use crate::grid::SimulationGrid;

/// Continuous-wave super-Gaussian pump `P(r) = p0 exp(-(x^2+y^2)^2 / w^4)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpProfile {
    /// Peak intensity (1/(ps*um^2)).
    pub p0: f64,
    /// Spot width w (um).
    pub width: f64,
}

impl PumpProfile {
    pub fn new(p0: f64, width: f64) -> Result<Self> {
        if !(p0 >= 0.0) || !p0.is_finite() {
            return Err(EngineError::InvalidParams(format!("pump p0 must be >= 0, got {p0}")));
        }
        if !(width > 0.0) || !width.is_finite() {
            return Err(EngineError::InvalidParams(format!(
                "pump width must be positive, got {width}"
            )));
        }
        Ok(Self { p0, width })
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        let r2 = x * x + y * y;
        let w4 = self.width.powi(4);
        self.p0 * (-r2 * r2 / w4).exp()
    }

    /// Pump sampled on every grid cell.
    pub fn sample(&self, grid: &SimulationGrid) -> Vec<f64> {
        (0..grid.n_cells())
            .map(|i| {
                let (x, y) = grid.coordinates(i);
                self.value(x, y)
            })
            .collect()
    }
}
