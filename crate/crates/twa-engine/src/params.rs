use crate::error::{EngineError, Result};

/// Reduced Planck constant in meV*ps.
pub const HBAR: f64 = 0.6582119569;

/// `hbar^2 / (2 m_eff)` for an effective mass of 1e-4 electron masses,
/// in meV*um^2, from (hbar*c)^2 / (2 m_eff c^2) with c in um/ps.
pub const KINETIC_COEFF_DEFAULT: f64 = {
    let hbar_c = HBAR * 299.792458; // meV*um
    let mc2 = 1.0e-4 * 5.1099895e8; // meV
    hbar_c * hbar_c / (2.0 * mc2)
};

/// Physical constants of the open-dissipative condensate model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// `hbar^2/(2 m_eff)` (meV*um^2).
    pub kinetic_coeff: f64,
    /// Condensate decay rate (1/ps).
    pub gamma_c: f64,
    /// Reservoir decay rate (1/ps).
    pub gamma_r: f64,
    /// Condensation (stimulated scattering) rate R (um^2/ps).
    pub condensation_rate: f64,
    /// Condensate self-interaction (meV*um^2).
    pub g_c: f64,
    /// Condensate-reservoir interaction (meV*um^2).
    pub g_r: f64,
    /// hbar (meV*ps); kept as a field so units stay explicit.
    pub hbar: f64,
    /// Multiple of `1/dV` subtracted in the renormalized density
    /// `|psi|^2 - renorm_factor/dV`. The equations of motion use 1; an
    /// alternative half-quantum convention (0.5) circulates, so the constant
    /// is exposed.
    pub renorm_factor: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            kinetic_coeff: KINETIC_COEFF_DEFAULT,
            gamma_c: 0.2,
            gamma_r: 0.3,
            condensation_rate: 0.015,
            g_c: 0.006,
            g_r: 0.012,
            hbar: HBAR,
            renorm_factor: 1.0,
        }
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("kinetic_coeff", self.kinetic_coeff),
            ("gamma_c", self.gamma_c),
            ("gamma_r", self.gamma_r),
            ("condensation_rate", self.condensation_rate),
            ("g_c", self.g_c),
            ("g_r", self.g_r),
            ("hbar", self.hbar),
        ];
        for (name, v) in fields {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(EngineError::InvalidParams(format!(
                    "{name} must be finite and >= 0, got {v}"
                )));
            }
        }
        if self.hbar == 0.0 {
            return Err(EngineError::InvalidParams("hbar must be positive".into()));
        }
        if !self.renorm_factor.is_finite() {
            return Err(EngineError::InvalidParams("renorm_factor must be finite".into()));
        }
        Ok(())
    }

    /// Homogeneous condensation threshold `P_thr = gamma_c gamma_r / R`.
    pub fn threshold_power(&self) -> Result<f64> {
        if self.condensation_rate <= 0.0 {
            return Err(EngineError::ZeroCondensationRate);
        }
        Ok(self.gamma_c * self.gamma_r / self.condensation_rate)
    }
}
