//! Quantum-coherence toolbox for displaced thermal states.
//!
//! Closed-form Hilbert-Schmidt coherence, phase-space densities, photon
//! statistics, and the brute-force Fock-space route used to cross-check
//! them. All scalar math is generic over [`Float`]; the `*64` aliases pin
//! `f64` for downstream crates.

pub mod density;
pub mod error;
pub mod float;
pub mod measures;
pub mod quad;
pub mod special;
pub mod state;

pub use density::{
    build_displaced_thermal_density_matrix, coherence_from_density_matrix,
    displaced_thermal_tail_bound, displacement_matrix, FockDensityMatrix, DEFICIT_THRESHOLD,
};
pub use error::{CoherenceError, Result};
pub use float::Float;
pub use measures::{
    coherence_closed_form, decompose_photon_moments, g2_displaced_thermal, incoherent_purity,
    linear_coupling_map, pair_conversion_schmidt, phase_averaged_husimi, phase_space_density,
    purity, quadrature_moments, MomentDecomposition, PhaseSpaceKind, QuadratureMoments,
    SchmidtDecomposition,
};
pub use state::{DisplacedThermalState, PhaseSpacePoint};

/// `f64` specializations used throughout the workbench.
pub type DisplacedThermal64 = DisplacedThermalState<f64>;
pub type PhaseSpacePoint64 = PhaseSpacePoint<f64>;
pub type FockDensityMatrix64 = FockDensityMatrix<f64>;
pub type Complex64 = num_complex::Complex<f64>;
