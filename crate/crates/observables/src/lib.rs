//! Ensemble estimators over stochastic field trajectories: momentum-mode
//! projection, symmetric-to-normal ordering conversion, condensate number
//! statistics, spatial first-order coherence, and the per-pump coherence
//! report that chains into the displaced-thermal analysis.

pub mod csv;
pub mod error;
pub mod g1;
pub mod kspace;
pub mod moments;
pub mod report;
pub mod stats;
pub mod sum;

pub use csv::{write_g1_csv, write_report_csv, G1_HEADER, REPORT_HEADER};
pub use error::{ObservablesError, Result};
pub use g1::{g1_spatial, G1Point};
pub use kspace::{project_to_kspace, window_sums, KSpaceProjector, KSpaceWindow};
pub use moments::{wigner_to_normal_moments, window_moments_from_sums, NumberMoments, WignerMoments};
pub use report::{coherence_report, report_from_stats, CoherenceReport};
pub use stats::{condensate_number_stats, CondensateStats};
pub use sum::{pairwise_mean, pairwise_sum};
