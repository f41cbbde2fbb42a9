use twa_engine::TrajectoryEnsemble;

use crate::error::{ObservablesError, Result};
use crate::kspace::{window_sums, KSpaceProjector, KSpaceWindow};
use crate::moments::window_moments_from_sums;
use crate::sum::pairwise_mean;

/// Per-mode condensate number statistics with jackknife errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CondensateStats {
    /// `<n_c> = <N>/N_p`, normally ordered.
    pub mean_n_c: f64,
    /// `<(Delta N)^2>/N_p` (division by N_p, not N_p^2).
    pub var_n_c: f64,
    pub err_mean: f64,
    pub err_var: f64,
    /// Trajectories entering the estimate.
    pub n_trajectories: usize,
    /// Snapshots per trajectory.
    pub n_snapshots: usize,
}

/// Steady-state window sums per trajectory (snapshot-averaged).
fn trajectory_sums(
    ens: &TrajectoryEnsemble,
    window: &KSpaceWindow,
) -> Result<(Vec<f64>, Vec<f64>, usize)> {
    if ens.trajectories.len() < 2 {
        return Err(ObservablesError::InsufficientData {
            what: "trajectories",
            needed: 2,
            got: ens.trajectories.len(),
        });
    }
    let n_snap = ens.trajectories[0].len();
    if n_snap < 8 {
        return Err(ObservablesError::InsufficientData {
            what: "post-burn-in snapshots",
            needed: 8,
            got: n_snap,
        });
    }
    let indices = window.mode_indices(&ens.grid)?;
    let mut projector = KSpaceProjector::new(ens.grid);
    let mut s_per_traj = Vec::with_capacity(ens.trajectories.len());
    let mut s2_per_traj = Vec::with_capacity(ens.trajectories.len());
    for traj in &ens.trajectories {
        let mut s_vals = Vec::with_capacity(traj.len());
        let mut s2_vals = Vec::with_capacity(traj.len());
        for snap in traj {
            let beta = projector.project(&snap.psi)?;
            let (s, s2) = window_sums(&beta, &indices);
            s_vals.push(s);
            s2_vals.push(s2);
        }
        s_per_traj.push(pairwise_mean(&s_vals));
        s2_per_traj.push(pairwise_mean(&s2_vals));
    }
    Ok((s_per_traj, s2_per_traj, n_snap))
}

fn stats_from_sums(mean_s: f64, mean_s2: f64, n_modes: usize) -> (f64, f64) {
    let m = window_moments_from_sums(mean_s, mean_s2, n_modes);
    let np = n_modes as f64;
    (m.mean_n / np, m.var_n / np)
}

/// Ensemble estimate of the windowed condensate occupation statistics.
/// Errors are leave-one-trajectory-out jackknife standard errors.
pub fn condensate_number_stats(
    ens: &TrajectoryEnsemble,
    window: &KSpaceWindow,
) -> Result<CondensateStats> {
    let (s_t, s2_t, n_snap) = trajectory_sums(ens, window)?;
    let t = s_t.len();
    let n_modes = window.n_modes();
    let mean_s = pairwise_mean(&s_t);
    let mean_s2 = pairwise_mean(&s2_t);
    let (mean_n_c, var_n_c) = stats_from_sums(mean_s, mean_s2, n_modes);

    // jackknife over trajectories
    let sum_s: f64 = mean_s * t as f64;
    let sum_s2: f64 = mean_s2 * t as f64;
    let mut jk = Vec::with_capacity(t);
    for i in 0..t {
        let ms = (sum_s - s_t[i]) / (t - 1) as f64;
        let ms2 = (sum_s2 - s2_t[i]) / (t - 1) as f64;
        jk.push(stats_from_sums(ms, ms2, n_modes));
    }
    let jk_mean_m = pairwise_mean(&jk.iter().map(|x| x.0).collect::<Vec<_>>());
    let jk_mean_v = pairwise_mean(&jk.iter().map(|x| x.1).collect::<Vec<_>>());
    let factor = (t - 1) as f64 / t as f64;
    let err_mean = (factor
        * jk.iter().map(|x| (x.0 - jk_mean_m).powi(2)).sum::<f64>())
    .sqrt();
    let err_var = (factor
        * jk.iter().map(|x| (x.1 - jk_mean_v).powi(2)).sum::<f64>())
    .sqrt();

    Ok(CondensateStats {
        mean_n_c,
        var_n_c,
        err_mean,
        err_var,
        n_trajectories: t,
        n_snapshots: n_snap,
    })
}
