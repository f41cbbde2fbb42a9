use num_complex::Complex;
use twa_engine::TrajectoryEnsemble;

use crate::error::{ObservablesError, Result};
use crate::sum::pairwise_mean;

/// One azimuthally averaged spatial-coherence sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct G1Point {
    pub distance: f64,
    /// `|g1|` magnitude.
    pub g1: f64,
    /// Jackknife standard error.
    pub err: f64,
    /// Cell pairs entering the azimuthal average.
    pub n_pairs: usize,
}

/// Minimum-image distance between two cells on the periodic grid.
fn periodic_distance(grid: &twa_engine::SimulationGrid, a: usize, b: usize) -> f64 {
    let n = grid.n_side as isize;
    let dx_len = grid.dx();
    let (ax, ay) = ((a % grid.n_side) as isize, (a / grid.n_side) as isize);
    let (bx, by) = ((b % grid.n_side) as isize, (b / grid.n_side) as isize);
    let wrap = |d: isize| -> f64 {
        let m = d.rem_euclid(n);
        let m = if m > n / 2 { m - n } else { m };
        m as f64 * dx_len
    };
    let dx = wrap(bx - ax);
    let dy = wrap(by - ay);
    (dx * dx + dy * dy).sqrt()
}

/// Equal-time first-order coherence
/// `g1(r, r') = <psi*(r) psi(r')> / sqrt(<|psi(r)|^2> <|psi(r')|^2>)`,
/// symmetric-ordered inputs corrected to normal order: `1/(2 dV)` subtracted
/// from the diagonal densities (and from the numerator when r = r'); the
/// cross term needs no correction for r != r'. Pairs at each distance are
/// azimuthally averaged around `center`; the magnitude is returned.
pub fn g1_spatial(
    ens: &TrajectoryEnsemble,
    center: (usize, usize),
    distances: &[f64],
) -> Result<Vec<G1Point>> {
    let grid = &ens.grid;
    let half_box = grid.length / 2.0;
    for &d in distances {
        if d > half_box {
            return Err(ObservablesError::DistanceOutOfRange { distance: d, half_box });
        }
    }
    if ens.trajectories.len() < 2 {
        return Err(ObservablesError::InsufficientData {
            what: "trajectories",
            needed: 2,
            got: ens.trajectories.len(),
        });
    }
    let c_idx = center.1 * grid.n_side + center.0;
    if c_idx >= grid.n_cells() {
        return Err(ObservablesError::DimensionMismatch {
            expected: grid.n_cells(),
            got: c_idx,
        });
    }
    let half_quantum = 0.5 / grid.cell_volume();
    let tol = 0.5 * grid.dx();

    // ring membership per distance
    let rings: Vec<Vec<usize>> = distances
        .iter()
        .map(|&d| {
            (0..grid.n_cells())
                .filter(|&i| (periodic_distance(grid, c_idx, i) - d).abs() <= tol)
                .collect()
        })
        .collect();

    let t = ens.trajectories.len();
    // per-trajectory accumulators: numerator (complex), densities
    let mut num: Vec<Vec<Complex<f64>>> = vec![vec![Complex::new(0.0, 0.0); distances.len()]; t];
    let mut dens_c: Vec<f64> = vec![0.0; t];
    let mut dens_r: Vec<Vec<f64>> = vec![vec![0.0; distances.len()]; t];
    for (ti, traj) in ens.trajectories.iter().enumerate() {
        let mut count = 0usize;
        for snap in traj {
            count += 1;
            let psi_c = snap.psi[c_idx];
            dens_c[ti] += psi_c.norm_sqr();
            for (di, ring) in rings.iter().enumerate() {
                for &i in ring {
                    num[ti][di] += psi_c.conj() * snap.psi[i];
                    dens_r[ti][di] += snap.psi[i].norm_sqr();
                }
            }
        }
        let inv = 1.0 / count as f64;
        dens_c[ti] *= inv;
        for di in 0..distances.len() {
            let pairs = rings[di].len().max(1) as f64;
            num[ti][di] *= inv / pairs;
            dens_r[ti][di] *= inv / pairs;
        }
    }

    let g1_from = |keep: &dyn Fn(usize) -> bool, di: usize| -> f64 {
        let mut n_acc = Complex::new(0.0, 0.0);
        let mut dc = Vec::new();
        let mut dr = Vec::new();
        let mut kept = 0usize;
        for ti in 0..t {
            if keep(ti) {
                n_acc += num[ti][di];
                dc.push(dens_c[ti]);
                dr.push(dens_r[ti][di]);
                kept += 1;
            }
        }
        let n_mean = n_acc / kept as f64;
        let d_c = pairwise_mean(&dc) - half_quantum;
        let d_r = pairwise_mean(&dr) - half_quantum;
        // the diagonal pair needs the same subtraction in the numerator
        let n_corr = if distances[di] == 0.0 { n_mean.re - half_quantum } else { n_mean.norm() };
        if d_c <= 0.0 || d_r <= 0.0 {
            return f64::NAN;
        }
        n_corr / (d_c * d_r).sqrt()
    };

    let mut out = Vec::with_capacity(distances.len());
    for (di, &d) in distances.iter().enumerate() {
        let full = g1_from(&|_| true, di);
        let mut jk = Vec::with_capacity(t);
        for skip in 0..t {
            jk.push(g1_from(&|ti| ti != skip, di));
        }
        let jk_mean = pairwise_mean(&jk);
        let factor = (t - 1) as f64 / t as f64;
        let err =
            (factor * jk.iter().map(|v| (v - jk_mean).powi(2)).sum::<f64>()).sqrt();
        out.push(G1Point { distance: d, g1: full, err, n_pairs: rings[di].len() });
    }
    Ok(out)
}
