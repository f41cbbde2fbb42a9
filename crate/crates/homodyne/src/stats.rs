use crate::error::{HomodyneError, Result};
use crate::stream::SelectedPoint;

/// Windowed antinormal-ordered photon statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowStats {
    /// Mid-time of the window.
    pub t: f64,
    pub mean_n: f64,
    /// `None` when the window's `<n>` estimate is <= 0 (g2 undefined).
    pub g2: Option<f64>,
}

/// Moment estimators on Husimi samples `u = (q^2+p^2)/2`:
/// `<n> = E[u] - 1`, `<n^2> = E[u^2] - 3 <n> - 2`,
/// `g2 = (<n^2> - <n>) / <n>^2`.
pub fn photon_moments(points: &[SelectedPoint]) -> (f64, f64) {
    let n = points.len() as f64;
    let (su, su2) = points.iter().fold((0.0, 0.0), |(a, b), pt| {
        let u = pt.intensity();
        (a + u, b + u * u)
    });
    let eu = su / n;
    let eu2 = su2 / n;
    let mean_n = eu - 1.0;
    let mean_n_sq = eu2 - 3.0 * mean_n - 2.0;
    (mean_n, mean_n_sq)
}

/// Time-resolved photon number and g2 over consecutive windows of
/// `window_size` postselected points. Windows need >= 1000 points.
pub fn photon_stats_timeseries(
    points: &[SelectedPoint],
    window_size: usize,
) -> Result<Vec<WindowStats>> {
    if window_size < 1000 {
        return Err(HomodyneError::InsufficientData {
            what: "points per window",
            needed: 1000,
            got: window_size,
        });
    }
    if points.len() < window_size {
        return Err(HomodyneError::InsufficientData {
            what: "postselected points",
            needed: window_size,
            got: points.len(),
        });
    }
    let mut out = Vec::with_capacity(points.len() / window_size);
    for chunk in points.chunks_exact(window_size) {
        let (mean_n, mean_n_sq) = photon_moments(chunk);
        let t = 0.5 * (chunk[0].t + chunk[chunk.len() - 1].t);
        let g2 = if mean_n > 0.0 {
            Some((mean_n_sq - mean_n) / (mean_n * mean_n))
        } else {
            None
        };
        out.push(WindowStats { t, mean_n, g2 });
    }
    Ok(out)
}
