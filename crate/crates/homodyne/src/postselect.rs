use crate::error::{HomodyneError, Result};
use crate::stream::{QuadratureStream, SelectedPoint};

/// Orthogonality-postselection settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PostselectOptions {
    /// Fraction of the smoothed-product peak-to-peak treated as "zero".
    pub margin: f64,
    /// Moving-average window (records) applied to the product series before
    /// thresholding. `1` applies the per-record rule literally; the default
    /// smooths over the fast shot-noise fluctuations so the selection tracks
    /// the swept relative phase.
    pub window: usize,
    /// Scale mapping kept channel pairs into Husimi samples,
    /// `(q, p) = (scale * x1, scale * x2)`. The eight-port 3 dB split fixes
    /// this to sqrt(2) for channels normalized to vacuum variance 1/2.
    pub scale: f64,
}

impl Default for PostselectOptions {
    fn default() -> Self {
        Self { margin: 0.025, window: 1024, scale: std::f64::consts::SQRT_2 }
    }
}

/// Result of postselection: kept Husimi samples and the retention fraction.
#[derive(Debug, Clone, PartialEq)]
pub struct Postselection {
    pub points: Vec<SelectedPoint>,
    pub retention: f64,
}

/// Centered moving average with edge clamping.
fn smooth(xs: &[f64], window: usize) -> Vec<f64> {
    if window <= 1 {
        return xs.to_vec();
    }
    let n = xs.len();
    let half = window / 2;
    // prefix sums for O(1) window averages
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0);
    for &x in xs {
        prefix.push(prefix.last().unwrap() + x);
    }
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(n);
            (prefix[hi] - prefix[lo]) / (hi - lo) as f64
        })
        .collect()
}

/// Keeps records where the (smoothed) channel product is within
/// `margin * peak_to_peak` of zero, i.e. where the two channels measure
/// orthogonal quadratures, and rescales kept pairs into Husimi samples.
pub fn postselect_orthogonal(
    stream: &QuadratureStream,
    options: &PostselectOptions,
) -> Result<Postselection> {
    if stream.is_empty() {
        return Err(HomodyneError::TooFewRecords { needed: 1, got: 0 });
    }
    if !(options.margin >= 0.0) {
        return Err(HomodyneError::InvalidArgument(format!(
            "margin must be >= 0, got {}",
            options.margin
        )));
    }
    let products: Vec<f64> = stream.records.iter().map(|r| r.x1 * r.x2).collect();
    let smoothed = smooth(&products, options.window);
    let (min, max) = smoothed
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let threshold = options.margin * (max - min);
    let points: Vec<SelectedPoint> = stream
        .records
        .iter()
        .zip(&smoothed)
        .filter(|(_, &s)| s.abs() <= threshold)
        .map(|(r, _)| SelectedPoint {
            t: r.t,
            q: options.scale * r.x1,
            p: options.scale * r.x2,
        })
        .collect();
    let retention = points.len() as f64 / stream.len() as f64;
    if retention < 0.001 {
        return Err(HomodyneError::InsufficientPostselection {
            retained: points.len(),
            total: stream.len(),
        });
    }
    Ok(Postselection { points, retention })
}
