use crate::error::{HomodyneError, Result};
use crate::stream::{QuadratureStream, Record};

/// Empirical lag-1 autocorrelation of a series.
pub fn lag1_autocorrelation(xs: &[f64]) -> f64 {
    let n = xs.len();
    if n < 2 {
        return 0.0;
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    let var: f64 = xs.iter().map(|x| (x - mean).powi(2)).sum();
    if var == 0.0 {
        return 0.0;
    }
    let cov: f64 = xs.windows(2).map(|w| (w[0] - mean) * (w[1] - mean)).sum();
    cov / var
}

fn whiten(xs: &[f64], c: f64) -> Vec<f64> {
    let norm = (1.0 - c * c).sqrt();
    let mut out = Vec::with_capacity(xs.len());
    out.push(xs[0]);
    for i in 1..xs.len() {
        out.push((xs[i] - c * xs[i - 1]) / norm);
    }
    out
}

/// Normalizes both channels by `lo_scale` and removes spurious correlations
/// between consecutive measurements by lag-1 linear whitening:
/// `x'_i = (x_i - c x_{i-1}) / sqrt(1 - c^2)` with `c` the empirical lag-1
/// autocorrelation of each channel.
pub fn preprocess(stream: &QuadratureStream) -> Result<QuadratureStream> {
    if stream.len() < 1000 {
        return Err(HomodyneError::TooFewRecords { needed: 1000, got: stream.len() });
    }
    let x1: Vec<f64> = stream.records.iter().map(|r| r.x1 * stream.lo_scale).collect();
    let x2: Vec<f64> = stream.records.iter().map(|r| r.x2 * stream.lo_scale).collect();
    let c1 = lag1_autocorrelation(&x1);
    let c2 = lag1_autocorrelation(&x2);
    for c in [c1, c2] {
        if c.abs() > 0.9 {
            return Err(HomodyneError::PathologicalCorrelation(c));
        }
    }
    let w1 = whiten(&x1, c1);
    let w2 = whiten(&x2, c2);
    let records: Vec<Record> = stream
        .records
        .iter()
        .zip(w1.iter().zip(&w2))
        .map(|(r, (&x1, &x2))| Record { t: r.t, x1, x2 })
        .collect();
    QuadratureStream::new(records, 1.0)
}
