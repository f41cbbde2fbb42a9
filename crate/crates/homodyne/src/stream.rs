use crate::error::{HomodyneError, Result};

/// One dual-channel quadrature sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Record {
    /// Timestamp (ps or sample index).
    pub t: f64,
    pub x1: f64,
    pub x2: f64,
}

/// Raw or preprocessed eight-port quadrature data. After preprocessing the
/// channels are normalized so a vacuum input has variance 1/2.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureStream {
    pub records: Vec<Record>,
    /// Multiplicative normalization to shot-noise units, applied by
    /// `preprocess`.
    pub lo_scale: f64,
}

impl QuadratureStream {
    pub fn new(records: Vec<Record>, lo_scale: f64) -> Result<Self> {
        for (i, w) in records.windows(2).enumerate() {
            if w[1].t < w[0].t {
                return Err(HomodyneError::NonMonotoneTime(i + 1));
            }
        }
        if !(lo_scale > 0.0) || !lo_scale.is_finite() {
            return Err(HomodyneError::InvalidArgument(format!(
                "lo_scale must be positive, got {lo_scale}"
            )));
        }
        Ok(Self { records, lo_scale })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Per-channel sample variances (about the mean).
    pub fn channel_variances(&self) -> (f64, f64) {
        let n = self.records.len() as f64;
        let (m1, m2) = self
            .records
            .iter()
            .fold((0.0, 0.0), |(a, b), r| (a + r.x1, b + r.x2));
        let (m1, m2) = (m1 / n, m2 / n);
        let (v1, v2) = self.records.iter().fold((0.0, 0.0), |(a, b), r| {
            (a + (r.x1 - m1).powi(2), b + (r.x2 - m2).powi(2))
        });
        (v1 / n, v2 / n)
    }
}

/// A postselected phase-space sample in Husimi scaling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectedPoint {
    pub t: f64,
    pub q: f64,
    pub p: f64,
}

impl SelectedPoint {
    /// `|alpha|^2 = (q^2 + p^2)/2`.
    pub fn intensity(&self) -> f64 {
        0.5 * (self.q * self.q + self.p * self.p)
    }
}
