use crate::error::{HomodyneError, Result};
use crate::stats::WindowStats;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    High,
    Low,
}

/// A maximal run of equal labels: `(label, start index, length)`.
pub type Run = (Label, usize, usize);

/// Two-state segmentation of a windowed photon-number series.
#[derive(Debug, Clone, PartialEq)]
pub struct BistableSegmentation {
    /// `(max + min) / 2` of the series, exactly.
    pub threshold_n: f64,
    pub labels: Vec<Label>,
    pub runs: Vec<Run>,
}

impl BistableSegmentation {
    /// Window indices of `target` runs with the run-boundary windows
    /// dropped: a window spanning a switching event mixes both states and
    /// would contaminate the per-population fit. Boundary windows at the
    /// very start and end of the series are kept — no switch occurs there.
    pub fn interior_windows(&self, target: Label) -> Vec<usize> {
        let n = self.labels.len();
        let mut keep = Vec::new();
        for &(label, start, len) in &self.runs {
            if label != target {
                continue;
            }
            let lo = if start == 0 { start } else { start + 1 };
            let hi = if start + len == n { start + len } else { start + len - 1 };
            keep.extend(lo..hi);
        }
        keep
    }
}

/// Labels each window high/low against the midpoint of the series range;
/// exact ties go to `High`.
pub fn segment_bistable(series: &[WindowStats]) -> Result<BistableSegmentation> {
    if series.len() < 2 {
        return Err(HomodyneError::InsufficientData {
            what: "windows",
            needed: 2,
            got: series.len(),
        });
    }
    let (min, max) = series
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), w| {
            (lo.min(w.mean_n), hi.max(w.mean_n))
        });
    let threshold_n = (max + min) / 2.0;
    let labels: Vec<Label> = series
        .iter()
        .map(|w| if w.mean_n >= threshold_n { Label::High } else { Label::Low })
        .collect();
    let mut runs: Vec<Run> = Vec::new();
    for (i, &l) in labels.iter().enumerate() {
        match runs.last_mut() {
            Some((rl, _, len)) if *rl == l => *len += 1,
            _ => runs.push((l, i, 1)),
        }
    }
    Ok(BistableSegmentation { threshold_n, labels, runs })
}
