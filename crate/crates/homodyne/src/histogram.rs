use crate::error::{HomodyneError, Result};
use crate::stream::SelectedPoint;

/// Uniformly binned (q, p) occurrence histogram with binomial per-bin errors.
///
/// Bins store the occurrence probability `p = count / nu`; densities
/// `Q = p / bin_area` are derived on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct HusimiHistogram {
    pub q_edges: Vec<f64>,
    pub p_edges: Vec<f64>,
    /// Row-major counts: `counts[ip * n_q + iq]`.
    pub counts: Vec<u64>,
    /// In-range points, `nu = sum(counts)`.
    pub total: u64,
    /// Points outside the extent.
    pub overflow: u64,
}

impl HusimiHistogram {
    pub fn n_q(&self) -> usize {
        self.q_edges.len() - 1
    }

    pub fn n_p(&self) -> usize {
        self.p_edges.len() - 1
    }

    pub fn bin_area(&self) -> f64 {
        (self.q_edges[1] - self.q_edges[0]) * (self.p_edges[1] - self.p_edges[0])
    }

    pub fn bin_center(&self, iq: usize, ip: usize) -> (f64, f64) {
        (
            0.5 * (self.q_edges[iq] + self.q_edges[iq + 1]),
            0.5 * (self.p_edges[ip] + self.p_edges[ip + 1]),
        )
    }

    /// Occurrence probability of bin `(iq, ip)`.
    pub fn prob(&self, iq: usize, ip: usize) -> f64 {
        self.counts[ip * self.n_q() + iq] as f64 / self.total as f64
    }

    /// Binomial standard error `sqrt(p (1-p) / nu)` of the bin probability.
    pub fn sigma_prob(&self, iq: usize, ip: usize) -> f64 {
        let p = self.prob(iq, ip);
        (p * (1.0 - p) / self.total as f64).sqrt()
    }

    /// Estimated Husimi density at the bin center.
    pub fn density(&self, iq: usize, ip: usize) -> f64 {
        self.prob(iq, ip) / self.bin_area()
    }

    pub fn sigma_density(&self, iq: usize, ip: usize) -> f64 {
        self.sigma_prob(iq, ip) / self.bin_area()
    }

    pub fn occupied_bins(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }
}

/// Half side length chosen from the data: 4x the circular standard scale,
/// estimated robustly from the 99.9% radius quantile, rounded up to a whole
/// number of bins.
fn auto_extent(points: &[SelectedPoint], bin_width: f64) -> f64 {
    let mut radii: Vec<f64> = points.iter().map(|pt| pt.q.hypot(pt.p)).collect();
    radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let q999 = radii[((radii.len() - 1) as f64 * 0.999) as usize];
    let half = (1.25 * q999).max(4.0 * bin_width);
    (half / bin_width).ceil() * bin_width
}

/// Bins postselected samples on a symmetric square grid. `extent` is the
/// half side length; if `None` it is auto-sized from the data quantiles.
/// More than 1% of points outside the extent is an error.
pub fn build_husimi_histogram(
    points: &[SelectedPoint],
    bin_width: f64,
    extent: Option<f64>,
) -> Result<HusimiHistogram> {
    if points.is_empty() {
        return Err(HomodyneError::InsufficientData { what: "points", needed: 1, got: 0 });
    }
    if !(bin_width > 0.0) || !bin_width.is_finite() {
        return Err(HomodyneError::InvalidArgument(format!(
            "bin_width must be positive, got {bin_width}"
        )));
    }
    if points.len() < 10_000 {
        log::warn!("husimi histogram built from only {} points (< 1e4)", points.len());
    }
    let half = match extent {
        Some(h) if h > 0.0 && h.is_finite() => (h / bin_width).ceil() * bin_width,
        Some(h) => {
            return Err(HomodyneError::InvalidArgument(format!(
                "extent must be positive, got {h}"
            )))
        }
        None => auto_extent(points, bin_width),
    };
    let n_bins = (2.0 * half / bin_width).round() as usize;
    let edges: Vec<f64> = (0..=n_bins).map(|i| -half + i as f64 * bin_width).collect();
    let mut counts = vec![0u64; n_bins * n_bins];
    let mut total = 0u64;
    let mut overflow = 0u64;
    for pt in points {
        let iq = ((pt.q + half) / bin_width).floor();
        let ip = ((pt.p + half) / bin_width).floor();
        if iq >= 0.0 && ip >= 0.0 && (iq as usize) < n_bins && (ip as usize) < n_bins {
            counts[ip as usize * n_bins + iq as usize] += 1;
            total += 1;
        } else {
            overflow += 1;
        }
    }
    let fraction = 100.0 * overflow as f64 / points.len() as f64;
    if fraction > 1.0 {
        return Err(HomodyneError::ExcessiveOverflow { fraction });
    }
    Ok(HusimiHistogram { q_edges: edges.clone(), p_edges: edges, counts, total, overflow })
}

/// CSV export: `q,p,Q,sigma_Q` per bin center.
pub fn write_histogram_csv(w: &mut impl std::io::Write, hist: &HusimiHistogram) -> Result<()> {
    writeln!(w, "q,p,Q,sigma_Q")?;
    for ip in 0..hist.n_p() {
        for iq in 0..hist.n_q() {
            let (q, p) = hist.bin_center(iq, ip);
            writeln!(w, "{q},{p},{},{}", hist.density(iq, ip), hist.sigma_density(iq, ip))?;
        }
    }
    Ok(())
}
