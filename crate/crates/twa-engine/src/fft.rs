use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::state::C64;

/// Reusable 2D FFT on a square row-major buffer (rows, then columns via
/// transpose). Inverse includes the `1/n^2` normalization.
pub struct Fft2d {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    scratch: Vec<C64>,
}

impl Fft2d {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let scratch_len = fwd.get_inplace_scratch_len().max(inv.get_inplace_scratch_len());
        Self { n, fwd, inv, scratch: vec![C64::new(0.0, 0.0); scratch_len] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn transpose(&self, buf: &mut [C64]) {
        let n = self.n;
        for i in 0..n {
            for j in (i + 1)..n {
                buf.swap(i * n + j, j * n + i);
            }
        }
    }

    fn rows(&mut self, buf: &mut [C64], forward: bool) {
        let plan = if forward { &self.fwd } else { &self.inv };
        for row in buf.chunks_exact_mut(self.n) {
            plan.process_with_scratch(row, &mut self.scratch);
        }
    }

    pub fn forward(&mut self, buf: &mut [C64]) {
        debug_assert_eq!(buf.len(), self.n * self.n);
        self.rows(buf, true);
        self.transpose(buf);
        self.rows(buf, true);
        self.transpose(buf);
    }

    pub fn inverse(&mut self, buf: &mut [C64]) {
        debug_assert_eq!(buf.len(), self.n * self.n);
        self.rows(buf, false);
        self.transpose(buf);
        self.rows(buf, false);
        self.transpose(buf);
        let scale = 1.0 / (self.n * self.n) as f64;
        for z in buf.iter_mut() {
            *z *= scale;
        }
    }
}
