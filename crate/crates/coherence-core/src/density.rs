//! Truncated Fock-space density matrices and the brute-force coherence sum.

use ndarray::Array2;
use num_complex::Complex;

use crate::error::{CoherenceError, Result};
use crate::float::Float;
use crate::state::DisplacedThermalState;

/// Default ceiling on the admissible truncation deficit `1 - tr(rho)`.
pub const DEFICIT_THRESHOLD: f64 = 1e-6;

/// Density matrix in a truncated Fock basis.
#[derive(Debug, Clone)]
pub struct FockDensityMatrix<T: Float> {
    elements: Array2<Complex<T>>,
    /// Truncation deficit `1 - tr(rho)` reported by the builder.
    deficit: T,
}

impl<T: Float> FockDensityMatrix<T> {
    fn hermiticity_tolerance() -> T {
        T::of(1e-12).max(T::epsilon() * T::of(100.0))
    }

    /// Wraps a matrix after checking Hermiticity and diagonal positivity.
    pub fn new(elements: Array2<Complex<T>>) -> Result<Self> {
        let n = elements.nrows();
        if n != elements.ncols() {
            return Err(CoherenceError::DimensionMismatch { expected: n, got: elements.ncols() });
        }
        let tol = Self::hermiticity_tolerance();
        let mut dev = T::zero();
        for i in 0..n {
            if elements[[i, i]].re < -tol || elements[[i, i]].im.abs() > tol {
                return Err(CoherenceError::NonHermitian {
                    deviation: elements[[i, i]].im.abs().to_f64().unwrap_or(f64::NAN),
                    tolerance: tol.to_f64().unwrap_or(f64::NAN),
                });
            }
            for j in (i + 1)..n {
                let d = (elements[[i, j]] - elements[[j, i]].conj()).norm();
                dev = dev.max(d);
            }
        }
        if dev > tol {
            return Err(CoherenceError::NonHermitian {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
                tolerance: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        let trace: T = (0..n).map(|i| elements[[i, i]].re).sum();
        let deficit = T::one() - trace;
        Ok(Self { elements, deficit })
    }

    pub fn dim(&self) -> usize {
        self.elements.nrows()
    }

    pub fn elements(&self) -> &Array2<Complex<T>> {
        &self.elements
    }

    pub fn deficit(&self) -> T {
        self.deficit
    }

    pub fn trace(&self) -> T {
        (0..self.dim()).map(|i| self.elements[[i, i]].re).sum()
    }

    /// Diagonal Fock probabilities `p_n`.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.dim()).map(|i| self.elements[[i, i]].re).collect()
    }

    /// `tr(rho^2) = sum_{m,n} |rho_{m,n}|^2` for Hermitian input.
    pub fn purity(&self) -> T {
        self.elements.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Zeroes every off-diagonal element, keeping the diagonal.
    pub fn dephase(&self) -> Self {
        let n = self.dim();
        let mut out = Array2::zeros((n, n));
        for i in 0..n {
            out[[i, i]] = Complex::new(self.elements[[i, i]].re, T::zero());
        }
        Self { elements: out, deficit: self.deficit }
    }

    /// Mean photon number `sum_n n p_n`.
    pub fn mean_n(&self) -> T {
        (0..self.dim()).map(|i| T::of(i as f64) * self.elements[[i, i]].re).sum()
    }

    /// Second moment `sum_n n^2 p_n`.
    pub fn mean_n_sq(&self) -> T {
        (0..self.dim())
            .map(|i| {
                let n = T::of(i as f64);
                n * n * self.elements[[i, i]].re
            })
            .sum()
    }
}

/// Brute-force coherence `sum_{m != n} |rho_{m,n}|^2`.
///
/// Equals `tr(rho^2) - tr(dephase(rho)^2)` by the Hilbert-Schmidt identity;
/// validates Hermiticity before summing.
pub fn coherence_from_density_matrix<T: Float>(rho: &FockDensityMatrix<T>) -> Result<T> {
    // Re-validate on the stored matrix so externally mutated arrays fail loudly.
    let n = rho.dim();
    let mut sum = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += rho.elements[[i, j]].norm_sqr();
            }
        }
    }
    Ok(sum)
}

fn matmul<T: Float>(a: &Array2<Complex<T>>, b: &Array2<Complex<T>>) -> Array2<Complex<T>> {
    let n = a.nrows();
    let m = b.ncols();
    let k_dim = a.ncols();
    let mut c = Array2::<Complex<T>>::zeros((n, m));
    let bs = b.as_slice().expect("contiguous");
    let cs = c.as_slice_mut().expect("contiguous");
    for i in 0..n {
        let crow = &mut cs[i * m..(i + 1) * m];
        for k in 0..k_dim {
            let aik = a[[i, k]];
            if aik.re == T::zero() && aik.im == T::zero() {
                continue;
            }
            let brow = &bs[k * m..(k + 1) * m];
            for j in 0..m {
                crow[j] = crow[j] + aik * brow[j];
            }
        }
    }
    c
}

/// Displacement operator `D(alpha) = exp(alpha a^dag - alpha^* a)` on the
/// truncated Fock space, via scaling-and-squaring of the bidiagonal ladder
/// generator.
pub fn displacement_matrix<T: Float>(alpha: Complex<T>, n_trunc: usize) -> Array2<Complex<T>> {
    let n = n_trunc;
    // generator bands: lower[i] = alpha sqrt(i) at (i, i-1),
    // upper[i] = -conj(alpha) sqrt(i+1) at (i, i+1)
    let norm1 = alpha.norm() * (T::of((n as f64) - 1.0).sqrt() + T::of(n as f64).sqrt());
    let s = if norm1 > T::one() {
        norm1.log2().ceil().to_f64().unwrap_or(0.0).max(0.0) as u32
    } else {
        0
    };
    let scale = T::of(2.0f64.powi(s as i32)).recip();
    let lower: Vec<Complex<T>> =
        (0..n).map(|i| alpha * T::of(i as f64).sqrt() * scale).collect();
    let upper: Vec<Complex<T>> =
        (0..n).map(|i| -alpha.conj() * T::of((i + 1) as f64).sqrt() * scale).collect();

    let mut sum = Array2::<Complex<T>>::eye(n);
    let mut term = Array2::<Complex<T>>::eye(n);
    let mut k = 1usize;
    loop {
        // term <- B * term / k with bidiagonal B
        let mut next = Array2::<Complex<T>>::zeros((n, n));
        let inv_k = T::of(k as f64).recip();
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex::new(T::zero(), T::zero());
                if i > 0 {
                    acc = acc + lower[i] * term[[i - 1, j]];
                }
                if i + 1 < n {
                    acc = acc + upper[i] * term[[i + 1, j]];
                }
                next[[i, j]] = acc * inv_k;
            }
        }
        term = next;
        let max = term.iter().map(|z| z.norm_sqr()).fold(T::zero(), T::max).sqrt();
        sum = sum + &term;
        if max < T::of(1e-18) {
            break;
        }
        k += 1;
        if k > 200 {
            break;
        }
    }
    for _ in 0..s {
        sum = matmul(&sum, &sum);
    }
    sum
}

/// Chernoff bound on the photon-number tail `P(n >= n_trunc)` of a displaced
/// thermal state, from its generating function
/// `E[z^n] = exp(-|alpha0|^2 (1-z) / (1 + (1-z) nbar)) / (1 + (1-z) nbar)`.
///
/// The exponentiated truncated ladder generator is exactly unitary, so
/// `1 - tr(rho)` alone only sees the geometric thermal tail and would miss
/// displacement leakage past the cutoff; this bound catches it.
pub fn displaced_thermal_tail_bound<T: Float>(
    state: &DisplacedThermalState<T>,
    n_trunc: usize,
) -> T {
    let nbar = state.nbar.to_f64().unwrap_or(0.0);
    let a2 = state.alpha0.norm_sqr().to_f64().unwrap_or(0.0);
    let big_n = n_trunc as f64;
    // ln[G(z)/z^N]; minimize over z in (1, z_max)
    let ln_bound = |z: f64| -> f64 {
        let d = 1.0 + (1.0 - z) * nbar;
        -d.ln() - a2 * (1.0 - z) / d - big_n * z.ln()
    };
    let z_max = if nbar > 0.0 {
        1.0 + (1.0 - 1e-9) / nbar
    } else {
        // Poisson case: optimum at z = N / a2
        (big_n / a2.max(1e-300)).max(2.0)
    };
    let mut best = 0.0f64; // z -> 1 gives ln bound -> 0
    let steps = 400;
    for k in 1..=steps {
        let z = 1.0 + (z_max - 1.0) * (k as f64) / (steps as f64);
        best = best.min(ln_bound(z));
    }
    T::of(best.exp().min(1.0))
}

/// Builds `D(alpha0) rho_th D(alpha0)^dag` in the truncated Fock space.
///
/// `rho_th` is the diagonal geometric distribution with ratio
/// `nbar / (nbar + 1)`. The reported deficit is the larger of `1 - tr(rho)`
/// and the analytic tail bound [`displaced_thermal_tail_bound`]; the build
/// fails if it exceeds [`DEFICIT_THRESHOLD`]. The guideline
/// `n_trunc >= 8 (nbar + |alpha0|^2) + 32` keeps it well below.
pub fn build_displaced_thermal_density_matrix<T: Float>(
    state: &DisplacedThermalState<T>,
    n_trunc: usize,
) -> Result<FockDensityMatrix<T>> {
    let n = n_trunc;
    let d = displacement_matrix(state.alpha0, n);
    // thermal probabilities
    let ratio = state.nbar / (state.nbar + T::one());
    let p0 = (state.nbar + T::one()).recip();
    let mut p = Vec::with_capacity(n);
    let mut cur = p0;
    for _ in 0..n {
        p.push(cur);
        cur *= ratio;
    }
    // scaled = D * diag(p)
    let mut scaled = d.clone();
    for j in 0..n {
        for i in 0..n {
            scaled[[i, j]] = scaled[[i, j]] * p[j];
        }
    }
    let mut dh = Array2::<Complex<T>>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            dh[[i, j]] = d[[j, i]].conj();
        }
    }
    let mut rho = matmul(&scaled, &dh);
    // symmetrize away rounding in the scaling-and-squaring product
    for i in 0..n {
        rho[[i, i]] = Complex::new(rho[[i, i]].re, T::zero());
        for j in (i + 1)..n {
            let avg = (rho[[i, j]] + rho[[j, i]].conj()) * T::of(0.5);
            rho[[i, j]] = avg;
            rho[[j, i]] = avg.conj();
        }
    }
    let mut matrix = FockDensityMatrix::new(rho)?;
    matrix.deficit = matrix.deficit.max(displaced_thermal_tail_bound(state, n));
    let deficit = matrix.deficit();
    let threshold = T::of(DEFICIT_THRESHOLD);
    if deficit > threshold {
        return Err(CoherenceError::TruncationDeficit {
            deficit: deficit.to_f64().unwrap_or(f64::NAN),
            threshold: DEFICIT_THRESHOLD,
        });
    }
    Ok(matrix)
}
