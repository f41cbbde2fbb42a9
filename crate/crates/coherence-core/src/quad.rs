//! Gauss-Legendre quadrature for phase-space integrals.

use crate::float::Float;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`,
/// computed by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre<T: Float>(n: usize) -> (Vec<T>, Vec<T>) {
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = T::of(n as f64);
    for i in 0..n.div_ceil(2) {
        // Chebyshev-based initial guess
        let mut x = (T::PI() * (T::of(i as f64) + T::of(0.75)) / (nf + T::of(0.5))).cos();
        let mut dp = T::zero();
        for _ in 0..100 {
            // evaluate P_n and P_n' at x
            let mut p0 = T::one();
            let mut p1 = x;
            for k in 2..=n {
                let kf = T::of(k as f64);
                let p2 = ((T::of(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - T::one());
            let dx = p1 / dp;
            x = x - dx;
            if dx.abs() < T::epsilon() * T::of(4.0) {
                break;
            }
        }
        let w = T::of(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Tensor-product quadrature of `f(q_re, q_im)` over the square
/// `[center_re - half, center_re + half] x [center_im - half, center_im + half]`
/// in the alpha plane, with `n` nodes per axis.
pub fn integrate_alpha_box<T: Float>(
    n: usize,
    center: (T, T),
    half: T,
    mut f: impl FnMut(T, T) -> T,
) -> T {
    let (nodes, weights) = gauss_legendre::<T>(n);
    let mut total = T::zero();
    for (xi, wi) in nodes.iter().zip(&weights) {
        let re = center.0 + *xi * half;
        let mut row = T::zero();
        for (yj, wj) in nodes.iter().zip(&weights) {
            let im = center.1 + *yj * half;
            row += *wj * f(re, im);
        }
        total += *wi * row;
    }
    total * half * half
}

/// Radial quadrature of `f(r)` on `[0, r_max]` with `n` nodes.
pub fn integrate_radial<T: Float>(n: usize, r_max: T, mut f: impl FnMut(T) -> T) -> T {
    let (nodes, weights) = gauss_legendre::<T>(n);
    let half = r_max * T::of(0.5);
    let mut total = T::zero();
    for (xi, wi) in nodes.iter().zip(&weights) {
        let r = half + *xi * half;
        total += *wi * f(r);
    }
    total * half
}
