//! Small dense optimizers for the 4-parameter Husimi fit: Nelder-Mead for
//! the global approach, Levenberg-Marquardt for the quadratic-convergence
//! polish.

pub const DIM: usize = 4;

/// Nelder-Mead outcome: best point, its value, and whether the simplex
/// collapsed below the tolerance within the iteration budget.
pub struct SimplexResult {
    pub x: [f64; DIM],
    pub value: f64,
    pub converged: bool,
}

/// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2) from `x0` with per-coordinate initial steps.
pub fn nelder_mead(
    f: impl Fn(&[f64; DIM]) -> f64,
    x0: [f64; DIM],
    steps: [f64; DIM],
    max_iter: usize,
    tol: f64,
) -> SimplexResult {
    let mut simplex: Vec<([f64; DIM], f64)> = Vec::with_capacity(DIM + 1);
    simplex.push((x0, f(&x0)));
    for i in 0..DIM {
        let mut x = x0;
        x[i] += steps[i];
        simplex.push((x, f(&x)));
    }
    let mut converged = false;
    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let best = simplex[0].1;
        let worst = simplex[DIM].1;
        let spread = (worst - best).abs();
        let size: f64 = (0..DIM)
            .map(|i| (simplex[DIM].0[i] - simplex[0].0[i]).abs())
            .fold(0.0, f64::max);
        if spread <= tol * (best.abs() + 1e-30) && size <= 1e-10 {
            converged = true;
            break;
        }
        // centroid of all but the worst vertex
        let mut c = [0.0; DIM];
        for v in &simplex[..DIM] {
            for i in 0..DIM {
                c[i] += v.0[i] / DIM as f64;
            }
        }
        let at = |t: f64| {
            let mut x = [0.0; DIM];
            for i in 0..DIM {
                x[i] = c[i] + t * (simplex[DIM].0[i] - c[i]);
            }
            x
        };
        let xr = at(-1.0);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = at(-2.0);
            let fe = f(&xe);
            simplex[DIM] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[DIM - 1].1 {
            simplex[DIM] = (xr, fr);
        } else {
            let xc = if fr < simplex[DIM].1 { at(-0.5) } else { at(0.5) };
            let fc = f(&xc);
            if fc < simplex[DIM].1.min(fr) {
                simplex[DIM] = (xc, fc);
            } else {
                let x0 = simplex[0].0;
                for v in &mut simplex[1..] {
                    for i in 0..DIM {
                        v.0[i] = 0.5 * (v.0[i] + x0[i]);
                    }
                    v.1 = f(&v.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    SimplexResult { x: simplex[0].0, value: simplex[0].1, converged }
}

/// Solves `A x = b` for a small symmetric system by Gaussian elimination
/// with partial pivoting. Returns `None` for a singular matrix.
fn solve(mut a: [[f64; DIM]; DIM], mut b: [f64; DIM]) -> Option<[f64; DIM]> {
    for col in 0..DIM {
        let pivot = (col..DIM).max_by(|&i, &j| {
            a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()
        })?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..DIM {
            let m = a[row][col] / a[col][col];
            for k in col..DIM {
                a[row][k] -= m * a[col][k];
            }
            b[row] -= m * b[col];
        }
    }
    let mut x = [0.0; DIM];
    for col in (0..DIM).rev() {
        let mut s = b[col];
        for k in col + 1..DIM {
            s -= a[col][k] * x[k];
        }
        x[col] = s / a[col][col];
    }
    Some(x)
}

pub struct LmResult {
    pub x: [f64; DIM],
    pub chi2: f64,
    pub converged: bool,
}

/// Levenberg-Marquardt on a weighted residual vector, with a forward-
/// difference Jacobian. Converges when the relative parameter step and the
/// relative chi-square improvement both drop below `tol`.
pub fn levenberg_marquardt(
    residuals: impl Fn(&[f64; DIM]) -> Vec<f64>,
    x0: [f64; DIM],
    max_iter: usize,
    tol: f64,
) -> LmResult {
    let chi2_of = |r: &[f64]| r.iter().map(|v| v * v).sum::<f64>();
    let mut x = x0;
    let mut r = residuals(&x);
    let mut chi2 = chi2_of(&r);
    let mut lambda = 1e-3;
    let mut converged = false;
    for _ in 0..max_iter {
        // forward-difference Jacobian
        let mut jac: Vec<Vec<f64>> = Vec::with_capacity(DIM);
        for i in 0..DIM {
            let h = 1e-7 * (1.0 + x[i].abs());
            let mut xp = x;
            xp[i] += h;
            let rp = residuals(&xp);
            jac.push(r.iter().zip(&rp).map(|(&a, &b)| (b - a) / h).collect());
        }
        let mut jtj = [[0.0; DIM]; DIM];
        let mut jtr = [0.0; DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                jtj[i][j] = jac[i].iter().zip(&jac[j]).map(|(&a, &b)| a * b).sum();
            }
            jtr[i] = jac[i].iter().zip(&r).map(|(&a, &b)| a * b).sum();
        }
        let mut improved = false;
        for _ in 0..20 {
            let mut a = jtj;
            for i in 0..DIM {
                a[i][i] += lambda * jtj[i][i].max(1e-12);
            }
            let Some(delta) = solve(a, jtr) else {
                lambda *= 10.0;
                continue;
            };
            let mut xt = x;
            for i in 0..DIM {
                xt[i] -= delta[i];
            }
            let rt = residuals(&xt);
            let ct = chi2_of(&rt);
            if ct <= chi2 {
                let step: f64 = (0..DIM)
                    .map(|i| delta[i].abs() / (1.0 + x[i].abs()))
                    .fold(0.0, f64::max);
                let gain = (chi2 - ct) / (chi2.abs() + 1e-300);
                x = xt;
                r = rt;
                chi2 = ct;
                lambda = (lambda * 0.3).max(1e-12);
                improved = true;
                if step < tol || gain < tol {
                    converged = true;
                }
                break;
            }
            lambda *= 10.0;
        }
        if converged || !improved {
            converged = converged || !improved && chi2.is_finite();
            break;
        }
    }
    LmResult { x, chi2, converged }
}
