//! Small dense optimisers used by the identification stage: a box-bounded
//! damped Gauss-Newton least-squares solver and a golden-section line search.
//!
//! The least-squares solver only ever accepts steps that reduce the residual
//! norm, so the cost is monotone non-increasing across accepted iterations.

use nalgebra::{Cholesky, DMatrix, DVector};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct LsqOptions {
    pub max_iterations: usize,
    /// Converged when the accepted step norm falls below this.
    pub step_tol: f64,
    /// Converged when the relative residual-norm improvement falls below this.
    pub rel_residual_tol: f64,
    /// Central-difference step: `max(fd_rel * |x|, fd_abs)` per parameter.
    pub fd_rel: f64,
    pub fd_abs: f64,
}

impl Default for LsqOptions {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            step_tol: 1e-10,
            rel_residual_tol: 1e-8,
            fd_rel: 1e-6,
            fd_abs: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Accepted step norm below `step_tol`.
    StepTol,
    /// Relative residual improvement below `rel_residual_tol`.
    ResidualTol,
    MaxIterations,
    /// No downhill step found at any damping level.
    Stalled,
}

#[derive(Debug, Clone)]
pub struct LsqResult {
    pub x: Vec<f64>,
    /// Final residual two-norm.
    pub residual_norm: f64,
    /// Accepted iterations.
    pub iterations: usize,
    pub stop: StopReason,
}

fn clamp_to_box(x: &mut [f64], lo: &[f64], hi: &[f64]) {
    for ((xi, &l), &h) in x.iter_mut().zip(lo).zip(hi) {
        *xi = xi.clamp(l, h);
    }
}

/// Minimise `||f(x)||^2` over the box `[lo, hi]` starting from `x0`.
///
/// `f` writes `m` residuals into the provided buffer. The Jacobian is taken
/// by central differences; steps are damped Gauss-Newton (Levenberg style),
/// projected onto the box, and accepted only when they reduce the residual
/// norm.
pub fn bounded_least_squares(
    f: &mut dyn FnMut(&[f64], &mut [f64]),
    m: usize,
    x0: &[f64],
    lo: &[f64],
    hi: &[f64],
    opts: &LsqOptions,
) -> Result<LsqResult> {
    let n = x0.len();
    assert!(lo.len() == n && hi.len() == n, "bound dimensions");
    if m == 0 {
        return Err(Error::Identification("no residuals to fit".into()));
    }
    for j in 0..n {
        if !(lo[j] <= hi[j]) {
            return Err(Error::Identification(format!(
                "invalid bounds for parameter {j}: [{}, {}]",
                lo[j], hi[j]
            )));
        }
    }

    let mut x = x0.to_vec();
    clamp_to_box(&mut x, lo, hi);

    let mut r = vec![0.0; m];
    f(&x, &mut r);
    let mut cost: f64 = r.iter().map(|v| v * v).sum();
    if !cost.is_finite() {
        return Err(Error::Identification(
            "non-finite residual at the initial point".into(),
        ));
    }

    let mut jac = DMatrix::<f64>::zeros(m, n);
    let mut r_lo = vec![0.0; m];
    let mut r_hi = vec![0.0; m];
    let mut r_new = vec![0.0; m];
    let mut lambda = 1e-3;
    let mut iterations = 0;

    for _ in 0..opts.max_iterations {
        // Central-difference Jacobian.
        for j in 0..n {
            let h = (opts.fd_rel * x[j].abs()).max(opts.fd_abs);
            let keep = x[j];
            x[j] = keep + h;
            f(&x, &mut r_hi);
            x[j] = keep - h;
            f(&x, &mut r_lo);
            x[j] = keep;
            let inv = 1.0 / (2.0 * h);
            for i in 0..m {
                jac[(i, j)] = (r_hi[i] - r_lo[i]) * inv;
            }
        }
        let hess = jac.transpose() * &jac;
        let grad = jac.transpose() * DVector::from_column_slice(&r);
        let max_diag = (0..n).map(|j| hess[(j, j)]).fold(0.0f64, f64::max);
        let diag_floor = (max_diag * 1e-12).max(1e-30);

        let mut accepted = false;
        for _ in 0..40 {
            let mut damped = hess.clone();
            for j in 0..n {
                damped[(j, j)] += lambda * hess[(j, j)].max(diag_floor);
            }
            let step = match Cholesky::new(damped) {
                Some(ch) => ch.solve(&(-&grad)),
                None => {
                    lambda *= 10.0;
                    continue;
                }
            };
            let mut x_new = x.clone();
            for j in 0..n {
                x_new[j] += step[j];
            }
            clamp_to_box(&mut x_new, lo, hi);
            let actual_norm: f64 = x_new
                .iter()
                .zip(&x)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            if actual_norm < opts.step_tol {
                // The projected step vanished; nothing left to try downhill.
                return Ok(LsqResult {
                    x,
                    residual_norm: cost.sqrt(),
                    iterations,
                    stop: StopReason::StepTol,
                });
            }
            f(&x_new, &mut r_new);
            let cost_new: f64 = r_new.iter().map(|v| v * v).sum();
            if cost_new.is_finite() && cost_new < cost {
                let rel_improve = (cost.sqrt() - cost_new.sqrt()) / cost.sqrt().max(1e-300);
                x = x_new;
                std::mem::swap(&mut r, &mut r_new);
                cost = cost_new;
                lambda = (lambda * 0.3).max(1e-12);
                iterations += 1;
                accepted = true;
                if actual_norm < opts.step_tol {
                    return Ok(LsqResult {
                        x,
                        residual_norm: cost.sqrt(),
                        iterations,
                        stop: StopReason::StepTol,
                    });
                }
                if rel_improve < opts.rel_residual_tol {
                    return Ok(LsqResult {
                        x,
                        residual_norm: cost.sqrt(),
                        iterations,
                        stop: StopReason::ResidualTol,
                    });
                }
                break;
            }
            lambda *= 4.0;
            if lambda > 1e14 {
                return Ok(LsqResult {
                    x,
                    residual_norm: cost.sqrt(),
                    iterations,
                    stop: StopReason::Stalled,
                });
            }
        }
        if !accepted {
            return Ok(LsqResult {
                x,
                residual_norm: cost.sqrt(),
                iterations,
                stop: StopReason::Stalled,
            });
        }
    }
    Ok(LsqResult {
        x,
        residual_norm: cost.sqrt(),
        iterations,
        stop: StopReason::MaxIterations,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct GoldenResult {
    /// Best evaluated point.
    pub x: f64,
    pub f: f64,
    pub evaluations: usize,
    /// Spread of the objective over all evaluations (flatness diagnostic).
    pub objective_spread: f64,
}

/// Golden-section minimisation of a unimodal objective on `[lo, hi]`,
/// shrinking the bracket to `x_tol` or stopping after `max_evals`
/// evaluations.
pub fn golden_section(
    f: &mut dyn FnMut(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    x_tol: f64,
    max_evals: usize,
) -> Result<GoldenResult> {
    if !(hi > lo) {
        return Err(Error::InvalidConfig(format!("invalid bracket [{lo}, {hi}]")));
    }
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut evaluations = 2;
    let (mut best_x, mut best_f) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    let mut f_min = f1.min(f2);
    let mut f_max = f1.max(f2);

    while (b - a) > x_tol && evaluations < max_evals {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
            evaluations += 1;
            if f1 < best_f {
                best_f = f1;
                best_x = x1;
            }
            f_min = f_min.min(f1);
            f_max = f_max.max(f1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
            evaluations += 1;
            if f2 < best_f {
                best_f = f2;
                best_x = x2;
            }
            f_min = f_min.min(f2);
            f_max = f_max.max(f2);
        }
    }
    Ok(GoldenResult {
        x: best_x,
        f: best_f,
        evaluations,
        objective_spread: f_max - f_min,
    })
}
