//! Two-dimensional BFGS minimizer with Armijo backtracking.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct BfgsOptions {
    /// Infinity-norm of the gradient required at the solution.
    pub grad_tol: f64,
    /// Euclidean step length below which the iterate is considered settled.
    pub step_tol: f64,
    pub max_iter: usize,
    /// Longest step the line search starts from.
    pub max_step: f64,
}

impl Default for BfgsOptions {
    fn default() -> Self {
        Self {
            grad_tol: 1e-6,
            step_tol: 1e-10,
            max_iter: 500,
            max_step: 5.0,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BfgsOutcome {
    pub x: [f64; 2],
    pub value: f64,
    pub grad: [f64; 2],
    pub iterations: usize,
    pub converged: bool,
}

fn inf_norm(g: &[f64; 2]) -> f64 {
    g[0].abs().max(g[1].abs())
}

fn dot(a: &[f64; 2], b: &[f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn mat_vec(h: &[[f64; 2]; 2], v: &[f64; 2]) -> [f64; 2] {
    [h[0][0] * v[0] + h[0][1] * v[1], h[1][0] * v[0] + h[1][1] * v[1]]
}

const IDENTITY: [[f64; 2]; 2] = [[1.0, 0.0], [0.0, 1.0]];

/// Relative rounding level assumed for objective values.
const NOISE_REL: f64 = 1e-12;

/// Minimizes `objective`, which returns the value and gradient at a point.
///
/// Any error while evaluating a line-search trial rejects that trial. An
/// accepted iterate for which `admissible` is false aborts the run with
/// `BoundaryDrift`.
pub fn minimize<F, A>(mut objective: F, admissible: A, x0: [f64; 2], opts: &BfgsOptions) -> Result<BfgsOutcome>
where
    F: FnMut(&[f64; 2]) -> Result<(f64, [f64; 2])>,
    A: Fn(&[f64; 2]) -> bool,
{
    let (mut fx, mut g) = objective(&x0)?;
    let mut x = x0;
    let mut h = IDENTITY;
    let mut fresh_h = true;
    let mut iterations = 0;

    while iterations < opts.max_iter {
        iterations += 1;
        let mut dir = mat_vec(&h, &g);
        dir = [-dir[0], -dir[1]];
        let mut slope = dot(&g, &dir);
        if !(slope < 0.0) {
            // not a descent direction: fall back to steepest descent
            h = IDENTITY;
            fresh_h = true;
            dir = [-g[0], -g[1]];
            slope = dot(&g, &dir);
        }
        let dir_norm = dot(&dir, &dir).sqrt();
        if inf_norm(&g) < opts.grad_tol && dir_norm < opts.step_tol {
            // the next step would be negligible; on large samples taking it
            // only lets rounding noise in the objective move the iterate
            return Ok(BfgsOutcome { x, value: fx, grad: g, iterations, converged: true });
        }
        let mut alpha = if dir_norm > opts.max_step {
            opts.max_step / dir_norm
        } else {
            1.0
        };

        // Below this the objective's own rounding hides any decrease, so a
        // trial that merely shrinks the gradient is also accepted.
        let noise = NOISE_REL * fx.abs().max(1.0);
        let mut accepted = None;
        for _ in 0..80 {
            let trial = [x[0] + alpha * dir[0], x[1] + alpha * dir[1]];
            match objective(&trial) {
                Ok((ft, gt))
                    if ft.is_finite()
                        && (ft <= fx + 1e-4 * alpha * slope || (ft <= fx + noise && inf_norm(&gt) < inf_norm(&g))) =>
                {
                    accepted = Some((trial, ft, gt));
                    break;
                }
                _ => {}
            }
            alpha *= 0.5;
        }

        let Some((x_new, f_new, g_new)) = accepted else {
            if inf_norm(&g) < opts.grad_tol {
                // at the floating-point floor of the objective
                return Ok(BfgsOutcome { x, value: fx, grad: g, iterations, converged: true });
            }
            if fresh_h {
                return Ok(BfgsOutcome { x, value: fx, grad: g, iterations, converged: false });
            }
            h = IDENTITY;
            fresh_h = true;
            continue;
        };

        if !admissible(&x_new) {
            return Err(Error::BoundaryDrift(x_new));
        }
        let s = [x_new[0] - x[0], x_new[1] - x[1]];
        let y = [g_new[0] - g[0], g_new[1] - g[1]];
        x = x_new;
        fx = f_new;
        g = g_new;

        let step_norm = dot(&s, &s).sqrt();
        if inf_norm(&g) < opts.grad_tol && step_norm < opts.step_tol {
            return Ok(BfgsOutcome { x, value: fx, grad: g, iterations, converged: true });
        }

        let sy = dot(&s, &y);
        if sy > 1e-12 * step_norm * dot(&y, &y).sqrt() {
            if fresh_h {
                let scale = sy / dot(&y, &y);
                h = [[scale, 0.0], [0.0, scale]];
                fresh_h = false;
            }
            // H⁺ = (I - ρ s yᵀ) H (I - ρ y sᵀ) + ρ s sᵀ
            let rho = 1.0 / sy;
            let hy = mat_vec(&h, &y);
            let yhy = dot(&y, &hy);
            let mut next = [[0.0; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    next[i][j] = h[i][j] - rho * (s[i] * hy[j] + hy[i] * s[j])
                        + (rho * rho * yhy + rho) * s[i] * s[j];
                }
            }
            h = next;
        }
    }
    Ok(BfgsOutcome {
        x,
        value: fx,
        grad: g,
        iterations,
        converged: false,
    })
}
