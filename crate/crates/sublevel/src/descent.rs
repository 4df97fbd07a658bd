//! Local unconstrained descent used by the scalarization and oracle layers.
//!
//! Barzilai-Borwein gradient steps with an Armijo backtracking safeguard and
//! central finite-difference gradients. Good enough for the smooth and
//! piecewise-smooth objectives this crate minimizes; global search is layered
//! on top via multi-start.

const FD_EPS: f64 = 1e-6;
const MAX_BACKTRACKS: u32 = 48;

pub fn fd_gradient(f: &dyn Fn(&[f64]) -> f64, x: &[f64]) -> Vec<f64> {
    let mut work = x.to_vec();
    let mut grad = vec![0.0; x.len()];
    for i in 0..x.len() {
        let h = FD_EPS * (1.0 + x[i].abs());
        work[i] = x[i] + h;
        let fp = f(&work);
        work[i] = x[i] - h;
        let fm = f(&work);
        work[i] = x[i];
        grad[i] = (fp - fm) / (2.0 * h);
    }
    grad
}

#[derive(Clone, Debug)]
pub struct DescentResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub grad_norm: f64,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

pub fn local_descent(
    f: &dyn Fn(&[f64]) -> f64,
    x0: &[f64],
    tol: f64,
    max_iter: usize,
) -> DescentResult {
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut grad = fd_gradient(f, &x);
    let mut gnorm = norm(&grad);
    let mut step = 1.0 / (1.0 + gnorm);
    let mut iterations = 0;

    for _ in 0..max_iter {
        if gnorm <= tol * (1.0 + fx.abs()) {
            break;
        }
        iterations += 1;

        let mut alpha = step;
        let mut accepted = false;
        let mut x_new = x.clone();
        let mut f_new = fx;
        for _ in 0..MAX_BACKTRACKS {
            for i in 0..x.len() {
                x_new[i] = x[i] - alpha * grad[i];
            }
            f_new = f(&x_new);
            if f_new <= fx - 1e-4 * alpha * gnorm * gnorm {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if !accepted {
            break;
        }

        let grad_new = fd_gradient(f, &x_new);
        // BB1 step from the last displacement/gradient change.
        let mut sy = 0.0;
        let mut ss = 0.0;
        for i in 0..x.len() {
            let s = x_new[i] - x[i];
            let y = grad_new[i] - grad[i];
            sy += s * y;
            ss += s * s;
        }
        step = if sy > 1e-300 {
            (ss / sy).clamp(1e-12, 1e6)
        } else {
            (alpha * 2.0).clamp(1e-12, 1e6)
        };

        let displacement = (ss).sqrt();
        x = x_new;
        fx = f_new;
        grad = grad_new;
        gnorm = norm(&grad);
        if displacement < 1e-15 * (1.0 + norm(&x)) {
            break;
        }
    }

    DescentResult {
        value: fx,
        x,
        iterations,
        grad_norm: gnorm,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let f = |x: &[f64]| (x[0] - 3.0).powi(2) + 2.0 * (x[1] + 1.0).powi(2);
        let r = local_descent(&f, &[10.0, -10.0], 1e-12, 500);
        assert!((r.x[0] - 3.0).abs() < 1e-7, "{:?}", r);
        assert!((r.x[1] + 1.0).abs() < 1e-7, "{:?}", r);
    }

    #[test]
    fn scaled_quartic() {
        let f = |x: &[f64]| x[0].powi(4) - 2.0 * x[0] + 1.0;
        // minimum at x = (1/2)^(1/3)
        let r = local_descent(&f, &[4.0], 1e-12, 500);
        assert!((r.x[0] - 0.5f64.powf(1.0 / 3.0)).abs() < 1e-6);
    }
}
