//! One-dimensional quasilinear Dirichlet problems on an interval: principal
//! eigenvalue of the p-Laplacian (closed form + Rayleigh mesh oracle), a
//! shooting + Newton solver for the positive solution of
//! −(|u'|^{p−2}u')' = ν f(u), u(0) = u(L) = 0, the cubic energy bound, and
//! the sup-form of the identity over the sub-level set of ∫|u|^p.

use crate::ext::ExtReal;
use crate::functionals::{
    AnalyticMetadata, FunctionalPair, MinimizerSet, ScalarMap,
};
use crate::measure::{
    verify_identity, MeasureError, Tolerances, Verdict, VerificationReport, WeightedMeasureSpace,
};
use crate::scalarize::SearchConfig;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Pde1dError {
    #[error("invalid problem: {0}")]
    Construction(String),
    #[error("eigenvalue mesh oracle disagrees with the closed form: closed = {closed}, oracle = {oracle}")]
    EigenvalueMismatch { closed: f64, oracle: f64 },
    #[error("no positive solution found in slope bracket: {0}")]
    NoPositiveSolution(String),
    #[error("weak-form Newton polish stalled at residual {residual}")]
    SolverStalled { residual: f64 },
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// Weak-form residual every accepted discrete solution must meet.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Half-period constant of the p-sine: π_p = 2π / (p·sin(π/p)).
pub fn pi_p(p: f64) -> f64 {
    2.0 * PI / (p * (PI / p).sin())
}

/// Closed-form principal Dirichlet eigenvalue of the p-Laplacian on (0, L):
/// λ_{1,p} = (p−1)(π_p/L)^p.
pub fn principal_eigenvalue_closed_form(p: f64, l: f64) -> Result<f64, Pde1dError> {
    if !(p > 1.0) || !(l > 0.0) {
        return Err(Pde1dError::Construction("need p > 1 and L > 0".into()));
    }
    Ok((p - 1.0) * (pi_p(p) / l).powf(p))
}

fn sigma(t: f64, p: f64) -> f64 {
    t.abs().powf(p - 2.0) * t
}

/// Thomas solve of a tridiagonal system; `lower`/`upper` have length n−1.
fn thomas(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = upper.first().copied().unwrap_or(0.0) / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - lower[i - 1] * c[i - 1];
        if i < n - 1 {
            c[i] = upper[i] / m;
        }
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / m;
    }
    let mut x = d;
    for i in (0..n - 1).rev() {
        let next = x[i + 1];
        x[i] -= c[i] * next;
    }
    x
}

/// Discrete Rayleigh quotient Σh|Δv/h|^p / Σh|v|^p of an interior-node vector.
fn rayleigh_quotient(v: &[f64], p: f64, h: f64) -> f64 {
    let n = v.len();
    let mut num = 0.0;
    let mut den = 0.0;
    let mut prev = 0.0;
    for &vi in v {
        num += h * ((vi - prev) / h).abs().powf(p);
        den += h * vi.abs().powf(p);
        prev = vi;
    }
    num += h * ((0.0 - v[n - 1]) / h).abs().powf(p);
    num / den
}

/// Gradient of the Rayleigh quotient at v (analytic).
fn rayleigh_gradient(v: &[f64], p: f64, h: f64) -> Vec<f64> {
    let n = v.len();
    let mut num = 0.0;
    let mut den = 0.0;
    let mut d = vec![0.0; n + 1];
    for i in 0..=n {
        let left = if i == 0 { 0.0 } else { v[i - 1] };
        let right = if i == n { 0.0 } else { v[i] };
        d[i] = (right - left) / h;
        num += h * d[i].abs().powf(p);
    }
    for &vi in v {
        den += h * vi.abs().powf(p);
    }
    let r = num / den;
    (0..n)
        .map(|i| {
            let da = p * (sigma(d[i], p) - sigma(d[i + 1], p));
            let db = p * h * sigma(v[i], p);
            (da - r * db) / den
        })
        .collect()
}

/// Principal eigenvalue by direct minimization of the mesh Rayleigh quotient.
/// For p = 2 this is inverse power iteration on the tridiagonal stiffness
/// matrix; for p ≠ 2 it is Barzilai–Borwein descent seeded with the p = 2
/// eigenvector (the quotient is scale-invariant, so the iterate is
/// renormalized each step).
pub fn rayleigh_oracle(p: f64, l: f64, cells: usize) -> Result<f64, Pde1dError> {
    if !(p > 1.0) || !(l > 0.0) || cells < 8 {
        return Err(Pde1dError::Construction("need p > 1, L > 0 and at least 8 cells".into()));
    }
    let n = cells - 1; // interior nodes
    let h = l / cells as f64;

    // p = 2 seed/answer: inverse iteration, A v = (2v_i − v_{i−1} − v_{i+1})/h²
    let diag = vec![2.0 / (h * h); n];
    let off = vec![-1.0 / (h * h); n - 1];
    let mut v = vec![1.0; n];
    for _ in 0..200 {
        let mut x = thomas(&off, &diag, &off, &v);
        let norm = x.iter().map(|t| t * t).sum::<f64>().sqrt();
        for t in &mut x {
            *t /= norm;
        }
        v = x;
    }
    if (p - 2.0).abs() < 1e-12 {
        return Ok(rayleigh_quotient(&v, 2.0, h));
    }

    // safeguarded descent on the scale-invariant quotient (the quotient is
    // 0-homogeneous, so the iterate keeps its scale)
    let scale = v.iter().cloned().fold(0.0f64, f64::max);
    for t in &mut v {
        *t /= scale;
    }
    let mut value = rayleigh_quotient(&v, p, h);
    let mut g = rayleigh_gradient(&v, p, h);
    let mut step = 1e-2;
    let mut prev: Option<(Vec<f64>, Vec<f64>)> = None;
    for _ in 0..5000 {
        let gnorm2: f64 = g.iter().map(|t| t * t).sum();
        if gnorm2.sqrt() < 1e-12 * (1.0 + value) {
            break;
        }
        if let Some((pv, pg)) = &prev {
            let mut sy = 0.0;
            let mut ss = 0.0;
            for i in 0..v.len() {
                let s = v[i] - pv[i];
                let y = g[i] - pg[i];
                sy += s * y;
                ss += s * s;
            }
            if sy > 0.0 && ss > 0.0 {
                step = (ss / sy).clamp(1e-12, 1e4);
            }
        }
        // Armijo backtracking so a bad BB step cannot blow the iterate up
        let mut t = step;
        let mut accepted = false;
        for _ in 0..50 {
            let trial: Vec<f64> = v.iter().zip(&g).map(|(vi, gi)| vi - t * gi).collect();
            let tv = rayleigh_quotient(&trial, p, h);
            if tv <= value - 1e-4 * t * gnorm2 {
                prev = Some((v, g));
                v = trial;
                value = tv;
                g = rayleigh_gradient(&v, p, h);
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    Ok(rayleigh_quotient(&v, p, h))
}

/// Closed-form λ_{1,p}, cross-checked against the mesh oracle; a disagreement
/// beyond 1e−3 relative is a consistency error.
pub fn principal_eigenvalue(p: f64, l: f64) -> Result<f64, Pde1dError> {
    let closed = principal_eigenvalue_closed_form(p, l)?;
    let oracle = rayleigh_oracle(p, l, 1024)?;
    if (closed - oracle).abs() > 1e-3 * closed.abs() {
        return Err(Pde1dError::EigenvalueMismatch { closed, oracle });
    }
    Ok(closed)
}

/// −(|u'|^{p−2}u')' = ν f(u) on (0, L) with zero Dirichlet data. `f` is only
/// ever consulted where it matters for positive solutions; it must be
/// non-negative on the sampled positive range.
#[derive(Clone)]
pub struct IntervalProblem {
    pub length: f64,
    pub p: f64,
    pub nu: f64,
    pub f: ScalarMap,
    /// Cells of the uniform mesh used by the solver.
    pub mesh: usize,
}

impl IntervalProblem {
    pub fn new(
        length: f64,
        p: f64,
        nu: f64,
        f: ScalarMap,
        mesh: usize,
    ) -> Result<Self, Pde1dError> {
        if !(length > 0.0) || !(p > 1.0) || !(nu > 0.0 && nu <= 1.0) {
            return Err(Pde1dError::Construction(
                "need L > 0, p > 1 and ν in ]0, 1]".into(),
            ));
        }
        if mesh < 16 {
            return Err(Pde1dError::Construction("need at least 16 mesh cells".into()));
        }
        for i in 0..=100 {
            let y = 10.0 * i as f64 / 100.0;
            let v = (f)(y);
            if !v.is_finite() || v < 0.0 {
                return Err(Pde1dError::Construction(format!(
                    "f must be finite and non-negative on the sampled grid (f({y}) = {v})"
                )));
            }
        }
        let prob = IntervalProblem { length, p, nu, f, mesh };
        // quadrature antiderivative must differentiate back to f
        for &y in &[0.5, 1.0, 2.0] {
            let h = 1e-5;
            let fd = (prob.big_f(y + h) - prob.big_f(y - h)) / (2.0 * h);
            let fy = (prob.f)(y);
            if (fd - fy).abs() > 1e-6 * (1.0 + fy.abs()) {
                return Err(Pde1dError::Construction(format!(
                    "antiderivative inconsistent with f at y = {y}: F' = {fd}, f = {fy}"
                )));
            }
        }
        Ok(prob)
    }

    /// F(y) = ∫₀^y f(t) dt by composite Simpson quadrature.
    pub fn big_f(&self, y: f64) -> f64 {
        simpson(&*self.f, y)
    }
}

fn simpson(f: &(dyn Fn(f64) -> f64 + Send + Sync), y: f64) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    let mut panels = (64.0 * (1.0 + y.abs())).min(16384.0) as usize;
    panels += panels % 2; // composite Simpson needs an even count
    let h = y / panels as f64;
    let mut acc = f(0.0) + f(y);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(i as f64 * h);
    }
    acc * h / 3.0
}

/// Subcriticality condition gating the energy bound: ν < λ_{1,p} ρ^p / (p F(ρ)).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubcriticalCheck {
    pub threshold: ExtReal,
    pub pass: bool,
}

pub fn check_subcritical_source(prob: &IntervalProblem, rho: f64) -> Result<SubcriticalCheck, Pde1dError> {
    if !(rho > 0.0) {
        return Err(Pde1dError::Construction("need ρ > 0".into()));
    }
    let lam = principal_eigenvalue_closed_form(prob.p, prob.length)?;
    let f_rho = prob.big_f(rho);
    if f_rho <= 0.0 {
        // f vanishes on [0, ρ]: the constraint is vacuous
        return Ok(SubcriticalCheck { threshold: ExtReal::PosInf, pass: true });
    }
    let threshold = lam * rho.powf(prob.p) / (prob.p * f_rho);
    // strict inequality with a guard so the exact-boundary case does not flip
    // on the last bit of the quadrature
    let pass = prob.nu < threshold - 1e-12 * (1.0 + threshold.abs());
    Ok(SubcriticalCheck { threshold: ExtReal::Finite(threshold), pass })
}

/// Nodal solution on the uniform mesh, with the discrete Dirichlet energy and
/// the hat-function weak-form residual.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiscreteSolution {
    /// u at the mesh nodes, boundary values included (length mesh + 1).
    pub nodes: Vec<f64>,
    pub h: f64,
    /// Shooting slope u'(0) selected by the bisection.
    pub slope: f64,
    /// Σ h |Δu/h|^p.
    pub energy: f64,
    /// ℓ∞ norm of the discrete weak form.
    pub residual: f64,
}

impl DiscreteSolution {
    pub fn x(&self, i: usize) -> f64 {
        self.h * i as f64
    }

    /// Σ h |u_i|^p over interior nodes (the mesh L^p norm to the p-th power).
    pub fn lp_norm_pow(&self, p: f64) -> f64 {
        self.nodes[1..self.nodes.len() - 1]
            .iter()
            .map(|u| self.h * u.abs().powf(p))
            .sum()
    }

    /// Two-column CSV: x, u(x).
    pub fn write_csv<W: io::Write>(&self, w: W) -> Result<(), csv::Error> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["x", "u"])?;
        for (i, u) in self.nodes.iter().enumerate() {
            out.write_record([format!("{}", self.x(i)), format!("{u}")])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Explicit-midpoint integration of u' = |w|^{1/(p−1)} sgn w, w' = −ν f(u)
/// from u(0) = 0 with initial slope s. Returns the nodal u values.
fn shoot(prob: &IntervalProblem, s: f64) -> Vec<f64> {
    let n = prob.mesh;
    let h = prob.length / n as f64;
    let p = prob.p;
    let uprime = |w: f64| w.abs().powf(1.0 / (p - 1.0)) * w.signum();
    let mut u = 0.0;
    let mut w = sigma(s, p);
    let mut nodes = Vec::with_capacity(n + 1);
    nodes.push(u);
    for _ in 0..n {
        let uh = u + 0.5 * h * uprime(w);
        let wh = w - 0.5 * h * prob.nu * (prob.f)(u);
        u += h * uprime(wh);
        w -= h * prob.nu * (prob.f)(uh);
        nodes.push(u);
    }
    nodes
}

/// Weak form against hat functions: G_i = σ(Δ_i/h) − σ(Δ_{i+1}/h) − νh f(u_i).
fn weak_form(prob: &IntervalProblem, interior: &[f64]) -> Vec<f64> {
    let n = prob.mesh;
    let h = prob.length / n as f64;
    let p = prob.p;
    (0..n - 1)
        .map(|i| {
            let left = if i == 0 { 0.0 } else { interior[i - 1] };
            let right = if i == n - 2 { 0.0 } else { interior[i + 1] };
            sigma((interior[i] - left) / h, p) - sigma((right - interior[i]) / h, p)
                - prob.nu * h * (prob.f)(interior[i])
        })
        .collect()
}

fn linf(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, t| m.max(t.abs()))
}

/// Damped Newton on the discrete weak form, tridiagonal Jacobian solved by
/// the Thomas algorithm. σ' is regularized at the apex where u' = 0.
fn newton_polish(prob: &IntervalProblem, interior: &mut Vec<f64>) -> f64 {
    let n = prob.mesh;
    let h = prob.length / n as f64;
    let p = prob.p;
    let sigma_prime = |t: f64| (p - 1.0) * (t * t + 1e-14).powf((p - 2.0) / 2.0);
    let fprime = |y: f64| {
        let d = 1e-6 * (1.0 + y.abs());
        ((prob.f)(y + d) - (prob.f)(y - d)) / (2.0 * d)
    };
    let mut g = weak_form(prob, interior);
    let mut res = linf(&g);
    for _ in 0..80 {
        if res <= 1e-12 {
            break;
        }
        let m = n - 1;
        let mut diag = vec![0.0; m];
        let mut lower = vec![0.0; m - 1];
        let mut upper = vec![0.0; m - 1];
        for i in 0..m {
            let left = if i == 0 { 0.0 } else { interior[i - 1] };
            let right = if i == m - 1 { 0.0 } else { interior[i + 1] };
            let sl = sigma_prime((interior[i] - left) / h) / h;
            let sr = sigma_prime((right - interior[i]) / h) / h;
            diag[i] = sl + sr - prob.nu * h * fprime(interior[i]);
            if i > 0 {
                lower[i - 1] = -sl;
            }
            if i < m - 1 {
                upper[i] = -sr;
            }
        }
        let delta = thomas(&lower, &diag, &upper, &g);
        let mut t = 1.0;
        let mut improved = false;
        for _ in 0..40 {
            let trial: Vec<f64> =
                interior.iter().zip(&delta).map(|(u, d)| u - t * d).collect();
            let gt = weak_form(prob, &trial);
            let rt = linf(&gt);
            if rt < res {
                *interior = trial;
                g = gt;
                res = rt;
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if !improved {
            break;
        }
    }
    res
}

/// Positive solution by shooting: bisect the initial slope on the sign of
/// u(L), then polish on the discrete weak form. Errors if no slope in the
/// bracket changes the terminal sign (no positive solution), if positivity is
/// lost, or if the residual target is missed.
pub fn solve_positive(prob: &IntervalProblem) -> Result<DiscreteSolution, Pde1dError> {
    let terminal = |s: f64| *shoot(prob, s).last().unwrap();

    // walk a geometric slope ladder looking for a terminal sign change
    let mut bracket = None;
    let mut prev: Option<(f64, f64)> = None;
    for k in -40..=40 {
        let s = 2.0f64.powi(k);
        let t = terminal(s);
        if let Some((ps, pt)) = prev {
            if pt * t < 0.0 {
                bracket = Some((ps, s));
                break;
            }
        }
        prev = Some((s, t));
    }
    let (mut lo, mut hi) = bracket.ok_or_else(|| {
        Pde1dError::NoPositiveSolution(
            "terminal value u(L) has constant sign across the slope ladder".into(),
        )
    })?;

    let mut t_lo = terminal(lo);
    for _ in 0..200 {
        if (hi - lo) <= 1e-10 * hi.max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let t_mid = terminal(mid);
        if t_lo * t_mid <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            t_lo = t_mid;
        }
    }
    let slope = 0.5 * (lo + hi);
    let nodes = shoot(prob, slope);
    let mut interior: Vec<f64> = nodes[1..nodes.len() - 1].to_vec();

    let residual = newton_polish(prob, &mut interior);
    if residual > RESIDUAL_TOL {
        return Err(Pde1dError::SolverStalled { residual });
    }
    if interior.iter().any(|&u| u <= 0.0) {
        return Err(Pde1dError::NoPositiveSolution(
            "polished solution is not strictly positive in the interior".into(),
        ));
    }

    let n = prob.mesh;
    let h = prob.length / n as f64;
    let mut full = Vec::with_capacity(n + 1);
    full.push(0.0);
    full.extend_from_slice(&interior);
    full.push(0.0);
    let energy: f64 = full
        .windows(2)
        .map(|w| h * ((w[1] - w[0]) / h).abs().powf(prob.p))
        .sum();
    Ok(DiscreteSolution { nodes: full, h, slope, energy, residual })
}

/// p = 3, f(u) = u⁺: checks the cubic energy bound 27L/(8λ_{1,3}²)·ν³.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubicEnergyReport {
    pub length: f64,
    pub nu: f64,
    pub lambda_13: f64,
    pub bound: f64,
    pub energy: f64,
    /// energy / bound, expected in (0, 1].
    pub utilization: f64,
    pub residual: f64,
    pub pass: bool,
}

pub fn verify_cubic_energy_bound(l: f64, nu: f64, mesh: usize) -> Result<CubicEnergyReport, Pde1dError> {
    let f: ScalarMap = Arc::new(|u: f64| u.max(0.0));
    let prob = IntervalProblem::new(l, 3.0, nu, f, mesh)?;
    let lam = principal_eigenvalue_closed_form(3.0, l)?;
    let sol = solve_positive(&prob)?;
    let bound = 27.0 * l / (8.0 * lam * lam) * nu.powi(3);
    let utilization = sol.energy / bound;
    Ok(CubicEnergyReport {
        length: l,
        nu,
        lambda_13: lam,
        bound,
        energy: sol.energy,
        utilization,
        residual: sol.residual,
        pass: sol.energy <= bound && sol.residual <= RESIDUAL_TOL,
    })
}

/// Builds the scalar pair (−νF, |y|^p) for the sup-form identity. `delta` is
/// the declared limsup of f(y)/y^{p−1}; the penalized functional is coercive
/// for every λ above νδ/p. f is clamped to 0 on the negative axis, so F
/// vanishes there and the global minimizer of φ + λψ stays unique.
pub fn make_interval_pair(
    f: ScalarMap,
    p: f64,
    nu: f64,
    delta: f64,
) -> Result<FunctionalPair, Pde1dError> {
    if !(p > 1.0) || !(nu > 0.0) || !(delta >= 0.0) {
        return Err(Pde1dError::Construction("need p > 1, ν > 0 and δ ≥ 0".into()));
    }
    let clamped: ScalarMap = Arc::new(move |y: f64| if y <= 0.0 { 0.0 } else { (f)(y) });
    let table = Antiderivative::build(clamped.clone(), 64.0, 1 << 16);
    let phi_f = table.clone();
    let level_f = table.clone();
    let lam_f = clamped.clone();
    Ok(FunctionalPair {
        dim: 1,
        family: "interval-sup".into(),
        phi: Arc::new(move |y: &[f64]| -nu * phi_f.eval(y[0])),
        psi: Arc::new(move |y: &[f64]| y[0].abs().powf(p)),
        growth_exponent: p,
        lambda_lo: nu * delta / p,
        lambda_hi: ExtReal::PosInf,
        psi_inf: ExtReal::Finite(0.0),
        psi_sup: ExtReal::PosInf,
        minima_at_a: MinimizerSet::Empty,
        minima_at_b: MinimizerSet::Empty,
        analytic: Some(AnalyticMetadata {
            minimizer: None,
            lambda_for_level: Some(Arc::new(move |r: f64| {
                let y = r.powf(1.0 / p);
                nu * (lam_f)(y) / (p * y.powf(p - 1.0))
            })),
            level_set_infimum: Some(Arc::new(move |r: f64| {
                -nu * level_f.eval(r.powf(1.0 / p))
            })),
            alpha: ExtReal::Finite(0.0),
            beta: ExtReal::PosInf,
        }),
        hypothesis_violation_expected: false,
    })
}

/// Cumulative Simpson table for F(y) = ∫₀^y f on [0, y_max]; O(1) lookups so
/// the constrained oracle can hammer φ without re-integrating.
#[derive(Clone)]
struct Antiderivative {
    f: ScalarMap,
    h: f64,
    cum: Arc<Vec<f64>>,
}

impl Antiderivative {
    fn build(f: ScalarMap, y_max: f64, cells: usize) -> Self {
        let h = y_max / cells as f64;
        let mut cum = Vec::with_capacity(cells + 1);
        cum.push(0.0);
        let mut acc = 0.0;
        for i in 0..cells {
            let a = i as f64 * h;
            acc += h / 6.0 * ((f)(a) + 4.0 * (f)(a + 0.5 * h) + (f)(a + h));
            cum.push(acc);
        }
        Antiderivative { f, h, cum: Arc::new(cum) }
    }

    fn eval(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        let top = self.h * (self.cum.len() - 1) as f64;
        if y >= top {
            // outside the table: finish with on-the-fly Simpson
            return self.cum[self.cum.len() - 1] + simpson_between(&*self.f, top, y);
        }
        let idx = (y / self.h).floor() as usize;
        let a = idx as f64 * self.h;
        self.cum[idx] + simpson_between(&*self.f, a, y)
    }
}

fn simpson_between(f: &(dyn Fn(f64) -> f64 + Send + Sync), a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
}

/// The sup-form identity over the sub-level set ∫|u|^p ≤ ρ^p·L, run through
/// the full verification pipeline on a uniform discretization with γ ≡ 1:
/// sup ∫F(u) must equal F(ρ)·L.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SupIdentityReport {
    pub rho: f64,
    pub r: f64,
    pub sup_value: f64,
    pub expected: f64,
    pub rel_error: f64,
    pub report: VerificationReport,
    pub pass: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn verify_sup_identity(
    l: f64,
    p: f64,
    f: ScalarMap,
    nu: f64,
    delta: f64,
    rho: f64,
    atoms: usize,
    tols: &Tolerances,
    search: &SearchConfig,
) -> Result<SupIdentityReport, Pde1dError> {
    if !(rho > 0.0) || !(l > 0.0) {
        return Err(Pde1dError::Construction("need ρ > 0 and L > 0".into()));
    }
    let pair = make_interval_pair(f.clone(), p, nu, delta)?;
    let space = WeightedMeasureSpace::uniform_interval(atoms, l)?;
    let r = rho.powf(p);
    let report = verify_identity(&space, &pair, r, tols, search)?;

    let table = Antiderivative::build(
        Arc::new(move |y: f64| if y <= 0.0 { 0.0 } else { (f)(y) }),
        64.0,
        1 << 16,
    );
    let expected = table.eval(rho) * l;
    // inf of ∫γ(−νF∘u) over the sub-level set, flipped back to the sup form
    let sup_value = -report.lhs / nu;
    let rel_error = (sup_value - expected).abs() / expected.abs().max(1e-30);
    let pass = report.verdict == Verdict::Pass && rel_error <= tols.rel;
    Ok(SupIdentityReport { rho, r, sup_value, expected, rel_error, report, pass })
}
