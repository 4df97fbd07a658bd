//! Scalarization: global minimization of φ + λψ, the level-set multiplier
//! λ_r located by monotone bisection, and the level-set infimum of φ, with
//! an independent grid/ray oracle for cross-checking.

use crate::descent::local_descent;
use crate::ext::ExtReal;
use crate::functionals::{alpha_beta, DeclaredOracle, FunctionalError, FunctionalPair};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScalarizeError {
    #[error(transparent)]
    Functional(#[from] FunctionalError),
    #[error("coercivity not observed in box of radius {radius}: objective still decreasing at the boundary")]
    CoercivityNotObserved { radius: f64 },
    #[error("lambda {lambda} outside the multiplier interval ]{lo}, {hi}[")]
    LambdaOutOfInterval { lambda: f64, lo: f64, hi: ExtReal },
    #[error("r = {r} outside the admissible range ]{alpha}, {beta}[")]
    LevelOutOfRange { r: f64, alpha: ExtReal, beta: ExtReal },
    #[error("bisection bracket for lambda_r overflowed while growing")]
    BracketOverflow,
    #[error("level jump detected in lambda interval [{lo}, {hi}]: psi(y_lambda) skips the target level (non-unique global minimum for some lambda)")]
    LevelJump { lo: f64, hi: f64 },
    #[error("level set not found in the scanned region")]
    LevelSetNotFound,
    #[error("decision dimension {0} exceeds the configured cap")]
    DimensionTooLarge(usize),
}

/// Knobs for multi-start global minimization and the λ_r bisection.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    pub starts: usize,
    /// Fixed half-width of the start box; `None` grows it until the
    /// objective on the boundary dominates the interior best.
    pub box_radius: Option<f64>,
    pub descent_tol: f64,
    pub seed: u64,
    /// Two basins with objectives this close count as a tie.
    pub tie_tol: f64,
    /// Minimizers farther apart than this are distinct basins.
    pub separation: f64,
    pub max_bisect_iters: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            starts: 24,
            box_radius: None,
            descent_tol: 1e-11,
            seed: 0,
            tie_tol: 1e-8,
            separation: 1e-3,
            max_bisect_iters: 200,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub starts: usize,
    pub distinct_basins: usize,
    pub best_objective: f64,
    pub second_objective: Option<f64>,
    pub suspected_nonuniqueness: bool,
}

/// A certified (statistically) global minimizer of φ + λψ.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PenalizedMinimum {
    pub lambda: f64,
    pub y_hat: Vec<f64>,
    /// φ(ŷ), re-evaluated at the minimizer.
    pub phi_value: f64,
    /// ψ(ŷ), re-evaluated at the minimizer.
    pub psi_value: f64,
    pub objective_value: f64,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultiplierResult {
    pub lambda_r: f64,
    pub minimum: PenalizedMinimum,
    pub residual: f64,
    pub bracket_history: Vec<(f64, f64)>,
}

pub(crate) struct MultistartOutcome {
    pub best_x: Vec<f64>,
    pub best_value: f64,
    /// Basin representatives: pairwise separated minimizers with values.
    pub basins: Vec<(Vec<f64>, f64)>,
    /// Search box actually used (configured or auto-grown).
    #[allow(dead_code)]
    pub radius: f64,
}

fn boundary_samples(dim: usize, radius: f64) -> Vec<Vec<f64>> {
    let mut pts = Vec::new();
    for i in 0..dim {
        for sign in [-1.0, 1.0] {
            let mut p = vec![0.0; dim];
            p[i] = sign * radius;
            pts.push(p);
        }
    }
    if dim >= 2 && dim <= 6 {
        for mask in 0..(1u32 << dim) {
            let p: Vec<f64> = (0..dim)
                .map(|i| if mask >> i & 1 == 1 { radius } else { -radius })
                .collect();
            pts.push(p);
        }
    }
    pts
}

fn auto_radius<F: Fn(&[f64]) -> f64>(f: &F, dim: usize) -> Result<f64, ScalarizeError> {
    let mut radius = 1.0f64;
    loop {
        // Unconstrained probes; a probe minimizer escaping the half-box is
        // direct evidence the box is too small.
        let mut probe_best = f64::INFINITY;
        let mut probe_inside = false;
        for scale in [0.0, 0.5, -0.5] {
            let start = vec![scale * radius; dim.max(1)];
            let start = &start[..dim];
            let res = local_descent(f, start, 1e-8, 300);
            if res.value < probe_best {
                probe_best = res.value;
                probe_inside = res.x.iter().all(|&c| c.abs() <= 0.5 * radius);
            }
        }

        let boundary_min = boundary_samples(dim, radius)
            .iter()
            .map(|p| f(p))
            .fold(f64::INFINITY, f64::min);

        let margin = 10.0f64.max(0.5 * probe_best.abs());
        if probe_inside && boundary_min > probe_best + margin {
            return Ok(radius);
        }
        radius *= 2.0;
        if radius > 1e8 {
            return Err(ScalarizeError::CoercivityNotObserved { radius });
        }
    }
}

/// Multi-start local descent inside a (possibly auto-grown) box.
/// Deterministic for a fixed (seed, salt, extra_starts).
pub(crate) fn multistart_minimize<F: Fn(&[f64]) -> f64 + Sync>(
    f: &F,
    dim: usize,
    search: &SearchConfig,
    salt: u64,
    extra_starts: &[Vec<f64>],
) -> Result<MultistartOutcome, ScalarizeError> {
    let radius = match search.box_radius {
        Some(r) => r,
        None => auto_radius(f, dim)?,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(search.seed ^ salt.rotate_left(17));
    let mut starts: Vec<Vec<f64>> = vec![vec![0.0; dim]];
    starts.extend(extra_starts.iter().cloned());
    for _ in 1..search.starts.max(2) {
        starts.push((0..dim).map(|_| rng.gen_range(-radius..radius)).collect());
    }

    let results: Vec<_> = starts
        .par_iter()
        .map(|x0| local_descent(f, x0, search.descent_tol, 600))
        .collect();

    let mut order: Vec<usize> = (0..results.len()).collect();
    order.sort_by(|&i, &j| {
        results[i]
            .value
            .partial_cmp(&results[j].value)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });

    // greedy basin clustering in ascending objective order
    let mut basins: Vec<(Vec<f64>, f64)> = Vec::new();
    for &i in &order {
        let r = &results[i];
        let distinct = basins.iter().all(|(x, _)| {
            let d2: f64 = x.iter().zip(&r.x).map(|(a, b)| (a - b) * (a - b)).sum();
            d2.sqrt() > search.separation
        });
        if distinct {
            basins.push((r.x.clone(), r.value));
        }
    }

    let best = &results[order[0]];
    // A best point hugging the box boundary means the box did not contain
    // the minimum.
    if best.x.iter().any(|&c| c.abs() > 0.995 * radius) {
        return Err(ScalarizeError::CoercivityNotObserved { radius });
    }

    Ok(MultistartOutcome {
        best_x: best.x.clone(),
        best_value: best.value,
        basins,
        radius,
    })
}

/// Globally minimizes φ + λψ by multi-start descent and re-evaluates φ, ψ at
/// the winner. Flags suspected non-uniqueness when a second basin ties the
/// best objective.
pub fn minimize_penalized(
    pair: &FunctionalPair,
    lambda: f64,
    search: &SearchConfig,
) -> Result<PenalizedMinimum, ScalarizeError> {
    let in_interval = lambda > pair.lambda_lo
        && match pair.lambda_hi {
            ExtReal::PosInf => true,
            ExtReal::Finite(b) => lambda < b,
            ExtReal::NegInf => false,
        };
    if !in_interval {
        return Err(ScalarizeError::LambdaOutOfInterval {
            lambda,
            lo: pair.lambda_lo,
            hi: pair.lambda_hi,
        });
    }

    let phi = pair.phi.clone();
    let psi = pair.psi.clone();
    let objective = move |y: &[f64]| (phi)(y) + lambda * (psi)(y);
    let outcome = multistart_minimize(&objective, pair.dim, search, lambda.to_bits(), &[])?;

    let phi_value = pair.phi_checked(&outcome.best_x)?;
    let psi_value = pair.psi_checked(&outcome.best_x)?;

    let second = outcome.basins.get(1).map(|(_, v)| *v);
    let suspected = second
        .map(|v| (v - outcome.best_value).abs() <= search.tie_tol)
        .unwrap_or(false);

    Ok(PenalizedMinimum {
        lambda,
        y_hat: outcome.best_x,
        phi_value,
        psi_value,
        objective_value: outcome.best_value,
        certificate: Certificate {
            starts: search.starts,
            distinct_basins: outcome.basins.len(),
            best_objective: outcome.best_value,
            second_objective: second,
            suspected_nonuniqueness: suspected,
        },
    })
}

/// ψ(ŷ_λ) along a list of multipliers; the diagnostic curve behind the
/// λ_r bisection.
pub fn psi_along_lambda(
    pair: &FunctionalPair,
    lambdas: &[f64],
    search: &SearchConfig,
) -> Result<Vec<(f64, f64)>, ScalarizeError> {
    lambdas
        .iter()
        .map(|&l| minimize_penalized(pair, l, search).map(|m| (l, m.psi_value)))
        .collect()
}

/// Finds λ_r with ψ(ŷ_{λ_r}) = r by bisection on the nonincreasing map
/// λ ↦ ψ(ŷ_λ). A bracket collapsing to machine width with the residual
/// still large is reported as a level jump (the two-minima failure mode).
pub fn find_lambda_r(
    pair: &FunctionalPair,
    r: f64,
    tol: f64,
    search: &SearchConfig,
) -> Result<MultiplierResult, ScalarizeError> {
    assert!(tol > 0.0, "tolerance must be positive");
    let ab = alpha_beta(pair, &DeclaredOracle)?;
    if !ab.admits(r) {
        return Err(ScalarizeError::LevelOutOfRange { r, alpha: ab.alpha, beta: ab.beta });
    }

    let a = pair.lambda_lo;
    let mut lo = a;
    let mut hi = match pair.lambda_hi {
        ExtReal::Finite(b) => b,
        ExtReal::PosInf => {
            // geometric growth until psi at the minimum drops below r
            let mut hi = if a > 0.0 { 2.0 * a } else { 1.0 };
            loop {
                let m = minimize_penalized(pair, hi, search)?;
                if m.psi_value <= r {
                    break hi;
                }
                hi *= 2.0;
                if hi > 1e12 {
                    return Err(ScalarizeError::BracketOverflow);
                }
            }
        }
        ExtReal::NegInf => unreachable!("b cannot be -inf"),
    };

    let mut history = Vec::new();
    for _ in 0..search.max_bisect_iters {
        history.push((lo, hi));
        let mid = 0.5 * (lo + hi);
        let minimum = minimize_penalized(pair, mid, search)?;
        let residual = (minimum.psi_value - r).abs();
        if residual <= tol {
            return Ok(MultiplierResult { lambda_r: mid, minimum, residual, bracket_history: history });
        }
        if minimum.psi_value > r {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi.abs().max(1.0) {
            return Err(ScalarizeError::LevelJump { lo, hi });
        }
    }
    Err(ScalarizeError::LevelJump { lo, hi })
}

/// inf over {ψ = r} of φ, via Lagrangian scalarization: the value is
/// φ(ŷ_{λ_r}).
pub fn level_set_infimum(
    pair: &FunctionalPair,
    r: f64,
    tol: f64,
    search: &SearchConfig,
) -> Result<f64, ScalarizeError> {
    Ok(find_lambda_r(pair, r, tol, search)?.minimum.phi_value)
}

/// Grid parameters for the independent level-set oracle.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct DirectGrid {
    /// Number of rays from the ψ-minimizer (d = 2).
    pub rays: usize,
    /// Scan points for the 1-D root sweep.
    pub scan_points: usize,
    pub root_tol: f64,
}

impl Default for DirectGrid {
    fn default() -> Self {
        DirectGrid { rays: 720, scan_points: 8192, root_tol: 1e-12 }
    }
}

fn bisect_root<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    // f(lo) <= 0 < f(hi)
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < tol * hi.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Independent oracle for the level-set infimum: parameterizes {ψ = r} by
/// dense root-finding (1-D sweep, or rays from a ψ-minimizer in 2-D) and
/// scans φ on it. Used only to cross-check `level_set_infimum`.
pub fn level_set_infimum_direct(
    pair: &FunctionalPair,
    r: f64,
    grid: &DirectGrid,
) -> Result<f64, ScalarizeError> {
    match pair.dim {
        1 => direct_1d(pair, r, grid),
        2 => direct_2d(pair, r, grid),
        d => Err(ScalarizeError::DimensionTooLarge(d)),
    }
}

fn direct_1d(pair: &FunctionalPair, r: f64, grid: &DirectGrid) -> Result<f64, ScalarizeError> {
    let g = |y: f64| pair.psi(&[y]) - r;
    let mut reach = 1.0f64;
    while !(g(reach) > 0.0 && g(-reach) > 0.0) {
        reach *= 2.0;
        if reach > 1e8 {
            return Err(ScalarizeError::LevelSetNotFound);
        }
    }

    let n = grid.scan_points.max(16);
    let mut best = f64::INFINITY;
    let mut prev_y = -reach;
    let mut prev_g = g(prev_y);
    for i in 1..=n {
        let y = -reach + 2.0 * reach * (i as f64) / (n as f64);
        let gy = g(y);
        if prev_g == 0.0 {
            best = best.min(pair.phi_checked(&[prev_y])?);
        }
        if prev_g * gy < 0.0 {
            let (lo, hi) = if prev_g < 0.0 { (prev_y, y) } else { (y, prev_y) };
            // orient so g(lo) < 0 < g(hi); bisect on the oriented segment
            let root = bisect_signed(&g, lo, hi, grid.root_tol);
            best = best.min(pair.phi_checked(&[root])?);
        }
        prev_y = y;
        prev_g = gy;
    }
    if best.is_finite() {
        Ok(best)
    } else {
        Err(ScalarizeError::LevelSetNotFound)
    }
}

fn bisect_signed<F: Fn(f64) -> f64>(g: &F, mut neg: f64, mut pos: f64, tol: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (neg + pos);
        if g(mid) > 0.0 {
            pos = mid;
        } else {
            neg = mid;
        }
        if (pos - neg).abs() < tol * pos.abs().max(1.0) {
            break;
        }
    }
    0.5 * (neg + pos)
}

fn direct_2d(pair: &FunctionalPair, r: f64, grid: &DirectGrid) -> Result<f64, ScalarizeError> {
    // center the rays at a ψ-minimizer
    let psi = pair.psi.clone();
    let psi_obj = move |y: &[f64]| (psi)(y);
    let search = SearchConfig { starts: 16, ..SearchConfig::default() };
    let center = multistart_minimize(&psi_obj, 2, &search, 0x9e3779b97f4a7c15, &[])?.best_x;
    if pair.psi(&center) > r + 1e-12 * r.abs().max(1.0) {
        return Err(ScalarizeError::LevelSetNotFound);
    }

    let phi_on_ray = |theta: f64| -> Result<Option<f64>, ScalarizeError> {
        let dir = [theta.cos(), theta.sin()];
        let g = |t: f64| pair.psi(&[center[0] + t * dir[0], center[1] + t * dir[1]]) - r;
        let mut t_hi = 1e-3;
        while g(t_hi) <= 0.0 {
            t_hi *= 2.0;
            if t_hi > 1e8 {
                return Ok(None);
            }
        }
        let t = bisect_root(&g, 0.0, t_hi, grid.root_tol);
        let point = [center[0] + t * dir[0], center[1] + t * dir[1]];
        Ok(Some(pair.phi_checked(&point)?))
    };

    let n = grid.rays.max(8);
    let mut best = f64::INFINITY;
    let mut best_theta = 0.0;
    for k in 0..n {
        let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
        if let Some(v) = phi_on_ray(theta)? {
            if v < best {
                best = v;
                best_theta = theta;
            }
        }
    }
    if !best.is_finite() {
        return Err(ScalarizeError::LevelSetNotFound);
    }

    // golden-section polish around the best ray
    let step = 2.0 * std::f64::consts::PI / (n as f64);
    let (mut lo, mut hi) = (best_theta - step, best_theta + step);
    let gr = 0.5 * (5.0f64.sqrt() - 1.0);
    let eval = |theta: f64| phi_on_ray(theta).map(|v| v.unwrap_or(f64::INFINITY));
    let mut x1 = hi - gr * (hi - lo);
    let mut x2 = lo + gr * (hi - lo);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    for _ in 0..60 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = eval(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = eval(x2)?;
        }
    }
    Ok(best.min(f1).min(f2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::{
        eta_expm1, make_canonical_instance, make_two_minima_instance, make_exp_growth_instance,
        make_linear_quadratic_instance,
    };

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn canonical_penalized_minimum() {
        let pair = make_canonical_instance();
        let m = minimize_penalized(&pair, 0.25, &cfg()).unwrap();
        assert!((m.y_hat[0] - 2.0).abs() < 1e-6, "{:?}", m.y_hat);
        assert!((m.phi_value + 2.0).abs() < 1e-6);
        assert!((m.psi_value - 4.0).abs() < 1e-6);
        assert!(!m.certificate.suspected_nonuniqueness);
    }

    #[test]
    fn two_minima_unique_above_jump() {
        let pair = make_two_minima_instance();
        let m = minimize_penalized(&pair, 1.0, &cfg()).unwrap();
        assert!(m.y_hat[0].abs() < 1e-6);
        assert!(m.objective_value.abs() < 1e-10);
    }

    #[test]
    fn two_minima_tie_at_jump() {
        let pair = make_two_minima_instance();
        let m = minimize_penalized(&pair, 0.125, &cfg()).unwrap();
        assert!(
            m.certificate.suspected_nonuniqueness,
            "expected tie between basins 0 and 4: {:?}",
            m.certificate
        );
    }

    #[test]
    fn psi_curve_canonical() {
        let pair = make_canonical_instance();
        let curve = psi_along_lambda(&pair, &[0.1, 0.25, 0.5], &cfg()).unwrap();
        let expected = [25.0, 4.0, 1.0];
        for ((_, psi), want) in curve.iter().zip(expected) {
            assert!((psi - want).abs() < 1e-5 * want, "psi {psi} want {want}");
        }
    }

    #[test]
    fn psi_curve_deterministic() {
        let pair = make_canonical_instance();
        let a = psi_along_lambda(&pair, &[0.3, 0.3], &cfg()).unwrap();
        assert_eq!(a[0].1.to_bits(), a[1].1.to_bits());
    }

    #[test]
    fn two_minima_psi_jump() {
        let pair = make_two_minima_instance();
        let curve = psi_along_lambda(&pair, &[0.05, 0.2], &cfg()).unwrap();
        assert!((curve[0].1 - 100.0).abs() < 1e-4, "{:?}", curve);
        assert!(curve[1].1.abs() < 1e-8, "{:?}", curve);
    }

    #[test]
    fn lambda_r_canonical() {
        let pair = make_canonical_instance();
        let m = find_lambda_r(&pair, 4.0, 1e-7, &cfg()).unwrap();
        assert!((m.lambda_r - 0.25).abs() < 1e-6, "lambda {}", m.lambda_r);
        assert!((m.minimum.y_hat[0] - 2.0).abs() < 1e-5);

        let m1 = find_lambda_r(&pair, 1.0, 1e-7, &cfg()).unwrap();
        assert!((m1.lambda_r - 0.5).abs() < 1e-6);
        assert!((m1.minimum.y_hat[0] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn two_minima_level_jump() {
        let pair = make_two_minima_instance();
        match find_lambda_r(&pair, 1.0, 1e-7, &cfg()) {
            Err(ScalarizeError::LevelJump { lo, hi }) => {
                assert!(lo >= 0.12 && hi <= 0.13, "jump at [{lo}, {hi}]");
            }
            other => panic!("expected level jump, got {other:?}"),
        }
    }

    #[test]
    fn level_infimum_canonical() {
        let pair = make_canonical_instance();
        let v = level_set_infimum(&pair, 4.0, 1e-7, &cfg()).unwrap();
        assert!((v + 2.0).abs() < 1e-6);
    }

    #[test]
    fn level_infimum_exp_growth() {
        let pair = make_exp_growth_instance(vec![-2.0], eta_expm1(), 2.0).unwrap();
        let r = std::f64::consts::E - 1.0;
        let v = level_set_infimum(&pair, r, 1e-7, &cfg()).unwrap();
        assert!((v + 2.0).abs() < 1e-4, "value {v}");
    }

    #[test]
    fn level_infimum_linear_quadratic() {
        let pair = make_linear_quadratic_instance(vec![1.0, 0.0], 1.0).unwrap();
        let v = level_set_infimum(&pair, 0.5 * 0.9, 1e-9, &cfg()).unwrap();
        // r < beta = 1/2 required; at r the infimum is −‖g‖√(2r)
        assert!((v + (2.0 * 0.45f64).sqrt()).abs() < 1e-5, "value {v}");
    }

    #[test]
    fn direct_oracle_matches() {
        let pair = make_canonical_instance();
        let grid = DirectGrid::default();
        let v = level_set_infimum_direct(&pair, 4.0, &grid).unwrap();
        assert!((v + 2.0).abs() < 1e-8, "direct {v}");

        let pair3 = make_exp_growth_instance(vec![-2.0], eta_expm1(), 2.0).unwrap();
        let r = std::f64::consts::E - 1.0;
        let v3 = level_set_infimum_direct(&pair3, r, &grid).unwrap();
        assert!((v3 + 2.0).abs() < 1e-8, "direct {v3}");
    }

    #[test]
    fn direct_oracle_degenerate_level() {
        // ψ = ‖y‖², r = 0: the level set is {0}
        let pair = make_linear_quadratic_instance(vec![1.0, 1.0], 1.0).unwrap();
        let v = level_set_infimum_direct(&pair, 0.0, &DirectGrid::default()).unwrap();
        assert!(v.abs() < 1e-6, "phi(0) = 0, got {v}");
    }

    #[test]
    fn out_of_range_rejected() {
        let pair = make_linear_quadratic_instance(vec![1.0, 0.0], 1.0).unwrap();
        // beta = 1/2, so r = 0.9 is inadmissible
        match find_lambda_r(&pair, 0.9, 1e-7, &cfg()) {
            Err(ScalarizeError::LevelOutOfRange { .. }) => {}
            other => panic!("expected out-of-range, got {other:?}"),
        }
    }

    #[test]
    fn monotone_psi_property() {
        let pair = make_canonical_instance();
        let lambdas: Vec<f64> = (1..=20).map(|k| 0.05 * k as f64).collect();
        let curve = psi_along_lambda(&pair, &lambdas, &cfg()).unwrap();
        for w in curve.windows(2) {
            assert!(w[1].1 <= w[0].1 + 2e-7, "psi not monotone: {:?}", w);
        }
    }
}
