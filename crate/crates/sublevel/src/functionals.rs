//! Functional pairs (φ, ψ) on Y = R^d, the α/β range endpoints, and the
//! named instance families used throughout the toolkit.

use crate::descent::local_descent;
use crate::ext::{inf_over, sup_over, ExtReal};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

/// A total scalar functional on R^d.
pub type ObjectiveFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
/// A scalar map on R.
pub type ScalarMap = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Error)]
pub enum FunctionalError {
    #[error("non-finite evaluation of {which} at {point:?}")]
    NonFiniteEvaluation { which: &'static str, point: Vec<f64> },
    #[error("instance construction failed: {0}")]
    Construction(String),
    #[error("alpha-beta undetermined: {0}")]
    AlphaBetaUndetermined(String),
    #[error("grid too large: {0} points requested")]
    GridTooLarge(u64),
}

/// A declared set of global minimizers, decided analytically per family.
#[derive(Clone, Debug)]
pub enum MinimizerSet {
    Empty,
    Points(Vec<Vec<f64>>),
}

/// Closed-form data for instances that have it; the numeric pipeline must
/// reproduce these values, it never assumes them.
#[derive(Clone)]
pub struct AnalyticMetadata {
    /// λ ↦ ŷ_λ, the unique global minimizer of φ + λψ.
    pub minimizer: Option<Arc<dyn Fn(f64) -> Vec<f64> + Send + Sync>>,
    /// r ↦ λ_r.
    pub lambda_for_level: Option<ScalarMap>,
    /// r ↦ inf over {ψ = r} of φ.
    pub level_set_infimum: Option<ScalarMap>,
    pub alpha: ExtReal,
    pub beta: ExtReal,
}

/// The pair (φ, ψ) with growth exponent p and multiplier interval ]a, b[.
#[derive(Clone)]
pub struct FunctionalPair {
    pub dim: usize,
    pub family: String,
    pub phi: ObjectiveFn,
    pub psi: ObjectiveFn,
    pub growth_exponent: f64,
    /// Lower endpoint a of the multiplier interval; finite, ≥ 0.
    pub lambda_lo: f64,
    /// Upper endpoint b; may be +∞.
    pub lambda_hi: ExtReal,
    /// Declared inf over Y of ψ.
    pub psi_inf: ExtReal,
    /// Declared sup over Y of ψ.
    pub psi_sup: ExtReal,
    /// Declared M_a (global minima of φ + aψ).
    pub minima_at_a: MinimizerSet,
    /// Declared M_b; always empty when b = +∞.
    pub minima_at_b: MinimizerSet,
    pub analytic: Option<AnalyticMetadata>,
    /// Set for instances built to violate the uniqueness hypothesis.
    pub hypothesis_violation_expected: bool,
}

impl FunctionalPair {
    pub fn phi(&self, y: &[f64]) -> f64 {
        (self.phi)(y)
    }

    pub fn psi(&self, y: &[f64]) -> f64 {
        (self.psi)(y)
    }

    pub fn phi_checked(&self, y: &[f64]) -> Result<f64, FunctionalError> {
        let v = (self.phi)(y);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(FunctionalError::NonFiniteEvaluation { which: "phi", point: y.to_vec() })
        }
    }

    pub fn psi_checked(&self, y: &[f64]) -> Result<f64, FunctionalError> {
        let v = (self.psi)(y);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(FunctionalError::NonFiniteEvaluation { which: "psi", point: y.to_vec() })
        }
    }
}

/// Which term of the max/min produced a component of (α, β).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlphaSource {
    InfPsi,
    SupOverMb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BetaSource {
    SupPsi,
    InfOverMa,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlphaBeta {
    pub alpha: ExtReal,
    pub beta: ExtReal,
    pub alpha_source: AlphaSource,
    pub beta_source: BetaSource,
    pub m_a_empty: bool,
    pub m_b_empty: bool,
    /// True when ]α, β[ has no interior, i.e. the identity has no admissible r.
    pub identity_range_empty: bool,
}

impl AlphaBeta {
    pub fn admits(&self, r: f64) -> bool {
        let r = ExtReal::Finite(r);
        self.alpha.cmp_ext(r) == std::cmp::Ordering::Less
            && r.cmp_ext(self.beta) == std::cmp::Ordering::Less
    }
}

/// Supplies M_a and M_b. Families carry declared sets (numerics cannot
/// certify emptiness); alternative oracles exist for tests.
pub trait MinimizerOracle {
    fn minima_at_a(&self, pair: &FunctionalPair) -> Result<MinimizerSet, FunctionalError>;
    fn minima_at_b(&self, pair: &FunctionalPair) -> Result<MinimizerSet, FunctionalError>;
}

/// The default oracle: reads the sets each constructor declared.
pub struct DeclaredOracle;

impl MinimizerOracle for DeclaredOracle {
    fn minima_at_a(&self, pair: &FunctionalPair) -> Result<MinimizerSet, FunctionalError> {
        Ok(pair.minima_at_a.clone())
    }

    fn minima_at_b(&self, pair: &FunctionalPair) -> Result<MinimizerSet, FunctionalError> {
        if pair.lambda_hi == ExtReal::PosInf {
            // M_∞ = ∅ by definition.
            return Ok(MinimizerSet::Empty);
        }
        Ok(pair.minima_at_b.clone())
    }
}

/// α = max{inf_Y ψ, sup_{M_b} ψ}, β = min{sup_Y ψ, inf_{M_a} ψ}, with the
/// empty-set conventions applied through `ExtReal`.
pub fn alpha_beta(
    pair: &FunctionalPair,
    oracle: &dyn MinimizerOracle,
) -> Result<AlphaBeta, FunctionalError> {
    let m_a = oracle.minima_at_a(pair)?;
    let m_b = oracle.minima_at_b(pair)?;

    let psi_on = |set: &MinimizerSet| -> Result<Vec<f64>, FunctionalError> {
        match set {
            MinimizerSet::Empty => Ok(vec![]),
            MinimizerSet::Points(pts) => {
                pts.iter().map(|y| pair.psi_checked(y)).collect()
            }
        }
    };

    let sup_mb = sup_over(psi_on(&m_b)?);
    let inf_ma = inf_over(psi_on(&m_a)?);

    let alpha = pair.psi_inf.max_ext(sup_mb);
    let alpha_source = if pair.psi_inf.cmp_ext(sup_mb) == std::cmp::Ordering::Less {
        AlphaSource::SupOverMb
    } else {
        AlphaSource::InfPsi
    };
    let beta = pair.psi_sup.min_ext(inf_ma);
    let beta_source = if inf_ma.cmp_ext(pair.psi_sup) == std::cmp::Ordering::Less {
        BetaSource::InfOverMa
    } else {
        BetaSource::SupPsi
    };

    Ok(AlphaBeta {
        alpha,
        beta,
        alpha_source,
        beta_source,
        m_a_empty: matches!(m_a, MinimizerSet::Empty),
        m_b_empty: matches!(m_b, MinimizerSet::Empty),
        identity_range_empty: alpha.cmp_ext(beta) != std::cmp::Ordering::Less,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrowthBound {
    pub bound: f64,
    /// The running infimum was still decreasing at the box boundary: the
    /// scan cannot rule out failure of the growth condition.
    pub boundary_decreasing: bool,
}

/// Estimates inf over the box of min{φ(y), ψ(y)} / (1 + ‖y‖^p) on a uniform
/// grid. A falsifier, not a prover: it certifies the growth condition only up
/// to the scanned box.
pub fn growth_lower_bound(
    pair: &FunctionalPair,
    box_radius: f64,
    grid_density: usize,
) -> Result<GrowthBound, FunctionalError> {
    assert!(box_radius > 0.0, "box_radius must be positive");
    assert!(grid_density >= 2, "grid_density must be at least 2");

    let total = (grid_density as u64).pow(pair.dim as u32);
    if total > 20_000_000 {
        return Err(FunctionalError::GridTooLarge(total));
    }

    let p = pair.growth_exponent;
    let mut idx = vec![0usize; pair.dim];
    let mut best = f64::INFINITY;
    let mut best_on_boundary = false;
    let mut point = vec![0.0; pair.dim];
    loop {
        let mut on_boundary = false;
        for (k, &i) in idx.iter().enumerate() {
            point[k] = -box_radius + 2.0 * box_radius * (i as f64) / ((grid_density - 1) as f64);
            if i == 0 || i == grid_density - 1 {
                on_boundary = true;
            }
        }
        let phi = pair.phi_checked(&point)?;
        let psi = pair.psi_checked(&point)?;
        let nrm = point.iter().map(|a| a * a).sum::<f64>().sqrt();
        let value = phi.min(psi) / (1.0 + nrm.powf(p));
        if value < best {
            best = value;
            best_on_boundary = on_boundary;
        }

        // advance multi-index
        let mut k = 0;
        loop {
            if k == pair.dim {
                return Ok(GrowthBound { bound: best, boundary_decreasing: best_on_boundary });
            }
            idx[k] += 1;
            if idx[k] < grid_density {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(a: &[f64]) -> f64 {
    dot(a, a)
}

/// d=1, φ(y) = −y, ψ(y) = y². Closed forms: ŷ_λ = 1/(2λ), λ_r = 1/(2√r),
/// level-set infimum −√r.
pub fn make_canonical_instance() -> FunctionalPair {
    FunctionalPair {
        dim: 1,
        family: "canonical".into(),
        phi: Arc::new(|y: &[f64]| -y[0]),
        psi: Arc::new(|y: &[f64]| y[0] * y[0]),
        growth_exponent: 2.0,
        lambda_lo: 0.0,
        lambda_hi: ExtReal::PosInf,
        psi_inf: ExtReal::Finite(0.0),
        psi_sup: ExtReal::PosInf,
        minima_at_a: MinimizerSet::Empty, // φ alone is unbounded below
        minima_at_b: MinimizerSet::Empty,
        analytic: Some(AnalyticMetadata {
            minimizer: Some(Arc::new(|l| vec![1.0 / (2.0 * l)])),
            lambda_for_level: Some(Arc::new(|r| 1.0 / (2.0 * r.sqrt()))),
            level_set_infimum: Some(Arc::new(|r| -r.sqrt())),
            alpha: ExtReal::Finite(0.0),
            beta: ExtReal::PosInf,
        }),
        hypothesis_violation_expected: false,
    }
}

/// d=1, φ(y) = y² for y ≤ 1 and 2 − y for y > 1, ψ(y) = y². At λ = 1/8 the
/// penalized functional has two global minima (0 and 4), so the identity
/// fails for r in the jumped-over band; this instance is the toolkit's
/// regression test of that failure mode.
pub fn make_two_minima_instance() -> FunctionalPair {
    FunctionalPair {
        dim: 1,
        family: "two-minima".into(),
        phi: Arc::new(|y: &[f64]| if y[0] <= 1.0 { y[0] * y[0] } else { 2.0 - y[0] }),
        psi: Arc::new(|y: &[f64]| y[0] * y[0]),
        growth_exponent: 2.0,
        lambda_lo: 0.0,
        lambda_hi: ExtReal::PosInf,
        psi_inf: ExtReal::Finite(0.0),
        psi_sup: ExtReal::PosInf,
        minima_at_a: MinimizerSet::Empty,
        minima_at_b: MinimizerSet::Empty,
        analytic: Some(AnalyticMetadata {
            minimizer: None,
            lambda_for_level: None,
            level_set_infimum: None,
            alpha: ExtReal::Finite(0.0),
            beta: ExtReal::PosInf,
        }),
        hypothesis_violation_expected: true,
    }
}

/// f(y) = a0·log(1 + (y⁺)^p) + Σ a_i (y⁺)^{q_i}, the broad family for the
/// Jensen-like inequality. f vanishes on (−∞, 0].
pub fn make_log_family_f(
    a0: f64,
    coeffs: &[f64],
    exponents: &[f64],
    p: f64,
) -> Result<ScalarMap, FunctionalError> {
    if !(p > 0.0) {
        return Err(FunctionalError::Construction("p must be positive".into()));
    }
    if a0 < 0.0 || coeffs.iter().any(|&a| a < 0.0) {
        return Err(FunctionalError::Construction("coefficients must be non-negative".into()));
    }
    if coeffs.len() != exponents.len() {
        return Err(FunctionalError::Construction(
            "coeffs and exponents must have equal length".into(),
        ));
    }
    if a0 + coeffs.iter().sum::<f64>() <= 0.0 {
        return Err(FunctionalError::Construction("at least one coefficient must be positive".into()));
    }
    if exponents.iter().any(|&q| !(q > 0.0 && q < p)) {
        return Err(FunctionalError::Construction(format!(
            "every exponent must lie in (0, {p})"
        )));
    }
    let coeffs = coeffs.to_vec();
    let exponents = exponents.to_vec();
    Ok(Arc::new(move |y: f64| {
        let yp = y.max(0.0);
        let mut v = a0 * (1.0 + yp.powf(p)).ln();
        for (a, q) in coeffs.iter().zip(&exponents) {
            v += a * yp.powf(*q);
        }
        v
    }))
}

/// A strictly increasing, strictly convex scalar map with a supplied inverse.
#[derive(Clone)]
pub struct EtaMap {
    pub name: String,
    pub forward: ScalarMap,
    pub inverse: ScalarMap,
}

/// η(t) = e^t − 1.
pub fn eta_expm1() -> EtaMap {
    EtaMap {
        name: "expm1".into(),
        forward: Arc::new(|t| t.exp_m1()),
        inverse: Arc::new(|s| s.ln_1p()),
    }
}

/// φ(y) = ⟨c, y⟩ linear and non-zero, ψ(y) = η(‖y‖^q); the level-set
/// infimum has the closed form −‖c‖·(η⁻¹(r))^{1/q}.
pub fn make_exp_growth_instance(
    c: Vec<f64>,
    eta: EtaMap,
    q: f64,
) -> Result<FunctionalPair, FunctionalError> {
    if c.is_empty() || norm2(&c) == 0.0 {
        return Err(FunctionalError::Construction("c must be a non-zero vector".into()));
    }
    if !(q > 1.0) {
        return Err(FunctionalError::Construction("q must exceed 1".into()));
    }
    let dim = c.len();
    let c_norm = norm2(&c).sqrt();
    let alpha = (eta.forward)(0.0);
    let phi_c = c.clone();
    let eta_fwd = eta.forward.clone();
    let eta_inv = eta.inverse.clone();
    Ok(FunctionalPair {
        dim,
        family: format!("exp-growth[{}]", eta.name),
        phi: Arc::new(move |y: &[f64]| dot(&phi_c, y)),
        psi: {
            let eta_fwd = eta_fwd.clone();
            Arc::new(move |y: &[f64]| (eta_fwd)(norm2(y).sqrt().powf(q)))
        },
        growth_exponent: q.max(1.0),
        lambda_lo: 0.0,
        lambda_hi: ExtReal::PosInf,
        psi_inf: ExtReal::Finite(alpha),
        psi_sup: ExtReal::PosInf,
        minima_at_a: MinimizerSet::Empty, // linear φ has no global minima
        minima_at_b: MinimizerSet::Empty,
        analytic: Some(AnalyticMetadata {
            minimizer: None,
            lambda_for_level: None,
            level_set_infimum: Some(Arc::new(move |r| -c_norm * (eta_inv)(r).powf(1.0 / q))),
            alpha: ExtReal::Finite(alpha),
            beta: ExtReal::PosInf,
        }),
        hypothesis_violation_expected: false,
    })
}

/// φ(y) = ⟨g, y⟩ with Lipschitz gradient constant L (trivially, φ' ≡ g),
/// ψ(y) = ‖y‖²/2, multiplier interval ]L, +∞[. Here S = {−g/L} and
/// ρ = ‖g‖²/L², giving β = ρ/2.
pub fn make_linear_quadratic_instance(g: Vec<f64>, l: f64) -> Result<FunctionalPair, FunctionalError> {
    if g.is_empty() || norm2(&g) == 0.0 {
        return Err(FunctionalError::Construction("g must be a non-zero vector".into()));
    }
    if !(l > 0.0) {
        return Err(FunctionalError::Construction("L must be positive".into()));
    }
    let dim = g.len();
    let g_norm = norm2(&g).sqrt();
    let rho = g_norm * g_norm / (l * l);
    let s_point: Vec<f64> = g.iter().map(|gi| -gi / l).collect();
    let phi_g = g.clone();
    let min_g = g.clone();
    Ok(FunctionalPair {
        dim,
        family: "linear-quadratic".into(),
        phi: Arc::new(move |y: &[f64]| dot(&phi_g, y)),
        psi: Arc::new(|y: &[f64]| 0.5 * norm2(y)),
        growth_exponent: 2.0,
        lambda_lo: l,
        lambda_hi: ExtReal::PosInf,
        psi_inf: ExtReal::Finite(0.0),
        psi_sup: ExtReal::PosInf,
        minima_at_a: MinimizerSet::Points(vec![s_point]),
        minima_at_b: MinimizerSet::Empty,
        analytic: Some(AnalyticMetadata {
            minimizer: Some(Arc::new(move |lam| min_g.iter().map(|gi| -gi / lam).collect())),
            lambda_for_level: Some(Arc::new(move |r| g_norm / (2.0 * r).sqrt())),
            level_set_infimum: Some(Arc::new(move |r| -g_norm * (2.0 * r).sqrt())),
            alpha: ExtReal::Finite(0.0),
            beta: ExtReal::Finite(rho / 2.0),
        }),
        hypothesis_violation_expected: false,
    })
}

/// Numeric cross-check of the linear-quadratic metadata: computes S by minimizing
/// ‖φ'(y) + L y‖² (finite-difference φ') from several starts and returns the
/// smallest ‖y‖² over the stationary points found.
pub fn linear_quadratic_rho_numeric(pair: &FunctionalPair, l: f64) -> f64 {
    let phi = pair.phi.clone();
    let residual = move |y: &[f64]| {
        let grad = crate::descent::fd_gradient(&|z: &[f64]| (phi)(z), y);
        grad.iter().zip(y).map(|(gi, yi)| (gi + l * yi).powi(2)).sum::<f64>()
    };
    let mut best = f64::INFINITY;
    let dim = pair.dim;
    for k in 0..8 {
        let scale = 0.5 * (k as f64 + 1.0);
        let start: Vec<f64> =
            (0..dim).map(|i| if (i + k) % 2 == 0 { scale } else { -scale }).collect();
        let res = local_descent(&residual, &start, 1e-13, 800);
        if res.value < 1e-14 {
            best = best.min(norm2(&res.x));
        }
    }
    best
}

/// The scalar pair (−f, |y|^p) the Jensen-like inequality reduces to, with
/// multiplier interval ]δ, +∞[.
pub fn make_jensen_pair(f: ScalarMap, p: f64, delta: f64, family: &str) -> FunctionalPair {
    FunctionalPair {
        dim: 1,
        family: family.to_string(),
        phi: Arc::new(move |y: &[f64]| -(f)(y[0])),
        psi: Arc::new(move |y: &[f64]| y[0].abs().powf(p)),
        growth_exponent: p,
        lambda_lo: delta,
        lambda_hi: ExtReal::PosInf,
        psi_inf: ExtReal::Finite(0.0),
        psi_sup: ExtReal::PosInf,
        // δ|y|^p − f(y) has no global minima: a standing hypothesis of the
        // family, declared rather than computed.
        minima_at_a: MinimizerSet::Empty,
        minima_at_b: MinimizerSet::Empty,
        analytic: Some(AnalyticMetadata {
            minimizer: None,
            lambda_for_level: None,
            level_set_infimum: None,
            alpha: ExtReal::Finite(0.0),
            beta: ExtReal::PosInf,
        }),
        hypothesis_violation_expected: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_minima_values() {
        let pair = make_two_minima_instance();
        assert_eq!(pair.phi(&[1.0]), 1.0);
        assert_eq!(pair.phi(&[0.0]), 0.0);
        assert_eq!(pair.psi(&[0.0]), 0.0);
        assert_eq!(pair.phi(&[3.0]), -1.0);
    }

    #[test]
    fn alpha_beta_canonical() {
        let pair = make_canonical_instance();
        let ab = alpha_beta(&pair, &DeclaredOracle).unwrap();
        assert_eq!(ab.alpha, ExtReal::Finite(0.0));
        assert_eq!(ab.beta, ExtReal::PosInf);
        assert_eq!(ab.alpha_source, AlphaSource::InfPsi);
        assert!(ab.m_a_empty && ab.m_b_empty);
        assert!(!ab.identity_range_empty);
    }

    #[test]
    fn alpha_beta_two_minima() {
        let pair = make_two_minima_instance();
        let ab = alpha_beta(&pair, &DeclaredOracle).unwrap();
        assert_eq!(ab.alpha, ExtReal::Finite(0.0));
        assert_eq!(ab.beta, ExtReal::PosInf);
    }

    #[test]
    fn alpha_beta_linear_quadratic() {
        // φ(y) = ⟨g, y⟩ on R², L = 1: α = 0, β = ρ/2 with ρ = ‖g‖²/L².
        let pair = make_linear_quadratic_instance(vec![1.0, 0.0], 1.0).unwrap();
        let ab = alpha_beta(&pair, &DeclaredOracle).unwrap();
        assert_eq!(ab.alpha, ExtReal::Finite(0.0));
        assert_eq!(ab.beta, ExtReal::Finite(0.5));
        assert_eq!(ab.beta_source, BetaSource::InfOverMa);
    }

    #[test]
    fn linear_quadratic_rho_matches_numeric_s() {
        let g = vec![3.0, -4.0];
        let l = 2.0;
        let pair = make_linear_quadratic_instance(g.clone(), l).unwrap();
        let rho_analytic = (g[0] * g[0] + g[1] * g[1]) / (l * l);
        let rho_num = linear_quadratic_rho_numeric(&pair, l);
        assert!((rho_num - rho_analytic).abs() <= 1e-9 * (1.0 + rho_analytic));
    }

    #[test]
    fn growth_bound_two_minima() {
        let pair = make_two_minima_instance();
        let b = growth_lower_bound(&pair, 100.0, 20_001).unwrap();
        assert!(b.bound.is_finite());
        assert!(b.bound >= -1.0, "bound {}", b.bound);
        assert!(!b.boundary_decreasing);
    }

    #[test]
    fn growth_bound_zero_functionals() {
        let mut pair = make_canonical_instance();
        pair.phi = Arc::new(|_| 0.0);
        pair.psi = Arc::new(|_| 0.0);
        let b = growth_lower_bound(&pair, 10.0, 101).unwrap();
        assert_eq!(b.bound, 0.0);
    }

    #[test]
    fn growth_bound_canonical() {
        let pair = make_canonical_instance();
        let b = growth_lower_bound(&pair, 100.0, 20_001).unwrap();
        assert!(b.bound.is_finite());
        // min{−y, y²}/(1 + y²) attains its infimum −1/2 at y = 1.
        assert!((b.bound + 0.5).abs() < 1e-3, "bound {}", b.bound);
    }

    #[test]
    fn growth_bound_reports_nonfinite_point() {
        let mut pair = make_canonical_instance();
        pair.phi = Arc::new(|y: &[f64]| 1.0 / y[0]); // +inf at 0 grid point... actually NaN-free but infinite
        let err = growth_lower_bound(&pair, 1.0, 3).unwrap_err();
        match err {
            FunctionalError::NonFiniteEvaluation { which, point } => {
                assert_eq!(which, "phi");
                assert_eq!(point, vec![0.0]);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn log_family_pair() {
        let f = make_log_family_f(1.0, &[], &[], 2.0).unwrap();
        assert_eq!(f(-5.0), 0.0);
        assert!((f(1.0) - 2.0f64.ln()).abs() < 1e-15);

        let lin = make_log_family_f(0.0, &[1.0], &[1.0], 2.0).unwrap();
        assert_eq!(lin(-3.0), 0.0);
        assert!((lin(2.5) - 2.5).abs() < 1e-15);

        assert!(make_log_family_f(0.0, &[1.0], &[3.0], 2.0).is_err()); // q ≥ p
        assert!(make_log_family_f(0.0, &[], &[], 2.0).is_err()); // all-zero
    }

    #[test]
    fn log_family_nonneg_and_hypothesis_shape() {
        let f = make_log_family_f(1.0, &[0.5], &[1.0], 2.0).unwrap();
        let mut prev = f64::INFINITY;
        for k in 1..200 {
            let y = 0.05 * k as f64;
            assert!(f(y) >= 0.0);
            // f'(y)/y^{p-1} strictly decreasing on ]0, ∞[ (the injectivity
            // hypothesis of the Jensen-type family), f' by central difference
            let h = 1e-6 * y;
            let fprime = (f(y + h) - f(y - h)) / (2.0 * h);
            let ratio = fprime / y;
            assert!(ratio < prev, "ratio not decreasing at y={y}");
            prev = ratio;
        }
        assert_eq!(f(0.0), 0.0);
    }

    #[test]
    fn exp_growth_closed_form_metadata() {
        let pair = make_exp_growth_instance(vec![-2.0], eta_expm1(), 2.0).unwrap();
        let meta = pair.analytic.as_ref().unwrap();
        let level = meta.level_set_infimum.as_ref().unwrap();
        let r = std::f64::consts::E - 1.0;
        assert!((level(r) + 2.0).abs() < 1e-12);
    }
}
