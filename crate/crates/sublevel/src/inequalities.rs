//! Property-based verification of the Jensen-type inequality, its log
//! log-bound variant, hypothesis validation for the broad scalar family, and the
//! strength comparison against naive Jensen for p < 1.

use crate::functionals::ScalarMap;
use crate::measure::{MeasureError, WeightedMeasureSpace};
use serde::{Deserialize, Serialize};

/// One scalar instance of the inequality: f, exponent p, the limsup value δ,
/// and a sampled (space, u).
#[derive(Clone)]
pub struct JensenInstance {
    pub f: ScalarMap,
    pub p: f64,
    pub delta: f64,
    pub space: WeightedMeasureSpace,
    /// Scalar step function: one value per atom.
    pub u: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub hypothesis: String,
    pub pass: bool,
    pub evidence: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct HypothesisGrid {
    pub y_max: f64,
    pub points: usize,
}

impl Default for HypothesisGrid {
    fn default() -> Self {
        HypothesisGrid { y_max: 1e4, points: 2000 }
    }
}

/// Sampled checks of the standing hypotheses: f ≤ 0 on (−∞, 0], the limsup
/// of f(y)/y^p consistent with δ, strict monotonicity of f'(y)/y^{p−1}, and
/// no interior global minimum of δ|y|^p − f(y) in the scanned box. A
/// semi-decision: evidence is returned even on failure.
pub fn validate_jensen_hypotheses(
    inst: &JensenInstance,
    grid: &HypothesisGrid,
) -> Vec<HypothesisCheck> {
    let f = &inst.f;
    let p = inst.p;
    let delta = inst.delta;
    let n = grid.points.max(64);
    let mut checks = Vec::new();

    // sup over (−∞, 0] of f ≤ 0
    {
        let mut worst = f64::NEG_INFINITY;
        let mut worst_y = 0.0;
        for i in 0..=n {
            let y = -grid.y_max * (i as f64) / (n as f64);
            let v = f(y);
            if v > worst {
                worst = v;
                worst_y = y;
            }
        }
        checks.push(HypothesisCheck {
            hypothesis: "sup f <= 0 on (-inf, 0]".into(),
            pass: worst <= 1e-12,
            evidence: format!("max f = {worst} at y = {worst_y}"),
        });
    }

    // f(y)/y^p consistent with limsup = δ: the ratio at the far end of a
    // log-spaced grid must have come down to δ (finite-sample tolerance)
    {
        let mut tail_max = f64::NEG_INFINITY;
        let y_lo = (grid.y_max / 1e3).max(1.0);
        let mut last_ratio = 0.0;
        for i in 0..=n {
            let t = (i as f64) / (n as f64);
            let y = y_lo * (grid.y_max / y_lo).powf(t);
            let ratio = f(y) / y.powf(p);
            tail_max = tail_max.max(ratio);
            last_ratio = ratio;
        }
        checks.push(HypothesisCheck {
            hypothesis: "limsup f(y)/y^p = delta".into(),
            pass: last_ratio <= delta + 0.05 * (1.0 + delta),
            evidence: format!(
                "f/y^p at y_max = {last_ratio}, tail max = {tail_max}, declared delta = {delta}"
            ),
        });
    }

    // f'(y)/y^{p-1} strictly decreasing (hence injective) on ]0, y_max]
    {
        let mut pass = true;
        let mut where_failed = None;
        let y_lo = 1e-3;
        let mut ys = Vec::with_capacity(n + 1);
        let mut ratios = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let t = (i as f64) / (n as f64);
            let y = y_lo * (grid.y_max / y_lo).powf(t);
            // floor the step: near y = 0 the difference f(y+h) - f(y-h) is
            // dominated by rounding in f itself, so a step proportional to y
            // turns an almost-flat (but decreasing) ratio into noise
            let h = 1e-6 * y.max(0.5);
            let fprime = (f(y + h) - f(y - h)) / (2.0 * h);
            ys.push(y);
            ratios.push(fprime / y.powf(p - 1.0));
        }
        // no significant pointwise increase, tolerating finite-difference noise
        for i in 1..ratios.len() {
            if ratios[i] >= ratios[i - 1] + 1e-6 * (1.0 + ratios[i - 1].abs()) {
                pass = false;
                where_failed.get_or_insert(ys[i]);
            }
        }
        // strict decrease over each decade of y, so a flat (non-injective)
        // ratio is rejected even though per-step noise tolerance is loose
        let stride = ((n as f64) / (grid.y_max / y_lo).log10()).round().max(1.0) as usize;
        for i in 0..ratios.len().saturating_sub(stride) {
            if ratios[i + stride] >= ratios[i] - 1e-6 * (1.0 + ratios[i].abs()) {
                pass = false;
                where_failed.get_or_insert(ys[i]);
            }
        }
        checks.push(HypothesisCheck {
            hypothesis: "f'(y)/y^{p-1} injective on ]0, +inf[".into(),
            pass,
            evidence: match where_failed {
                Some(y) => format!("monotonicity violated near y = {y}"),
                None => "strictly decreasing on the sampled grid".into(),
            },
        });
    }

    // δ|y|^p − f(y) has no global minimum inside the scanned box: the
    // running infimum must still be strictly decreasing at the boundary
    {
        let g = |y: f64| delta * y.abs().powf(p) - f(y);
        let mut interior_min = f64::INFINITY;
        for i in 0..n {
            let y = -grid.y_max + 2.0 * grid.y_max * (i as f64) / (n as f64);
            interior_min = interior_min.min(g(y));
        }
        let edge = g(grid.y_max);
        checks.push(HypothesisCheck {
            hypothesis: "delta*|y|^p - f(y) has no global minima".into(),
            pass: edge < interior_min,
            evidence: format!("value at boundary = {edge}, interior min = {interior_min}"),
        });
    }

    checks
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JensenCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub holds: bool,
}

/// lhs = ∫γ f(u) dμ against rhs = f((∫γ|u|^p dμ / ∫γ dμ)^{1/p}) · ∫γ dμ.
pub fn jensen_check(inst: &JensenInstance) -> Result<JensenCheck, MeasureError> {
    let total = inst.space.total_gamma();
    let mut lhs = 0.0;
    let mut moment = 0.0;
    for (atom, &ui) in inst.space.atoms().iter().zip(&inst.u) {
        let fv = (inst.f)(ui);
        if !fv.is_finite() {
            return Err(MeasureError::NonFiniteIntegrand { label: atom.label.clone() });
        }
        let w = atom.gamma * atom.mu;
        lhs += w * fv;
        moment += w * ui.abs().powf(inst.p);
    }
    let rhs = (inst.f)((moment / total).powf(1.0 / inst.p)) * total;
    let margin = rhs - lhs;
    let holds = lhs <= rhs + 1e-12 * (1.0 + rhs.abs());
    Ok(JensenCheck { lhs, rhs, margin, holds })
}

/// Equality detector for the Jensen-type check: the margin vanishes up to
/// roundoff. Equality is expected exactly at constant non-negative u.
pub fn is_equality_case(check: &JensenCheck) -> bool {
    check.margin.abs() <= 1e-9 * (1.0 + check.rhs.abs())
}

/// The configuration where equality is attained: u constant and ≥ 0.
pub fn is_constant_nonnegative(u: &[f64]) -> bool {
    !u.is_empty()
        && u.iter().all(|&x| x >= 0.0)
        && u.iter().all(|&x| (x - u[0]).abs() <= 1e-12 * (1.0 + u[0].abs()))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NaiveComparison {
    /// log(1 + ∫u^p dμ), the sharper bound.
    pub rhs12: f64,
    /// log(1 + (∫u dμ)^p), what classical Jensen gives for p < 1.
    pub rhs_naive: f64,
    /// ∫u^p dμ ≤ (∫u dμ)^p, the displayed comparison.
    pub power_mean_holds: bool,
    pub sharper: bool,
}

/// On a probability space (∫γ dμ = 1) with u ≥ 0 and 0 < p < 1, verifies
/// ∫u^p ≤ (∫u)^p and hence that the log bound beats naive Jensen.
pub fn naive_jensen_comparison(
    space: &WeightedMeasureSpace,
    u: &[f64],
    p: f64,
) -> Result<NaiveComparison, MeasureError> {
    let total = space.total_gamma();
    if (total - 1.0).abs() > 1e-9 {
        return Err(MeasureError::InvalidSpace(format!(
            "probability-space normalization required, total gamma mass = {total}"
        )));
    }
    assert!(p > 0.0 && p < 1.0, "requires 0 < p < 1");
    assert!(u.iter().all(|&x| x >= 0.0), "requires u >= 0");

    let mut int_up = 0.0;
    let mut int_u = 0.0;
    for (atom, &ui) in space.atoms().iter().zip(u) {
        let w = atom.gamma * atom.mu;
        int_up += w * ui.powf(p);
        int_u += w * ui;
    }
    let rhs12 = (1.0 + int_up).ln();
    let rhs_naive = (1.0 + int_u.powf(p)).ln();
    let guard = 1e-12 * (1.0 + int_u.powf(p).abs());
    Ok(NaiveComparison {
        rhs12,
        rhs_naive,
        power_mean_holds: int_up <= int_u.powf(p) + guard,
        sharper: rhs12 <= rhs_naive + 1e-12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::make_log_family_f;
    use std::sync::Arc;

    fn log_instance(space: WeightedMeasureSpace, u: Vec<f64>, p: f64) -> JensenInstance {
        JensenInstance {
            f: make_log_family_f(1.0, &[], &[], p).unwrap(),
            p,
            delta: 0.0,
            space,
            u,
        }
    }

    #[test]
    fn log_family_hypotheses_pass() {
        let space = WeightedMeasureSpace::unit_mu(&[1.0]).unwrap();
        let inst = log_instance(space, vec![0.0], 2.0);
        let checks = validate_jensen_hypotheses(&inst, &HypothesisGrid::default());
        assert!(checks.iter().all(|c| c.pass), "{checks:#?}");
    }

    #[test]
    fn hypotheses_reject_pure_power() {
        // f(y) = y² with p = 2: δ = 1 and f'/y = 2 is constant, not injective
        let space = WeightedMeasureSpace::unit_mu(&[1.0]).unwrap();
        let inst = JensenInstance {
            f: Arc::new(|y: f64| y * y),
            p: 2.0,
            delta: 1.0,
            space,
            u: vec![0.0],
        };
        let checks = validate_jensen_hypotheses(&inst, &HypothesisGrid::default());
        let injective = checks.iter().find(|c| c.hypothesis.contains("injective")).unwrap();
        assert!(!injective.pass);
        let no_min = checks.iter().find(|c| c.hypothesis.contains("global minima")).unwrap();
        assert!(!no_min.pass, "delta*y^2 - y^2 = 0 has minima everywhere");
    }

    #[test]
    fn hypotheses_sqrt_family() {
        let space = WeightedMeasureSpace::unit_mu(&[1.0]).unwrap();
        let inst = JensenInstance {
            f: Arc::new(|y: f64| y.max(0.0).sqrt()),
            p: 1.0,
            delta: 0.0,
            space,
            u: vec![0.0],
        };
        let checks = validate_jensen_hypotheses(&inst, &HypothesisGrid::default());
        assert!(checks.iter().all(|c| c.pass), "{checks:#?}");
    }

    #[test]
    fn jensen_equality_at_constants() {
        let space = WeightedMeasureSpace::unit_mu(&[0.4, 0.6]).unwrap();
        let inst = log_instance(space, vec![3.0, 3.0], 2.0);
        let c = jensen_check(&inst).unwrap();
        assert!(c.holds);
        assert!(c.margin.abs() < 1e-12, "equality at constants, margin {}", c.margin);
    }

    #[test]
    fn jensen_log_bound_example() {
        let space = WeightedMeasureSpace::unit_mu(&[0.5, 0.5]).unwrap();
        let inst = log_instance(space, vec![0.0, 2.0], 2.0);
        let c = jensen_check(&inst).unwrap();
        assert!((c.lhs - 0.5 * 5.0f64.ln()).abs() < 1e-12);
        assert!((c.rhs - 3.0f64.ln()).abs() < 1e-12);
        assert!(c.holds);
    }

    #[test]
    fn jensen_nonpositive_u() {
        let space = WeightedMeasureSpace::unit_mu(&[0.5, 0.5]).unwrap();
        let f = make_log_family_f(1.0, &[2.0], &[0.5], 2.0).unwrap();
        let inst = JensenInstance { f, p: 2.0, delta: 0.0, space, u: vec![-1.0, -4.0] };
        let c = jensen_check(&inst).unwrap();
        assert_eq!(c.lhs, 0.0);
        assert!(c.rhs >= 0.0);
        assert!(c.holds);
    }

    #[test]
    fn jensen_gamma_rescaling_invariance() {
        let space = WeightedMeasureSpace::unit_mu(&[0.3, 0.7]).unwrap();
        let scaled = space.scale_gamma(5.0).unwrap();
        let u = vec![0.5, 2.5];
        let a = jensen_check(&log_instance(space, u.clone(), 1.5)).unwrap();
        let b = jensen_check(&log_instance(scaled, u, 1.5)).unwrap();
        assert!((b.lhs - 5.0 * a.lhs).abs() < 1e-12);
        assert!((b.rhs - 5.0 * a.rhs).abs() < 1e-12);
    }

    #[test]
    fn naive_comparison_examples() {
        let space = WeightedMeasureSpace::unit_mu(&[0.5, 0.5]).unwrap();
        // constant: equality both sides
        let c = naive_jensen_comparison(&space, &[3.0, 3.0], 0.5).unwrap();
        assert!(c.power_mean_holds);
        assert!((c.rhs12 - c.rhs_naive).abs() < 1e-12);

        // u = {0, 4}, p = 1/2: ∫u^p = 1 ≤ √2 = (∫u)^p
        let c = naive_jensen_comparison(&space, &[0.0, 4.0], 0.5).unwrap();
        assert!(c.power_mean_holds);
        assert!(c.sharper);
        assert!((c.rhs12 - 2.0f64.ln()).abs() < 1e-12);
        assert!((c.rhs_naive - (1.0 + 2.0f64.sqrt()).ln()).abs() < 1e-12);
    }

    #[test]
    fn naive_comparison_requires_probability_space() {
        let space = WeightedMeasureSpace::unit_mu(&[0.5, 0.9]).unwrap();
        assert!(naive_jensen_comparison(&space, &[1.0, 1.0], 0.5).is_err());
    }
}
