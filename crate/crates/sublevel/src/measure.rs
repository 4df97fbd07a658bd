//! Discrete weighted measure spaces, step functions, the sub-level feasible
//! set, the brute-force constrained oracle, the proof-style witness
//! construction, and verification of the main identity.

use crate::functionals::{alpha_beta, DeclaredOracle, FunctionalError, FunctionalPair};
use crate::scalarize::{
    find_lambda_r, level_set_infimum_direct, multistart_minimize, DirectGrid, ScalarizeError,
    SearchConfig,
};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;
use std::time::Instant;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error(transparent)]
    Functional(#[from] FunctionalError),
    #[error(transparent)]
    Scalarize(#[from] ScalarizeError),
    #[error("invalid measure space: {0}")]
    InvalidSpace(String),
    #[error("non-finite integrand value at atom {label}")]
    NonFiniteIntegrand { label: String },
    #[error("dimension mismatch: space has {atoms} atoms of dimension {expected}, got {got}")]
    DimensionMismatch { atoms: usize, expected: usize, got: usize },
    #[error("witness construction failed: {0}")]
    WitnessInfeasible(String),
    #[error("no feasible point found (is r above alpha?)")]
    NoFeasiblePoint,
    #[error("decision dimension {0} exceeds the oracle cap of {1}")]
    OracleDimensionCap(usize, usize),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Atom {
    pub label: String,
    pub mu: f64,
    pub gamma: f64,
}

/// Finitely many atoms realizing (T, μ) with weight γ.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightedMeasureSpace {
    atoms: Vec<Atom>,
}

impl WeightedMeasureSpace {
    pub fn new(atoms: Vec<Atom>) -> Result<Self, MeasureError> {
        if atoms.is_empty() {
            return Err(MeasureError::InvalidSpace("at least one atom required".into()));
        }
        for a in &atoms {
            if !a.mu.is_finite() || !a.gamma.is_finite() || a.mu < 0.0 || a.gamma < 0.0 {
                return Err(MeasureError::InvalidSpace(format!(
                    "atom {} must have finite non-negative weights",
                    a.label
                )));
            }
        }
        let total: f64 = atoms.iter().map(|a| a.gamma * a.mu).sum();
        if !(total > 0.0) {
            return Err(MeasureError::InvalidSpace(
                "total gamma mass must be positive (gamma may not vanish)".into(),
            ));
        }
        Ok(WeightedMeasureSpace { atoms })
    }

    /// Atoms with μ = 1 and the given γ weights.
    pub fn unit_mu(gammas: &[f64]) -> Result<Self, MeasureError> {
        Self::new(
            gammas
                .iter()
                .enumerate()
                .map(|(i, &g)| Atom { label: format!("a{i}"), mu: 1.0, gamma: g })
                .collect(),
        )
    }

    /// Uniform discretization of an interval of the given length with γ ≡ 1.
    pub fn uniform_interval(cells: usize, length: f64) -> Result<Self, MeasureError> {
        if cells == 0 || !(length > 0.0) {
            return Err(MeasureError::InvalidSpace("cells > 0 and length > 0 required".into()));
        }
        let mu = length / cells as f64;
        Self::new(
            (0..cells)
                .map(|i| Atom { label: format!("x{i}"), mu, gamma: 1.0 })
                .collect(),
        )
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// ∫γ dμ = Σ γ_i μ_i.
    pub fn total_gamma(&self) -> f64 {
        self.atoms.iter().map(|a| a.gamma * a.mu).sum()
    }

    /// Same atoms with every γ scaled by c.
    pub fn scale_gamma(&self, c: f64) -> Result<Self, MeasureError> {
        Self::new(
            self.atoms
                .iter()
                .map(|a| Atom { label: a.label.clone(), mu: a.mu, gamma: c * a.gamma })
                .collect(),
        )
    }
}

/// An element of L^p(T, R^d): one point of R^d per atom.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepFunction {
    pub values: Vec<Vec<f64>>,
}

impl StepFunction {
    pub fn constant(space: &WeightedMeasureSpace, y: &[f64]) -> Self {
        StepFunction { values: vec![y.to_vec(); space.len()] }
    }

    pub fn dim(&self) -> usize {
        self.values.first().map(|v| v.len()).unwrap_or(0)
    }

    fn check(&self, space: &WeightedMeasureSpace, dim: usize) -> Result<(), MeasureError> {
        if self.values.len() != space.len() || self.values.iter().any(|v| v.len() != dim) {
            return Err(MeasureError::DimensionMismatch {
                atoms: space.len(),
                expected: dim,
                got: self.dim(),
            });
        }
        Ok(())
    }
}

/// Σ γ_i μ_i g(u_i).
pub fn integrate(
    space: &WeightedMeasureSpace,
    u: &StepFunction,
    g: &dyn Fn(&[f64]) -> f64,
) -> Result<f64, MeasureError> {
    u.check(space, u.dim())?;
    let mut sum = 0.0;
    for (atom, value) in space.atoms.iter().zip(&u.values) {
        let gv = g(value);
        if !gv.is_finite() {
            return Err(MeasureError::NonFiniteIntegrand { label: atom.label.clone() });
        }
        sum += atom.gamma * atom.mu * gv;
    }
    Ok(sum)
}

/// ∫γ ψ(u) dμ ≤ r ∫γ dμ, compared exactly on the computed sums.
pub fn is_feasible(
    space: &WeightedMeasureSpace,
    pair: &FunctionalPair,
    u: &StepFunction,
    r: f64,
) -> Result<bool, MeasureError> {
    u.check(space, pair.dim)?;
    let lhs = integrate(space, u, &|y| pair.psi(y))?;
    Ok(lhs <= r * space.total_gamma())
}

/// The proof's witness û: equal to ŷ_{λ_r} on the chosen atoms, 0 elsewhere.
/// Feasibility uses ψ(ŷ_{λ_r}) as computed rather than the target r, so a
/// residual-level overshoot of the multiplier solve cannot make the full-set
/// witness spuriously infeasible.
pub fn witness(
    space: &WeightedMeasureSpace,
    pair: &FunctionalPair,
    r: f64,
    lambda_result: &crate::scalarize::MultiplierResult,
    atom_subset: &[usize],
) -> Result<StepFunction, MeasureError> {
    let y_hat = &lambda_result.minimum.y_hat;
    let zero = vec![0.0; pair.dim];
    let mut values = vec![zero; space.len()];
    for &i in atom_subset {
        if i >= space.len() {
            return Err(MeasureError::WitnessInfeasible(format!("atom index {i} out of range")));
        }
        values[i] = y_hat.clone();
    }
    let u = StepFunction { values };

    let total = space.total_gamma();
    let con = integrate(space, &u, &|y| pair.psi(y))?;
    let level = lambda_result.minimum.psi_value;
    if con <= r * total || con <= level * total {
        Ok(u)
    } else {
        Err(MeasureError::WitnessInfeasible(format!(
            "subset mass too large: ∫γψ(û) = {con} > r·∫γ = {}",
            r * total
        )))
    }
}

/// Independent left-hand side of the identity: minimizes Σγμ φ(u_i) subject
/// to the sub-level constraint by exterior quadratic penalty with increasing
/// weight plus multi-start descent, then projects candidates back to
/// feasibility by scaling toward a feasible anchor.
///
/// Deliberately does not reuse the scalarization path.
pub fn sublevel_infimum_oracle(
    space: &WeightedMeasureSpace,
    pair: &FunctionalPair,
    r: f64,
    search: &SearchConfig,
) -> Result<f64, MeasureError> {
    const DIM_CAP: usize = 64;
    let n_atoms = space.len();
    let d = pair.dim;
    let n = n_atoms * d;
    if n > DIM_CAP {
        return Err(MeasureError::OracleDimensionCap(n, DIM_CAP));
    }

    let weights: Vec<f64> = space.atoms.iter().map(|a| a.gamma * a.mu).collect();
    let total = space.total_gamma();
    let budget = r * total;

    let phi = pair.phi.clone();
    let psi = pair.psi.clone();
    let w = weights.clone();
    let objective = Arc::new(move |u: &[f64]| -> f64 {
        let mut s = 0.0;
        for (i, wi) in w.iter().enumerate() {
            s += wi * (phi)(&u[i * d..(i + 1) * d]);
        }
        s
    });
    let w2 = weights.clone();
    let constraint = Arc::new(move |u: &[f64]| -> f64 {
        let mut s = 0.0;
        for (i, wi) in w2.iter().enumerate() {
            s += wi * (psi)(&u[i * d..(i + 1) * d]);
        }
        s - budget
    });

    // feasible anchor: the constant function at a ψ-minimizer
    let psi_solo = pair.psi.clone();
    let psi_obj = move |y: &[f64]| (psi_solo)(y);
    let y0 = multistart_minimize(&psi_obj, d, search, 0x517c_c1b7_2722_0a95, &[])?.best_x;
    let mut anchor = Vec::with_capacity(n);
    for _ in 0..n_atoms {
        anchor.extend_from_slice(&y0);
    }
    if (constraint)(&anchor) > 0.0 {
        return Err(MeasureError::NoFeasiblePoint);
    }

    let project = |u: &[f64]| -> Vec<f64> {
        if (constraint)(u) <= 0.0 {
            return u.to_vec();
        }
        let blend = |s: f64| -> Vec<f64> {
            u.iter().zip(&anchor).map(|(ui, ai)| ai + s * (ui - ai)).collect()
        };
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if (constraint)(&blend(mid)) <= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        blend(lo)
    };

    let mut best = (objective)(&anchor);
    let mut warm: Vec<Vec<f64>> = vec![anchor.clone()];
    for round in 0..7u32 {
        let rho = 10f64.powi(2 + round as i32);
        let obj = objective.clone();
        let con = constraint.clone();
        let penalized =
            move |u: &[f64]| (obj)(u) + rho * (con)(u).max(0.0) * (con)(u).max(0.0);
        let outcome = multistart_minimize(
            &penalized,
            n,
            search,
            0xa076_1d64_78bd_642f ^ u64::from(round),
            &warm,
        )?;
        let mut candidates = vec![outcome.best_x.clone()];
        candidates.extend(outcome.basins.iter().map(|(x, _)| x.clone()));
        for c in &candidates {
            let feasible = project(c);
            let v = (objective)(&feasible);
            if v < best {
                best = v;
            }
        }
        warm = vec![outcome.best_x];
    }

    // Constant step functions are candidates too; the per-point penalized
    // problem is immune to the weight anisotropy that can stall descent on
    // the product space.
    let phi1 = pair.phi.clone();
    let psi1 = pair.psi.clone();
    let per_point_budget = r;
    for round in 0..7u32 {
        let rho = 10f64.powi(2 + round as i32);
        let phi1 = phi1.clone();
        let psi1 = psi1.clone();
        let penalized = move |y: &[f64]| {
            let violation = ((psi1)(y) - per_point_budget).max(0.0);
            (phi1)(y) + rho * violation * violation
        };
        let outcome = multistart_minimize(
            &penalized,
            d,
            search,
            0x2545_f491_4f6c_dd1d ^ u64::from(round),
            &[],
        )?;
        let mut constant = Vec::with_capacity(n);
        for _ in 0..n_atoms {
            constant.extend_from_slice(&outcome.best_x);
        }
        let feasible = project(&constant);
        let v = (objective)(&feasible);
        if v < best {
            best = v;
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    CounterexampleConfirmed,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Tolerances {
    pub abs: f64,
    pub rel: f64,
    /// A flagged instance whose gap drops below −margin confirms the
    /// counterexample.
    pub counterexample_margin: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { abs: 1e-6, rel: 1e-4, counterexample_margin: 0.1 }
    }
}

/// Both sides of the main identity with provenance and verdict.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: String,
    pub r: f64,
    pub lambda_r: Option<f64>,
    pub multiplier_residual: Option<f64>,
    /// Oracle sub-level infimum (penalty + multi-start, independent route).
    pub lhs: f64,
    /// Level-set infimum × ∫γ dμ (scalarization route).
    pub rhs: f64,
    pub gap: f64,
    pub tol_abs: f64,
    pub tol_rel: f64,
    pub verdict: Verdict,
    /// λ interval where the level jump was detected, when the uniqueness
    /// hypothesis fails.
    pub hypothesis_violation: Option<(f64, f64)>,
    /// r lies in ]α, β[.
    pub admissible: bool,
    /// One-sided bound: lhs ≥ rhs − tol. Only meaningful when λ_r exists.
    pub lower_bound_ok: Option<bool>,
    /// (φ(0), ψ(0)) subtracted before verification and added back here.
    pub normalization_shift: (f64, f64),
    pub total_gamma: f64,
    pub elapsed_ms: u64,
}

fn shifted_pair(pair: &FunctionalPair) -> (FunctionalPair, f64, f64) {
    let phi0 = pair.phi(&vec![0.0; pair.dim]);
    let psi0 = pair.psi(&vec![0.0; pair.dim]);
    if phi0 == 0.0 && psi0 == 0.0 {
        return (pair.clone(), 0.0, 0.0);
    }
    let mut shifted = pair.clone();
    let phi = pair.phi.clone();
    let psi = pair.psi.clone();
    shifted.phi = Arc::new(move |y: &[f64]| (phi)(y) - phi0);
    shifted.psi = Arc::new(move |y: &[f64]| (psi)(y) - psi0);
    shifted.psi_inf = match pair.psi_inf {
        crate::ext::ExtReal::Finite(v) => crate::ext::ExtReal::Finite(v - psi0),
        other => other,
    };
    shifted.psi_sup = match pair.psi_sup {
        crate::ext::ExtReal::Finite(v) => crate::ext::ExtReal::Finite(v - psi0),
        other => other,
    };
    // closed forms no longer line up after the shift
    shifted.analytic = None;
    (shifted, phi0, psi0)
}

/// Verifies the identity on a discrete space: lhs from the independent
/// constrained oracle, rhs from the scalarization route, plus the one-sided
/// bound that holds unconditionally when the multiplier exists. A detected
/// level jump is recorded as a hypothesis violation, not thrown.
pub fn verify_identity(
    space: &WeightedMeasureSpace,
    pair: &FunctionalPair,
    r: f64,
    tols: &Tolerances,
    search: &SearchConfig,
) -> Result<VerificationReport, MeasureError> {
    let started = Instant::now();
    let (work, phi0, psi0) = shifted_pair(pair);
    let r_work = r - psi0;
    let total = space.total_gamma();

    let ab = alpha_beta(&work, &DeclaredOracle)?;
    let admissible = ab.admits(r_work);

    let bisect_tol = tols.abs.max(1e-7 * r_work.abs().max(1.0));
    let mut hypothesis_violation = None;
    let mut lambda_r = None;
    let mut multiplier_residual = None;

    let rhs_core = match find_lambda_r(&work, r_work, bisect_tol, search) {
        Ok(mr) => {
            lambda_r = Some(mr.lambda_r);
            multiplier_residual = Some(mr.residual);
            mr.minimum.phi_value
        }
        Err(ScalarizeError::LevelJump { lo, hi }) => {
            hypothesis_violation = Some((lo, hi));
            level_set_infimum_direct(&work, r_work, &DirectGrid::default())?
        }
        Err(ScalarizeError::LevelOutOfRange { .. }) => {
            // exploratory mode: no multiplier, fall back to the grid oracle
            level_set_infimum_direct(&work, r_work, &DirectGrid::default())?
        }
        Err(e) => return Err(e.into()),
    };

    let lhs_core = sublevel_infimum_oracle(space, &work, r_work, search)?;

    let lhs = lhs_core + phi0 * total;
    let rhs = (rhs_core + phi0) * total;
    let gap = lhs_core - rhs_core * total;

    let tol = tols.abs + tols.rel * rhs.abs();
    let flagged = pair.hypothesis_violation_expected || hypothesis_violation.is_some();
    let verdict = if flagged && gap <= -tols.counterexample_margin {
        Verdict::CounterexampleConfirmed
    } else if gap.abs() <= tol {
        Verdict::Pass
    } else {
        Verdict::Fail
    };

    let lower_bound_ok = lambda_r.map(|_| gap >= -tol);

    Ok(VerificationReport {
        family: pair.family.clone(),
        r,
        lambda_r,
        multiplier_residual,
        lhs,
        rhs,
        gap,
        tol_abs: tols.abs,
        tol_rel: tols.rel,
        verdict,
        hypothesis_violation,
        admissible,
        lower_bound_ok,
        normalization_shift: (phi0, psi0),
        total_gamma: total,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::{
        eta_expm1, make_canonical_instance, make_two_minima_instance, make_exp_growth_instance,
        make_linear_quadratic_instance,
    };

    fn three_atom_unit_mass() -> WeightedMeasureSpace {
        WeightedMeasureSpace::unit_mu(&[0.5, 0.3, 0.2]).unwrap()
    }

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn integrate_examples() {
        let single = WeightedMeasureSpace::unit_mu(&[1.0]).unwrap();
        let u = StepFunction::constant(&single, &[2.0]);
        let v = integrate(&single, &u, &|y| y[0] * y[0]).unwrap();
        assert_eq!(v, 4.0);

        let space = three_atom_unit_mass();
        let u = StepFunction::constant(&space, &[2.0]);
        let v = integrate(&space, &u, &|y| y[0] * y[0]).unwrap();
        assert!((v - 4.0).abs() < 1e-15);

        let two = WeightedMeasureSpace::unit_mu(&[1.0, 1.0]).unwrap();
        let two_minima = make_two_minima_instance();
        let u = StepFunction { values: vec![vec![0.0], vec![3.0]] };
        let v = integrate(&two, &u, &|y| two_minima.phi(y)).unwrap();
        assert_eq!(v, -1.0);
    }

    #[test]
    fn integrate_rejects_nonfinite() {
        let space = WeightedMeasureSpace::unit_mu(&[1.0]).unwrap();
        let u = StepFunction::constant(&space, &[0.0]);
        let err = integrate(&space, &u, &|y| 1.0 / y[0]).unwrap_err();
        assert!(matches!(err, MeasureError::NonFiniteIntegrand { .. }));
    }

    #[test]
    fn feasibility_examples() {
        let space = WeightedMeasureSpace::unit_mu(&[1.0]).unwrap();
        let two_minima = make_two_minima_instance();
        let zero = StepFunction::constant(&space, &[0.0]);
        assert!(is_feasible(&space, &two_minima, &zero, 1.0).unwrap());

        let canonical = make_canonical_instance();
        let r = 2.25f64;
        let at_level = StepFunction::constant(&space, &[r.sqrt()]);
        assert!(is_feasible(&space, &canonical, &at_level, r).unwrap());
        let above = StepFunction::constant(&space, &[r.sqrt() + 1.0]);
        assert!(!is_feasible(&space, &canonical, &above, r).unwrap());
    }

    #[test]
    fn witness_examples() {
        let pair = make_canonical_instance();
        let space = three_atom_unit_mass();
        let mr = find_lambda_r(&pair, 4.0, 1e-7, &cfg()).unwrap();

        let full = witness(&space, &pair, 4.0, &mr, &[0, 1, 2]).unwrap();
        assert!(is_feasible(&space, &pair, &full, 4.0 + 1e-9).unwrap());
        for v in &full.values {
            assert!((v[0] - 2.0).abs() < 1e-5);
        }

        let partial = witness(&space, &pair, 4.0, &mr, &[0]).unwrap();
        let con = integrate(&space, &partial, &|y| pair.psi(y)).unwrap();
        assert!((con - 2.0).abs() < 1e-4, "0.5 · 4 = 2, got {con}");
        assert!(is_feasible(&space, &pair, &partial, 4.0).unwrap());

        let empty = witness(&space, &pair, 4.0, &mr, &[]).unwrap();
        assert!(is_feasible(&space, &pair, &empty, 4.0).unwrap());
        assert!(empty.values.iter().all(|v| v[0] == 0.0));
    }

    #[test]
    fn oracle_canonical() {
        let pair = make_canonical_instance();
        let space = three_atom_unit_mass();
        let v = sublevel_infimum_oracle(&space, &pair, 4.0, &cfg()).unwrap();
        assert!((v + 2.0).abs() < 1e-4, "oracle value {v}");
    }

    #[test]
    fn oracle_two_minima_at_most_zero() {
        let pair = make_two_minima_instance();
        let space = WeightedMeasureSpace::unit_mu(&[1.0]).unwrap();
        let v = sublevel_infimum_oracle(&space, &pair, 1.0, &cfg()).unwrap();
        assert!(v <= 1e-9, "0 ∈ V so value ≤ 0, got {v}");
    }

    #[test]
    fn oracle_exp_growth_single_atom() {
        let pair = make_exp_growth_instance(vec![-2.0], eta_expm1(), 2.0).unwrap();
        let space = WeightedMeasureSpace::unit_mu(&[1.0]).unwrap();
        let r = std::f64::consts::E - 1.0;
        let v = sublevel_infimum_oracle(&space, &pair, r, &cfg()).unwrap();
        assert!((v + 2.0).abs() < 1e-3, "oracle value {v}");
    }

    #[test]
    fn verify_canonical() {
        let pair = make_canonical_instance();
        let space = three_atom_unit_mass();
        let report = verify_identity(&space, &pair, 4.0, &Tolerances::default(), &cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
        assert!(report.gap.abs() < 1e-3);
        assert!((report.rhs + 2.0).abs() < 1e-4);
        assert_eq!(report.lower_bound_ok, Some(true));
    }

    #[test]
    fn verify_two_minima_counterexample() {
        let pair = make_two_minima_instance();
        let space = WeightedMeasureSpace::unit_mu(&[1.0]).unwrap();
        let report = verify_identity(&space, &pair, 1.0, &Tolerances::default(), &cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::CounterexampleConfirmed, "{report:?}");
        assert!((report.rhs - 1.0).abs() < 1e-6, "rhs {}", report.rhs);
        assert!(report.lhs <= 1e-9, "lhs {}", report.lhs);
        assert!(report.gap <= -0.99);
        let (lo, hi) = report.hypothesis_violation.unwrap();
        assert!(lo >= 0.12 && hi <= 0.13, "jump at [{lo}, {hi}]");
    }

    #[test]
    fn verify_linear_quadratic_on_sphere_constraint() {
        // ψ = ‖y‖²/2, r: ∫γψ(u) ≤ r forces ‖y‖² ≤ 2r at the optimum; the
        // infimum of ⟨g, y⟩ there is −‖g‖√(2r).
        let pair = make_linear_quadratic_instance(vec![1.0, 0.0], 1.0).unwrap();
        let space = WeightedMeasureSpace::unit_mu(&[1.0]).unwrap();
        let r = 0.3;
        let report = verify_identity(&space, &pair, r, &Tolerances::default(), &cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
        let expected = -(2.0 * r).sqrt();
        assert!((report.rhs - expected).abs() < 1e-4, "rhs {}", report.rhs);
    }

    #[test]
    fn gamma_scaling_scales_both_sides() {
        let pair = make_canonical_instance();
        let space = three_atom_unit_mass();
        let scaled = space.scale_gamma(3.0).unwrap();
        let tols = Tolerances::default();
        let a = verify_identity(&space, &pair, 4.0, &tols, &cfg()).unwrap();
        let b = verify_identity(&scaled, &pair, 4.0, &tols, &cfg()).unwrap();
        assert!((b.rhs - 3.0 * a.rhs).abs() < 1e-6 * a.rhs.abs());
        assert!((b.lhs - 3.0 * a.lhs).abs() < 1e-3 * a.lhs.abs());
    }

    #[test]
    fn sequence_space_truncation_stable() {
        // Countably many atoms: μ = counting measure, γ_i = 2^{-i}; doubling the
        // truncation barely moves either side.
        let pair = make_canonical_instance();
        let tols = Tolerances::default();
        let g8: Vec<f64> = (0..8).map(|i| 0.5f64.powi(i + 1)).collect();
        let g16: Vec<f64> = (0..16).map(|i| 0.5f64.powi(i + 1)).collect();
        let s8 = WeightedMeasureSpace::unit_mu(&g8).unwrap();
        let s16 = WeightedMeasureSpace::unit_mu(&g16).unwrap();
        let r8 = verify_identity(&s8, &pair, 1.0, &tols, &cfg()).unwrap();
        let r16 = verify_identity(&s16, &pair, 1.0, &tols, &cfg()).unwrap();
        assert_eq!(r8.verdict, Verdict::Pass);
        assert_eq!(r16.verdict, Verdict::Pass);
        assert!((r8.rhs - r16.rhs).abs() < 5e-3, "{} vs {}", r8.rhs, r16.rhs);
        assert!((r8.lhs - r16.lhs).abs() < 5e-3, "{} vs {}", r8.lhs, r16.lhs);
    }

    #[test]
    fn normalization_shift_roundtrip() {
        // shift the canonical pair by constants; the identity still verifies
        // and the report records the shift
        let mut pair = make_canonical_instance();
        let phi = pair.phi.clone();
        let psi = pair.psi.clone();
        pair.phi = Arc::new(move |y: &[f64]| (phi)(y) + 7.0);
        pair.psi = Arc::new(move |y: &[f64]| (psi)(y) + 3.0);
        pair.psi_inf = crate::ext::ExtReal::Finite(3.0);
        pair.analytic = None;
        let space = three_atom_unit_mass();
        let report =
            verify_identity(&space, &pair, 4.0 + 3.0, &Tolerances::default(), &cfg()).unwrap();
        assert_eq!(report.normalization_shift, (7.0, 3.0));
        assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
        // inf over {ψ = 7} of φ = −2 + 7 = 5
        assert!((report.rhs - 5.0).abs() < 1e-3, "rhs {}", report.rhs);
    }
}
