//! Declarative verification suites: a JSON config lists jobs (identity
//! checks, counterexample regressions, Jensen sweeps, hypothesis validation,
//! interval-problem bounds), the runner executes them in parallel and emits
//! one JSON report per job plus a CSV summary. Exit semantics: a suite is
//! green iff every job's outcome matches its expectation, so an expected
//! counterexample is a pass.

use crate::functionals::{
    eta_expm1, make_canonical_instance, make_jensen_pair, make_two_minima_instance, make_log_family_f,
    make_exp_growth_instance, make_linear_quadratic_instance, FunctionalError, FunctionalPair, ScalarMap,
};
use crate::inequalities::{
    is_constant_nonnegative, is_equality_case, jensen_check, validate_jensen_hypotheses,
    HypothesisGrid, JensenInstance,
};
use crate::measure::{
    verify_identity, Atom, MeasureError, Tolerances, Verdict, VerificationReport,
    WeightedMeasureSpace,
};
use crate::pde1d::{verify_cubic_energy_bound, verify_sup_identity};
use crate::scalarize::SearchConfig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("config error: {0}")]
    Config(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JobKind {
    Identity,
    Jensen,
    Counterexample,
    PdeEnergyBound,
    PdeSupIdentity,
    Hypotheses,
}

/// Instance family with its parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum FamilySpec {
    /// φ = −y, ψ = y² on the line.
    Canonical,
    /// The piecewise pair with two global minima at λ = 1/8.
    TwoMinima,
    /// Linear φ = ⟨c, ·⟩ against ψ = e^{‖y‖^q} − 1.
    ExpGrowth { c: Vec<f64>, q: f64 },
    /// Linear φ = ⟨g, ·⟩ against ψ = ‖y‖²/2, multiplier interval ]l, ∞[.
    LinearQuadratic { g: Vec<f64>, l: f64 },
    /// f(y) = a0·log(1+(y⁺)^p) + Σ aᵢ(y⁺)^{qᵢ}, paired as (−f, |y|^p).
    LogFamily { a0: f64, coeffs: Vec<f64>, exponents: Vec<f64>, p: f64, delta: f64 },
}

impl FamilySpec {
    pub fn make_pair(&self) -> Result<FunctionalPair, FunctionalError> {
        match self {
            FamilySpec::Canonical => Ok(make_canonical_instance()),
            FamilySpec::TwoMinima => Ok(make_two_minima_instance()),
            FamilySpec::ExpGrowth { c, q } => make_exp_growth_instance(c.clone(), eta_expm1(), *q),
            FamilySpec::LinearQuadratic { g, l } => make_linear_quadratic_instance(g.clone(), *l),
            FamilySpec::LogFamily { a0, coeffs, exponents, p, delta } => {
                let f = make_log_family_f(*a0, coeffs, exponents, *p)?;
                Ok(make_jensen_pair(f, *p, *delta, "log-family"))
            }
        }
    }

    /// The scalar map and (p, δ) for families that carry one.
    pub fn scalar_parts(&self) -> Option<(ScalarMap, f64, f64)> {
        match self {
            FamilySpec::LogFamily { a0, coeffs, exponents, p, delta } => {
                let f = make_log_family_f(*a0, coeffs, exponents, *p).ok()?;
                Some((f, *p, *delta))
            }
            _ => None,
        }
    }
}

/// Scalar source f for the interval problems.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum SourceSpec {
    /// f(u) = u⁺.
    Linear,
    LogFamily { a0: f64, coeffs: Vec<f64>, exponents: Vec<f64>, p: f64 },
}

impl SourceSpec {
    pub fn make(&self) -> Result<ScalarMap, FunctionalError> {
        match self {
            SourceSpec::Linear => Ok(Arc::new(|u: f64| u.max(0.0))),
            SourceSpec::LogFamily { a0, coeffs, exponents, p } => {
                make_log_family_f(*a0, coeffs, exponents, *p)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum SpaceSpec {
    /// Atoms with μ = 1 and the given γ weights.
    Atoms { gammas: Vec<f64> },
    /// Fully explicit atoms.
    Explicit { atoms: Vec<Atom> },
    /// Uniform interval discretization with γ ≡ 1.
    UniformInterval { cells: usize, length: f64 },
}

impl SpaceSpec {
    pub fn build(&self) -> Result<WeightedMeasureSpace, MeasureError> {
        match self {
            SpaceSpec::Atoms { gammas } => WeightedMeasureSpace::unit_mu(gammas),
            SpaceSpec::Explicit { atoms } => WeightedMeasureSpace::new(atoms.clone()),
            SpaceSpec::UniformInterval { cells, length } => {
                WeightedMeasureSpace::uniform_interval(*cells, *length)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    Pass,
    Counterexample,
}

fn default_mesh() -> usize {
    512
}
fn default_atoms() -> usize {
    8
}
fn default_length() -> f64 {
    1.0
}
fn default_samples() -> usize {
    1000
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JobSpec {
    pub name: String,
    pub kind: JobKind,
    /// Defaults per kind: counterexample jobs expect the confirmed
    /// counterexample verdict, everything else expects a pass.
    #[serde(default)]
    pub expect: Option<Expectation>,
    #[serde(default)]
    pub family: Option<FamilySpec>,
    #[serde(default)]
    pub space: Option<SpaceSpec>,
    #[serde(default)]
    pub r_grid: Vec<f64>,
    #[serde(default)]
    pub rho_grid: Vec<f64>,
    #[serde(default)]
    pub nu_grid: Vec<f64>,
    #[serde(default = "default_mesh")]
    pub mesh: usize,
    #[serde(default = "default_atoms")]
    pub atoms: usize,
    #[serde(default = "default_length")]
    pub length: f64,
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default)]
    pub nu: Option<f64>,
    #[serde(default)]
    pub delta: Option<f64>,
    #[serde(default)]
    pub source: Option<SourceSpec>,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

impl JobSpec {
    pub fn expectation(&self) -> Expectation {
        self.expect.unwrap_or(match self.kind {
            JobKind::Counterexample => Expectation::Counterexample,
            _ => Expectation::Pass,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub schema_version: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "Tolerances::default")]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub out_dir: Option<String>,
    pub jobs: Vec<JobSpec>,
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self, SuiteError> {
        let cfg: SuiteConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), SuiteError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(SuiteError::Config(format!(
                "schema_version {} unsupported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if !(self.tolerances.abs > 0.0 && self.tolerances.rel > 0.0) {
            return Err(SuiteError::Config("tolerances must be positive".into()));
        }
        for job in &self.jobs {
            let ctx = |msg: &str| SuiteError::Config(format!("job '{}': {msg}", job.name));
            match job.kind {
                JobKind::Identity | JobKind::Counterexample => {
                    if job.family.is_none() {
                        return Err(ctx("family required"));
                    }
                    if job.space.is_none() {
                        return Err(ctx("space required"));
                    }
                    if job.r_grid.is_empty() {
                        return Err(ctx("non-empty r_grid required"));
                    }
                }
                JobKind::Jensen | JobKind::Hypotheses => {
                    if !matches!(job.family, Some(FamilySpec::LogFamily { .. })) {
                        return Err(ctx("a log-family family is required"));
                    }
                }
                JobKind::PdeEnergyBound => {
                    if job.nu_grid.is_empty() {
                        return Err(ctx("non-empty nu_grid required"));
                    }
                }
                JobKind::PdeSupIdentity => {
                    if job.source.is_none() {
                        return Err(ctx("source required"));
                    }
                    if job.rho_grid.is_empty() {
                        return Err(ctx("non-empty rho_grid required"));
                    }
                    if job.p.is_none() || job.nu.is_none() {
                        return Err(ctx("p and nu required"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// One grid point of a job.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseRow {
    pub case_label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub verdict: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JobReport {
    pub schema_version: u32,
    pub name: String,
    pub kind: JobKind,
    pub seed: u64,
    pub expected: Expectation,
    /// Matches the expectation.
    pub ok: bool,
    pub cases: Vec<CaseRow>,
    /// Kind-specific payload (full verification reports, hypothesis checks,
    /// sweep statistics). Timing fields are zeroed for reproducibility.
    pub details: serde_json::Value,
    /// Wall-clock stamp, the one field excluded from determinism comparison.
    pub timestamp: u64,
}

fn now_unix() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn job_seed(base: u64, index: usize) -> u64 {
    base ^ (index as u64).wrapping_mul(0x9e3779b97f4a7c15)
}

fn scrub_timing(mut reports: Vec<VerificationReport>) -> Vec<VerificationReport> {
    for r in &mut reports {
        r.elapsed_ms = 0;
    }
    reports
}

fn verdict_label(v: &Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::CounterexampleConfirmed => "counterexample-confirmed",
    }
}

fn run_identity_job(
    job: &JobSpec,
    tols: &Tolerances,
    seed: u64,
) -> Result<(Vec<CaseRow>, serde_json::Value), String> {
    let pair = job.family.as_ref().unwrap().make_pair().map_err(|e| e.to_string())?;
    let space = job.space.as_ref().unwrap().build().map_err(|e| e.to_string())?;
    let search = SearchConfig { seed, ..SearchConfig::default() };
    let want = match job.expectation() {
        Expectation::Pass => Verdict::Pass,
        Expectation::Counterexample => Verdict::CounterexampleConfirmed,
    };
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for &r in &job.r_grid {
        let rep = verify_identity(&space, &pair, r, tols, &search).map_err(|e| e.to_string())?;
        rows.push(CaseRow {
            case_label: format!("r={r}"),
            lhs: rep.lhs,
            rhs: rep.rhs,
            gap: rep.gap,
            verdict: verdict_label(&rep.verdict).into(),
            ok: rep.verdict == want,
        });
        reports.push(rep);
    }
    let details = serde_json::to_value(scrub_timing(reports)).map_err(|e| e.to_string())?;
    Ok((rows, details))
}

fn random_space(rng: &mut ChaCha8Rng) -> WeightedMeasureSpace {
    let n = rng.gen_range(2..=6);
    let gammas: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..2.0)).collect();
    WeightedMeasureSpace::unit_mu(&gammas).expect("positive weights")
}

fn run_jensen_job(
    job: &JobSpec,
    seed: u64,
) -> Result<(Vec<CaseRow>, serde_json::Value), String> {
    let (f, p, delta) =
        job.family.as_ref().unwrap().scalar_parts().ok_or("log-family family required")?;
    let fixed_space = match &job.space {
        Some(s) => Some(s.build().map_err(|e| e.to_string())?),
        None => None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0usize;
    let mut equalities = 0usize;
    let mut equality_all_constant = true;
    let mut worst_margin = f64::INFINITY;
    let mut first_violation = None;
    for k in 0..job.samples {
        let space = fixed_space.clone().unwrap_or_else(|| random_space(&mut rng));
        let n = space.len();
        // salt constant samples in to exercise the equality detector
        let u: Vec<f64> = if k % 97 == 0 {
            let c = rng.gen_range(0.0..4.0);
            vec![c; n]
        } else {
            (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect()
        };
        let inst =
            JensenInstance { f: f.clone(), p, delta, space, u: u.clone() };
        let check = jensen_check(&inst).map_err(|e| e.to_string())?;
        worst_margin = worst_margin.min(check.margin);
        if !check.holds {
            violations += 1;
            if first_violation.is_none() {
                first_violation = Some(serde_json::json!({ "u": u, "check": check }));
            }
            continue;
        }
        if is_equality_case(&check) {
            equalities += 1;
            if !is_constant_nonnegative(&u) {
                equality_all_constant = false;
            }
        }
    }
    let ok = violations == 0 && equality_all_constant;
    let details = serde_json::json!({
        "samples": job.samples,
        "violations": violations,
        "equality_cases": equalities,
        "equality_only_at_constant_nonnegative_u": equality_all_constant,
        "worst_margin": worst_margin,
        "first_violation": first_violation,
    });
    let row = CaseRow {
        case_label: format!("samples={}", job.samples),
        lhs: violations as f64,
        rhs: 0.0,
        gap: worst_margin,
        verdict: if ok { "pass".into() } else { "fail".into() },
        ok,
    };
    Ok((vec![row], details))
}

fn run_hypotheses_job(job: &JobSpec) -> Result<(Vec<CaseRow>, serde_json::Value), String> {
    let (f, p, delta) =
        job.family.as_ref().unwrap().scalar_parts().ok_or("log-family family required")?;
    let space = WeightedMeasureSpace::unit_mu(&[1.0]).map_err(|e| e.to_string())?;
    let inst = JensenInstance { f, p, delta, space, u: vec![0.0] };
    let checks = validate_jensen_hypotheses(&inst, &HypothesisGrid::default());
    let rows = checks
        .iter()
        .map(|c| CaseRow {
            case_label: c.hypothesis.clone(),
            lhs: 0.0,
            rhs: 0.0,
            gap: 0.0,
            verdict: if c.pass { "pass".into() } else { "fail".into() },
            ok: c.pass,
        })
        .collect();
    let details = serde_json::to_value(&checks).map_err(|e| e.to_string())?;
    Ok((rows, details))
}

fn run_energy_bound_job(job: &JobSpec) -> Result<(Vec<CaseRow>, serde_json::Value), String> {
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for &nu in &job.nu_grid {
        let rep = verify_cubic_energy_bound(job.length, nu, job.mesh).map_err(|e| e.to_string())?;
        rows.push(CaseRow {
            case_label: format!("nu={nu}"),
            lhs: rep.energy,
            rhs: rep.bound,
            gap: rep.energy - rep.bound,
            verdict: if rep.pass { "pass".into() } else { "fail".into() },
            ok: rep.pass,
        });
        reports.push(rep);
    }
    // cubic homogeneity: utilization must be ν-independent
    let ratios: Vec<f64> = reports.iter().map(|r| r.utilization).collect();
    let homogeneous = ratios
        .iter()
        .all(|&u| (u - ratios[0]).abs() <= 1e-4 * ratios[0].abs().max(1e-30));
    if let Some(last) = rows.last_mut() {
        last.ok = last.ok && homogeneous;
    }
    let details = serde_json::json!({
        "reports": reports,
        "utilization_homogeneous": homogeneous,
    });
    Ok((rows, details))
}

fn run_sup_identity_job(
    job: &JobSpec,
    tols: &Tolerances,
    seed: u64,
) -> Result<(Vec<CaseRow>, serde_json::Value), String> {
    let f = job.source.as_ref().unwrap().make().map_err(|e| e.to_string())?;
    let p = job.p.unwrap();
    let nu = job.nu.unwrap();
    let delta = job.delta.unwrap_or(0.0);
    let search = SearchConfig { seed, ..SearchConfig::default() };
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for &rho in &job.rho_grid {
        let mut rep = verify_sup_identity(
            job.length, p, f.clone(), nu, delta, rho, job.atoms, tols, &search,
        )
        .map_err(|e| e.to_string())?;
        rep.report.elapsed_ms = 0;
        rows.push(CaseRow {
            case_label: format!("rho={rho}"),
            lhs: rep.sup_value,
            rhs: rep.expected,
            gap: rep.sup_value - rep.expected,
            verdict: if rep.pass { "pass".into() } else { "fail".into() },
            ok: rep.pass,
        });
        reports.push(rep);
    }
    let details = serde_json::to_value(&reports).map_err(|e| e.to_string())?;
    Ok((rows, details))
}

pub fn run_job(job: &JobSpec, tols: &Tolerances, seed: u64) -> JobReport {
    let outcome = match job.kind {
        JobKind::Identity | JobKind::Counterexample => run_identity_job(job, tols, seed),
        JobKind::Jensen => run_jensen_job(job, seed),
        JobKind::Hypotheses => run_hypotheses_job(job),
        JobKind::PdeEnergyBound => run_energy_bound_job(job),
        JobKind::PdeSupIdentity => run_sup_identity_job(job, tols, seed),
    };
    match outcome {
        Ok((cases, details)) => {
            let ok = !cases.is_empty() && cases.iter().all(|c| c.ok);
            JobReport {
                schema_version: SCHEMA_VERSION,
                name: job.name.clone(),
                kind: job.kind,
                seed,
                expected: job.expectation(),
                ok,
                cases,
                details,
                timestamp: now_unix(),
            }
        }
        Err(msg) => JobReport {
            schema_version: SCHEMA_VERSION,
            name: job.name.clone(),
            kind: job.kind,
            seed,
            expected: job.expectation(),
            ok: false,
            cases: Vec::new(),
            details: serde_json::json!({ "error": msg }),
            timestamp: now_unix(),
        },
    }
}

#[derive(Debug)]
pub struct SuiteOutcome {
    pub all_ok: bool,
    pub reports: Vec<JobReport>,
    pub report_paths: Vec<PathBuf>,
    pub summary_path: PathBuf,
}

/// Runs all jobs (in parallel), writes `<name>.json` per job and a
/// `summary.csv`, and reports whether every job matched its expectation.
pub fn run_suite(config: &SuiteConfig, out_dir: &Path) -> Result<SuiteOutcome, SuiteError> {
    config.validate()?;
    std::fs::create_dir_all(out_dir)
        .map_err(|e| SuiteError::Io { path: out_dir.to_path_buf(), source: e })?;

    let reports: Vec<JobReport> = config
        .jobs
        .par_iter()
        .enumerate()
        .map(|(i, job)| run_job(job, &config.tolerances, job_seed(config.seed, i)))
        .collect();

    let mut report_paths = Vec::new();
    for rep in &reports {
        let path = out_dir.join(format!("{}.json", sanitize(&rep.name)));
        let text = serde_json::to_string_pretty(rep)?;
        std::fs::write(&path, text)
            .map_err(|e| SuiteError::Io { path: path.clone(), source: e })?;
        report_paths.push(path);
    }

    let summary_path = out_dir.join("summary.csv");
    let mut w = csv::Writer::from_path(&summary_path)?;
    w.write_record(["job", "kind", "case", "lhs", "rhs", "gap", "verdict", "ok"])?;
    for rep in &reports {
        let kind = serde_json::to_value(rep.kind)?;
        let kind = kind.as_str().unwrap_or("?").to_string();
        for c in &rep.cases {
            w.write_record([
                rep.name.as_str(),
                kind.as_str(),
                c.case_label.as_str(),
                &format!("{}", c.lhs),
                &format!("{}", c.rhs),
                &format!("{}", c.gap),
                c.verdict.as_str(),
                &format!("{}", c.ok),
            ])?;
        }
        if rep.cases.is_empty() {
            w.write_record([rep.name.as_str(), kind.as_str(), "-", "", "", "", "error", "false"])?;
        }
    }
    w.flush().map_err(|e| SuiteError::Io { path: summary_path.clone(), source: e })?;

    let all_ok = reports.iter().all(|r| r.ok);
    Ok(SuiteOutcome { all_ok, reports, report_paths, summary_path })
}

fn sanitize(name: &str) -> String {
    name.chars().map(|c| if c.is_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

/// Human-readable rendering of a job report.
pub fn explain(report: &JobReport) -> String {
    let mut out = String::new();
    let kind = serde_json::to_value(report.kind)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    out.push_str(&format!(
        "job: {}  kind: {}  seed: {}  expected: {:?}  ok: {}\n",
        report.name, kind, report.seed, report.expected, report.ok
    ));
    out.push_str(&format!(
        "{:<28} {:>14} {:>14} {:>12} {:>26} {:>4}\n",
        "case", "lhs", "rhs", "gap", "verdict", "ok"
    ));
    for c in &report.cases {
        out.push_str(&format!(
            "{:<28} {:>14.6e} {:>14.6e} {:>12.3e} {:>26} {:>4}\n",
            c.case_label, c.lhs, c.rhs, c.gap, c.verdict, c.ok
        ));
    }
    // surface detected uniqueness failures from embedded reports
    if let Some(arr) = report.details.as_array() {
        for d in arr {
            if let Some(hv) = d.get("hypothesis_violation").and_then(|v| v.as_array()) {
                if let (Some(lo), Some(hi)) = (hv[0].as_f64(), hv[1].as_f64()) {
                    out.push_str(&format!(
                        "hypothesis violation: non-unique global minimum near lambda in [{lo}, {hi}]\n"
                    ));
                }
            }
        }
    }
    if let Some(err) = report.details.get("error").and_then(|v| v.as_str()) {
        out.push_str(&format!("error: {err}\n"));
    }
    out
}

/// Families available to configs, with their parameter shapes.
pub fn list_families() -> String {
    [
        "canonical                 (no parameters)        phi = -y, psi = y^2",
        "two-minima                (no parameters)        piecewise phi, two global minima at lambda = 1/8",
        "exp-growth                c: vector, q > 1       phi = <c, .>, psi = exp(||y||^q) - 1",
        "linear-quadratic          g: vector, l > 0       phi = <g, .>, psi = ||y||^2 / 2",
        "log-family                a0, coeffs, exponents, p, delta    f = a0 log(1+(y+)^p) + sum a_i (y+)^{q_i}",
        "",
        "interval sources (pde-sup-identity): linear | log-family",
    ]
    .join("\n")
}
