//! Graph-family generators and the seeded experiment runner that hunts for
//! certified-but-refuted instances.

mod generators;

pub use generators::{generate, Family, FamilySpec, SpecError, MAX_RESAMPLES};

use crate::certify::{
    parameter_violation, threshold_rational, CertificateRequest, Certifier, Outcome, TheoremId, CROSS_VERIFY_MAX_N,
    DEFAULT_DECISION_TOL,
};
use crate::connectivity::gt_membership;
use crate::graph::{Graph, VertexPartition};
use crate::packing::{lemma41_decompose, Lemma41Gadget, DEFAULT_BUDGET};
use crate::quotient::{check_interlacing, quotient_laplacian, Interlacing, INTERLACING_TOL};
use crate::rational::Scalar;
use crate::spectra::{laplacian_profile, DEFAULT_TOL};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The shipped configuration: over 2000 trials, every theorem.
pub const DEFAULT_CONFIG_JSON: &str = include_str!("../../configs/default.json");

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("malformed config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyEntry {
    #[serde(flatten)]
    pub family: Family,
    pub trials: usize,
}

/// `(k, d, a, b)` for one certificate request.
type GridPoint = (usize, Option<usize>, Option<Scalar>, Option<Scalar>);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub seed: u64,
    pub families: Vec<FamilyEntry>,
    pub theorems: Vec<TheoremId>,
    pub k: Vec<usize>,
    /// `thm1.1` only; absent means `d = δ(G)`.
    #[serde(default)]
    pub d: Option<Vec<usize>>,
    /// `(a, b)` pairs. Variant (i) uses the distinct `a` values; (ii) and
    /// (iii) use the pairs whose `b` has the right sign.
    #[serde(default)]
    pub ab: Vec<(Scalar, Scalar)>,
    #[serde(default = "default_decision_tol")]
    pub decision_tol: f64,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default = "default_jobs")]
    pub jobs: usize,
    #[serde(default = "default_cross_verify_max_n")]
    pub cross_verify_max_n: usize,
}

fn default_decision_tol() -> f64 {
    DEFAULT_DECISION_TOL
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

fn default_jobs() -> usize {
    1
}

fn default_cross_verify_max_n() -> usize {
    CROSS_VERIFY_MAX_N
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn default_config() -> Self {
        Self::from_json(DEFAULT_CONFIG_JSON).expect("shipped config is valid")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |msg: &str| Err(ConfigError::Invalid(msg.to_string()));
        for entry in &self.families {
            entry.family.validate()?;
        }
        if !self.theorems.is_empty() && self.k.is_empty() {
            return invalid("k grid is empty");
        }
        if self.k.contains(&0) {
            return invalid("k values must be positive");
        }
        if let Some(d) = &self.d {
            if d.is_empty() || d.contains(&0) {
                return invalid("d grid must be non-empty with positive values");
            }
        }
        if self.theorems.iter().any(|t| t.uses_a()) && self.ab.is_empty() {
            return invalid("ab grid is empty but a parametric theorem is selected");
        }
        if self.ab.iter().any(|(a, b)| !a.is_finite() || !b.is_finite() || b.is_zero()) {
            return invalid("ab entries must be finite with b != 0");
        }
        if !(self.decision_tol.is_finite() && self.decision_tol >= 0.0) {
            return invalid("decision_tol must be a non-negative number");
        }
        Ok(())
    }

    pub fn total_trials(&self) -> usize {
        self.families.iter().map(|f| f.trials).sum()
    }

    /// Parameter combinations evaluated for one theorem on a graph of
    /// minimum degree `delta`.
    fn grid(&self, id: TheoremId, delta: usize) -> Vec<GridPoint> {
        let mut out = Vec::new();
        for &k in &self.k {
            if id == TheoremId::Thm11 {
                let ds = self.d.clone().unwrap_or_else(|| vec![delta.max(1)]);
                out.extend(ds.into_iter().map(|d| (k, Some(d), None, None)));
                continue;
            }
            if !id.uses_a() {
                if parameter_violation(id, k, Scalar::from_integer(0), Scalar::from_integer(1)).is_none() {
                    out.push((k, None, None, None));
                }
                continue;
            }
            let mut seen_a = Vec::new();
            for &(a, b) in &self.ab {
                let (a, b) = match id.b_sign() {
                    None if seen_a.contains(&a) => continue,
                    None => {
                        seen_a.push(a);
                        (a, Scalar::from_integer(1))
                    }
                    Some(sign) if b.signum() != sign => continue,
                    Some(_) => (a, b),
                };
                if parameter_violation(id, k, a, b).is_none() {
                    let b = id.b_sign().map(|_| b);
                    out.push((k, None, Some(a), b));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TrialStatus {
    Ok,
    Skipped,
    Error,
}

/// Compact per-request summary of a certificate report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalDigest {
    pub theorem_id: TheoremId,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Scalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Scalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome: Option<Outcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ground_truth: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl EvalDigest {
    pub fn is_counterexample(&self) -> bool {
        self.outcome == Some(Outcome::Certified) && self.ground_truth.as_deref() == Some("REFUTED")
    }
}

/// A structural promise of the family, re-checked on the sampled graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GuaranteeCheck {
    pub claim: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRow {
    pub trial: usize,
    pub seed: u64,
    pub spec: Family,
    pub status: TrialStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub guarantees: Vec<GuaranteeCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interlacing: Option<Interlacing>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub evaluations: Vec<EvalDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TheoremTally {
    pub theorem_id: String,
    pub evaluated: usize,
    /// Hypotheses held, so the spectral condition was actually tested.
    pub fired: usize,
    pub certified: usize,
    pub marginal: usize,
    pub condition_fails: usize,
    pub hypothesis_failed: usize,
    pub errors: usize,
    pub cross_checked: usize,
    pub found: usize,
    pub refuted: usize,
    pub inconclusive: usize,
    pub counterexamples: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Aggregates {
    pub trials: usize,
    pub ok: usize,
    pub skipped: usize,
    pub errors: usize,
    pub evaluations: usize,
    pub fired: usize,
    pub certified: usize,
    pub marginal: usize,
    pub counterexamples: usize,
    pub interlacing_checked: usize,
    pub interlacing_pass: usize,
    pub guarantee_checks: usize,
    pub guarantee_failures: usize,
    pub per_theorem: Vec<TheoremTally>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub rows: Vec<TrialRow>,
    pub summary: Aggregates,
}

impl ExperimentReport {
    /// One JSON object per trial, then `{"summary": ...}`.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&serde_json::to_string(row).expect("rows serialize"));
            out.push('\n');
        }
        let summary = serde_json::json!({ "summary": self.summary });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }

    /// Per-theorem aggregate counts as CSV.
    pub fn aggregates_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for tally in &self.summary.per_theorem {
            w.serialize(tally).expect("tallies serialize");
        }
        if self.summary.per_theorem.is_empty() {
            w.write_record(TALLY_HEADER).expect("header writes");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = (&TrialRow, &EvalDigest)> {
        self.rows.iter().flat_map(|r| r.evaluations.iter().filter(|e| e.is_counterexample()).map(move |e| (r, e)))
    }
}

const TALLY_HEADER: [&str; 13] = [
    "theorem_id",
    "evaluated",
    "fired",
    "certified",
    "marginal",
    "condition_fails",
    "hypothesis_failed",
    "errors",
    "cross_checked",
    "found",
    "refuted",
    "inconclusive",
    "counterexamples",
];

/// Runs every trial on a pool of `cfg.jobs` workers. Trial `i` draws from
/// `ChaCha8(seed ^ i)` and results are merged by index, so the report does
/// not depend on the pool width.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, ConfigError> {
    cfg.validate()?;
    let plan: Vec<&Family> = cfg.families.iter().flat_map(|e| std::iter::repeat_n(&e.family, e.trials)).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build()?;
    let rows: Vec<TrialRow> =
        pool.install(|| plan.par_iter().enumerate().map(|(i, family)| run_trial(cfg, i, family)).collect());
    let summary = aggregate(cfg, &rows);
    Ok(ExperimentReport { rows, summary })
}

fn run_trial(cfg: &ExperimentConfig, trial: usize, family: &Family) -> TrialRow {
    let seed = cfg.seed ^ trial as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut row = TrialRow {
        trial,
        seed,
        spec: family.clone(),
        status: TrialStatus::Ok,
        n: None,
        m: None,
        min_degree: None,
        max_degree: None,
        edges: Vec::new(),
        guarantees: Vec::new(),
        interlacing: None,
        evaluations: Vec::new(),
        error: None,
    };
    let (g, gadget) = match family.sample_instance(&mut rng) {
        Ok(sample) => sample,
        Err(e) => {
            row.status = if e == SpecError::NoConnectedSample { TrialStatus::Skipped } else { TrialStatus::Error };
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.n = Some(g.n());
    row.m = Some(g.m());
    row.min_degree = Some(g.min_degree());
    row.max_degree = Some(g.max_degree());
    row.edges = g.edges().to_vec();
    row.guarantees = check_guarantees(&g, family, gadget.as_ref());
    match random_interlacing(&g, &mut rng) {
        Ok(result) => row.interlacing = result,
        Err(e) => {
            row.status = TrialStatus::Error;
            row.error = Some(e);
        }
    }

    let certifier = Certifier::new(&g);
    let cross_verify = g.n() <= cfg.cross_verify_max_n;
    for &id in &cfg.theorems {
        for (k, d, a, b) in cfg.grid(id, g.min_degree()) {
            let req = CertificateRequest {
                theorem_id: id,
                k,
                d,
                a,
                b,
                decision_tol: cfg.decision_tol,
                cross_verify: Some(cross_verify),
                budget: cfg.budget,
            };
            let mut digest = EvalDigest {
                theorem_id: id,
                k,
                d,
                a,
                b,
                outcome: None,
                measured: None,
                threshold: None,
                ground_truth: None,
                consistent: None,
                error: None,
            };
            match certifier.certify(&req) {
                Ok(r) => {
                    digest.d = (id == TheoremId::Thm11).then_some(r.d);
                    digest.outcome = Some(r.outcome);
                    digest.measured = r.measured.map(|m| m.value());
                    digest.threshold = Some(match threshold_rational(&r) {
                        Some(t) => t.to_string(),
                        None => r.threshold_decimal.to_string(),
                    });
                    if let Some(c) = r.cross_check {
                        digest.ground_truth = Some(c.status);
                        digest.consistent = Some(c.consistent);
                    }
                }
                Err(e) => digest.error = Some(e.to_string()),
            }
            row.evaluations.push(digest);
        }
    }
    row
}

fn check_guarantees(g: &Graph, family: &Family, gadget: Option<&Lemma41Gadget>) -> Vec<GuaranteeCheck> {
    let mut out = Vec::new();
    if let Some(t) = family.class_guarantee() {
        let (holds, detail) = match gt_membership(g, t) {
            Ok(Some(w)) => match w.validate(g) {
                Ok(()) => (true, None),
                Err(e) => (false, Some(e)),
            },
            Ok(None) => (false, Some("no witness".to_string())),
            Err(e) => (false, Some(e.to_string())),
        };
        out.push(GuaranteeCheck { claim: format!("G_{t} membership"), holds, detail });
    }
    if let (Some(gadget), Family::CliqueGadgetLemma41 { k }) = (gadget, family) {
        let (holds, detail) = match lemma41_decompose(g, &gadget.witness, &gadget.x, *k) {
            Ok(_) => (true, None),
            Err(e) => (false, Some(e.to_string())),
        };
        out.push(GuaranteeCheck { claim: "cut refinement".to_string(), holds, detail });
    }
    out
}

/// Interlacing of the quotient Laplacian of a random partition into
/// `1..n` blocks; `None` when `n < 2`.
fn random_interlacing(g: &Graph, rng: &mut ChaCha8Rng) -> Result<Option<Interlacing>, String> {
    let n = g.n();
    if n < 2 {
        return Ok(None);
    }
    let blocks = rng.gen_range(1..n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut labels = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        labels[v] = if i < blocks { i } else { rng.gen_range(0..blocks) };
    }
    let partition = VertexPartition::from_labels(&labels);
    let small =
        quotient_laplacian(g, &partition).and_then(|q| q.eigenvalues(DEFAULT_TOL)).map_err(|e| e.to_string())?;
    let big = laplacian_profile(g, DEFAULT_TOL).map_err(|e| e.to_string())?;
    check_interlacing(&big.eigenvalues, &small, INTERLACING_TOL).map(Some).map_err(|e| e.to_string())
}

fn aggregate(cfg: &ExperimentConfig, rows: &[TrialRow]) -> Aggregates {
    let mut agg = Aggregates {
        trials: rows.len(),
        per_theorem: cfg
            .theorems
            .iter()
            .map(|id| TheoremTally { theorem_id: id.to_string(), ..Default::default() })
            .collect(),
        ..Default::default()
    };
    for row in rows {
        match row.status {
            TrialStatus::Ok => agg.ok += 1,
            TrialStatus::Skipped => agg.skipped += 1,
            TrialStatus::Error => agg.errors += 1,
        }
        if let Some(result) = row.interlacing {
            agg.interlacing_checked += 1;
            agg.interlacing_pass += usize::from(result == Interlacing::Pass);
        }
        agg.guarantee_checks += row.guarantees.len();
        agg.guarantee_failures += row.guarantees.iter().filter(|c| !c.holds).count();
        for e in &row.evaluations {
            let slot = cfg.theorems.iter().position(|&t| t == e.theorem_id).expect("evaluated theorems are selected");
            let tally = &mut agg.per_theorem[slot];
            tally.evaluated += 1;
            match e.outcome {
                None => tally.errors += 1,
                Some(Outcome::HypothesisFailed) => tally.hypothesis_failed += 1,
                Some(o) => {
                    tally.fired += 1;
                    match o {
                        Outcome::Certified => tally.certified += 1,
                        Outcome::Marginal => tally.marginal += 1,
                        _ => tally.condition_fails += 1,
                    }
                }
            }
            match e.ground_truth.as_deref() {
                Some("FOUND") => tally.found += 1,
                Some("REFUTED") => tally.refuted += 1,
                Some(_) => tally.inconclusive += 1,
                None => {}
            }
            tally.cross_checked += usize::from(e.ground_truth.is_some());
            tally.counterexamples += usize::from(e.is_counterexample());
        }
    }
    for t in &agg.per_theorem {
        agg.evaluations += t.evaluated;
        agg.fired += t.fired;
        agg.certified += t.certified;
        agg.marginal += t.marginal;
        agg.counterexamples += t.counterexamples;
    }
    agg
}
