//! Evaluation of the spectral and fractional-packing sufficient conditions
//! for `P(k, δ)`, with hypothesis checks and optional cross-verification
//! against the exact witness search.

pub mod lemmas;

pub use lemmas::{check_cut_lower_bound, check_lemma_small_cut, CutLowerBound, LemmaCheck, LemmaVariant, LEMMA_MAX_N};

use crate::connectivity::{gt_membership, ConnectivityError, GtWitness};
use crate::graph::Graph;
use crate::packing::{nu_f_exact, FractionalPackingResult, PackingError, PkdSearch, DEFAULT_BUDGET};
use crate::rational::{to_f64, Rational, Scalar};
use crate::spectra::{spectral_profile, SpectraError, SpectralProfile, DEFAULT_TOL};
use serde::{Deserialize, Serialize};
use std::cell::{OnceCell, RefCell};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Half-width of the band around a threshold reported as `MARGINAL`.
pub const DEFAULT_DECISION_TOL: f64 = 1e-8;
/// Largest order for which cross-verification is on by default.
pub const CROSS_VERIFY_MAX_N: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "thm1.1")]
    Thm11,
    #[serde(rename = "thm1.2")]
    Thm12,
    #[serde(rename = "thm1.3")]
    Thm13,
    #[serde(rename = "thm5.1")]
    Thm51,
    #[serde(rename = "cor3.1i")]
    Cor31i,
    #[serde(rename = "cor3.1ii")]
    Cor31ii,
    #[serde(rename = "cor3.1iii")]
    Cor31iii,
    #[serde(rename = "cor3.2i")]
    Cor32i,
    #[serde(rename = "cor3.2ii")]
    Cor32ii,
    #[serde(rename = "cor4.2i")]
    Cor42i,
    #[serde(rename = "cor4.2ii")]
    Cor42ii,
    #[serde(rename = "cor4.2iii")]
    Cor42iii,
    #[serde(rename = "cor4.3i")]
    Cor43i,
    #[serde(rename = "cor4.3ii")]
    Cor43ii,
    #[serde(rename = "cor5.2i")]
    Cor52i,
    #[serde(rename = "cor5.2ii")]
    Cor52ii,
    #[serde(rename = "cor5.2iii")]
    Cor52iii,
    #[serde(rename = "cor5.3i")]
    Cor53i,
    #[serde(rename = "cor5.3ii")]
    Cor53ii,
}

impl TheoremId {
    pub const ALL: [TheoremId; 19] = [
        TheoremId::Thm11,
        TheoremId::Thm12,
        TheoremId::Thm13,
        TheoremId::Thm51,
        TheoremId::Cor31i,
        TheoremId::Cor31ii,
        TheoremId::Cor31iii,
        TheoremId::Cor32i,
        TheoremId::Cor32ii,
        TheoremId::Cor42i,
        TheoremId::Cor42ii,
        TheoremId::Cor42iii,
        TheoremId::Cor43i,
        TheoremId::Cor43ii,
        TheoremId::Cor52i,
        TheoremId::Cor52ii,
        TheoremId::Cor52iii,
        TheoremId::Cor53i,
        TheoremId::Cor53ii,
    ];

    pub fn as_str(&self) -> &'static str {
        use TheoremId::*;
        match self {
            Thm11 => "thm1.1",
            Thm12 => "thm1.2",
            Thm13 => "thm1.3",
            Thm51 => "thm5.1",
            Cor31i => "cor3.1i",
            Cor31ii => "cor3.1ii",
            Cor31iii => "cor3.1iii",
            Cor32i => "cor3.2i",
            Cor32ii => "cor3.2ii",
            Cor42i => "cor4.2i",
            Cor42ii => "cor4.2ii",
            Cor42iii => "cor4.2iii",
            Cor43i => "cor4.3i",
            Cor43ii => "cor4.3ii",
            Cor52i => "cor5.2i",
            Cor52ii => "cor5.2ii",
            Cor52iii => "cor5.2iii",
            Cor53i => "cor5.3i",
            Cor53ii => "cor5.3ii",
        }
    }

    /// Whether the condition is stated in terms of a free matrix parameter `a`.
    pub fn uses_a(&self) -> bool {
        self.family() == Family::Parametric
    }

    /// Required sign of `b`, for the variants stated for one sign only.
    pub fn b_sign(&self) -> Option<i32> {
        match self.variant() {
            Some(Variant::Ii) => Some(1),
            Some(Variant::Iii) => Some(-1),
            _ => None,
        }
    }

    fn family(&self) -> Family {
        use TheoremId::*;
        match self {
            Cor31i | Cor31ii | Cor31iii | Cor42i | Cor42ii | Cor42iii | Cor52i | Cor52ii | Cor52iii => {
                Family::Parametric
            }
            _ => Family::Fixed,
        }
    }

    fn variant(&self) -> Option<Variant> {
        use TheoremId::*;
        match self {
            Cor31i | Cor42i | Cor52i => Some(Variant::I),
            Cor31ii | Cor42ii | Cor52ii => Some(Variant::Ii),
            Cor31iii | Cor42iii | Cor52iii => Some(Variant::Iii),
            _ => None,
        }
    }

    /// Which class hypothesis applies: `G_1`, `G_2`, or none.
    fn regime(&self) -> Regime {
        use TheoremId::*;
        match self {
            Thm11 => Regime::Fractional,
            Thm12 | Cor31i | Cor31ii | Cor31iii | Cor32i | Cor32ii => Regime::ClassOne,
            Thm13 | Cor42i | Cor42ii | Cor42iii | Cor43i | Cor43ii => Regime::ClassTwo,
            Thm51 | Cor52i | Cor52ii | Cor52iii | Cor53i | Cor53ii => Regime::Unrestricted,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Parametric,
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Variant {
    I,
    Ii,
    Iii,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Regime {
    Fractional,
    ClassOne,
    ClassTwo,
    Unrestricted,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = CertifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s.trim())
            .ok_or_else(|| CertifyError::Parameter(format!("unknown theorem id `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateRequest {
    pub theorem_id: TheoremId,
    pub k: usize,
    /// Only read by `thm1.1`; defaults to `δ(G)` there.
    #[serde(default)]
    pub d: Option<usize>,
    #[serde(default)]
    pub a: Option<Scalar>,
    #[serde(default)]
    pub b: Option<Scalar>,
    #[serde(default = "default_decision_tol")]
    pub decision_tol: f64,
    /// `None` means on exactly when `n <= 10`.
    #[serde(default)]
    pub cross_verify: Option<bool>,
    #[serde(default = "default_budget")]
    pub budget: u64,
}

fn default_decision_tol() -> f64 {
    DEFAULT_DECISION_TOL
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

impl CertificateRequest {
    pub fn new(theorem_id: TheoremId, k: usize) -> Self {
        Self {
            theorem_id,
            k,
            d: None,
            a: None,
            b: None,
            decision_tol: DEFAULT_DECISION_TOL,
            cross_verify: None,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_d(mut self, d: usize) -> Self {
        self.d = Some(d);
        self
    }

    pub fn with_a(mut self, a: Scalar) -> Self {
        self.a = Some(a);
        self
    }

    pub fn with_ab(mut self, a: Scalar, b: Scalar) -> Self {
        self.a = Some(a);
        self.b = Some(b);
        self
    }

    pub fn with_cross_verify(mut self, on: bool) -> Self {
        self.cross_verify = Some(on);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    HypothesisFailed,
    ConditionFails,
    Marginal,
    Certified,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::HypothesisFailed => "HYPOTHESIS_FAILED",
            Outcome::ConditionFails => "CONDITION_FAILS",
            Outcome::Marginal => "MARGINAL",
            Outcome::Certified => "CERTIFIED",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisChecks {
    pub parameter_constraints: bool,
    pub min_degree: bool,
    /// `None` when the statement has no class hypothesis.
    pub class_membership: Option<bool>,
}

impl HypothesisChecks {
    pub fn all(&self) -> bool {
        self.parameter_constraints && self.min_degree && self.class_membership.unwrap_or(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub status: String,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    pub theorem_id: TheoremId,
    pub k: usize,
    pub d: usize,
    pub a: Option<Scalar>,
    pub b: Option<Scalar>,
    pub n: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub hypothesis_checks: HypothesisChecks,
    /// Human-readable reasons for each failed hypothesis.
    pub failed_hypotheses: Vec<String>,
    pub quantity: String,
    pub relation: &'static str,
    pub measured: Option<Scalar>,
    pub threshold_num: Option<i64>,
    pub threshold_den: Option<i64>,
    pub threshold_decimal: f64,
    pub outcome: Outcome,
    pub conclusion: Option<String>,
    pub class_witness: Option<GtWitness>,
    pub cross_check: Option<CrossCheck>,
}

impl CertificateReport {
    pub fn is_counterexample(&self) -> bool {
        self.cross_check.as_ref().is_some_and(|c| !c.consistent)
    }
}

/// Spectral index convention: `Largest(i)` is `λ_i`, `Smallest(j)` is
/// `λ_{n-j+1}`.
#[derive(Debug, Clone, Copy)]
enum Index {
    Largest(usize),
    Smallest(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Relation {
    Less,
    Greater,
}

/// Per-graph cache of the expensive quantities shared by several
/// theorems: spectra, `ν_f`, class witnesses and `P(k,d)` decisions.
pub struct Certifier<'g> {
    g: &'g Graph,
    spectra: RefCell<HashMap<(u64, u64), SpectralProfile>>,
    nu_f: OnceCell<Result<FractionalPackingResult, PackingError>>,
    gt: [OnceCell<Result<Option<GtWitness>, ConnectivityError>>; 2],
    pkd: RefCell<HashMap<(usize, usize), PkdSearch>>,
}

impl<'g> Certifier<'g> {
    pub fn new(g: &'g Graph) -> Self {
        Self {
            g,
            spectra: RefCell::new(HashMap::new()),
            nu_f: OnceCell::new(),
            gt: [OnceCell::new(), OnceCell::new()],
            pkd: RefCell::new(HashMap::new()),
        }
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    pub fn profile(&self, a: f64, b: f64) -> Result<SpectralProfile, SpectraError> {
        let key = (a.to_bits(), b.to_bits());
        if let Some(p) = self.spectra.borrow().get(&key) {
            return Ok(p.clone());
        }
        let p = spectral_profile(self.g, a, b, DEFAULT_TOL)?;
        self.spectra.borrow_mut().insert(key, p.clone());
        Ok(p)
    }

    pub fn nu_f(&self) -> Result<FractionalPackingResult, PackingError> {
        self.nu_f.get_or_init(|| nu_f_exact(self.g)).clone()
    }

    /// `G_t` membership for `t` in `{1, 2}`; too-small graphs are not members.
    pub fn gt(&self, t: usize) -> Option<GtWitness> {
        assert!((1..=2).contains(&t));
        match self.gt[t - 1].get_or_init(|| gt_membership(self.g, t)) {
            Ok(w) => w.clone(),
            Err(_) => None,
        }
    }

    pub fn pkd(&self, k: usize, d: usize, budget: u64) -> Result<PkdSearch, PackingError> {
        if let Some(s) = self.pkd.borrow().get(&(k, d)) {
            return Ok(s.clone());
        }
        let s = crate::packing::search_pkd_witness(self.g, k, d, budget)?;
        // budget-limited answers are not reused under a different budget
        if !matches!(s, PkdSearch::Inconclusive) {
            self.pkd.borrow_mut().insert((k, d), s.clone());
        }
        Ok(s)
    }

    pub fn certify(&self, req: &CertificateRequest) -> Result<CertificateReport, CertifyError> {
        let g = self.g;
        let n = g.n();
        if n < 2 {
            return Err(CertifyError::Precondition(format!("graph has {n} vertices")));
        }
        if !g.is_connected() {
            return Err(CertifyError::Precondition("graph is disconnected".into()));
        }
        if req.k == 0 {
            return Err(CertifyError::Parameter("k must be a positive integer".into()));
        }
        if !(req.decision_tol.is_finite() && req.decision_tol >= 0.0) {
            return Err(CertifyError::Parameter("decision_tol must be a finite non-negative number".into()));
        }
        let id = req.theorem_id;
        let delta = g.min_degree();
        let big_delta = g.max_degree();
        let k = req.k;
        let d = match id {
            TheoremId::Thm11 => match req.d {
                Some(0) => return Err(CertifyError::Parameter("d must be a positive integer".into())),
                Some(d) => d,
                None => delta,
            },
            _ => delta,
        };
        let (a, b) = resolve_parameters(id, req.a, req.b)?;

        if let Some(reason) = parameter_violation(id, k, a, b) {
            return Err(CertifyError::Parameter(reason));
        }
        let mut failed = Vec::new();
        let degree_bound = match id.regime() {
            Regime::Fractional => 0,
            Regime::ClassOne | Regime::Unrestricted => 2 * k + 2,
            Regime::ClassTwo => 3 * k + 3,
        };
        let degree_ok = delta >= degree_bound;
        if !degree_ok {
            failed.push(format!("δ = {delta} < {degree_bound}"));
        }
        let class_t = match id.regime() {
            Regime::ClassOne => Some(1),
            Regime::ClassTwo => Some(2),
            _ => None,
        };
        let class_witness = class_t.and_then(|t| self.gt(t));
        let class_ok = class_t.map(|_| class_witness.is_some());
        if class_ok == Some(false) {
            failed.push(format!("G is not in G_{}", class_t.unwrap()));
        }
        let checks =
            HypothesisChecks { parameter_constraints: true, min_degree: degree_ok, class_membership: class_ok };

        // β = k + (δ-1)/δ
        let beta = Rational::from_integer(k as i64) + Rational::new(delta as i64 - 1, delta.max(1) as i64);
        let dp1 = Rational::from_integer(delta as i64 + 1);
        let delta_r = Scalar::from_integer(delta as i64);

        let (measured, threshold, relation, quantity) = if id == TheoremId::Thm11 {
            let nu = self.nu_f().map_err(|e| CertifyError::Precondition(e.to_string()))?;
            let threshold = Rational::from_integer(k as i64) + Rational::new(d as i64 - 1, d as i64);
            (Some(Scalar::Exact(nu.value)), Scalar::Exact(threshold), Relation::Greater, "nu_f(G)".to_string())
        } else {
            let (coef, index) = match id.regime() {
                Regime::ClassOne => (Rational::new(16, 3), 3),
                Regime::ClassTwo => (Rational::from_integer(9), 4),
                _ => (Rational::from_integer(2), 2),
            };
            // c β / (δ + 1), scaled by b where the statement does
            let base = Scalar::Exact(coef * beta / dp1);
            let (ma, mb, idx, relation, threshold, quantity) = match id {
                TheoremId::Thm12 => (1, -1, Index::Smallest(3), Relation::Greater, base, "mu_{n-2}(G)"),
                TheoremId::Thm13 => (1, -1, Index::Smallest(4), Relation::Greater, base, "mu_{n-3}(G)"),
                TheoremId::Thm51 => (0, 1, Index::Largest(2), Relation::Less, delta_r.sub(base), "lambda_2(G)"),
                TheoremId::Cor32i | TheoremId::Cor43i => {
                    (0, 1, Index::Largest(index), Relation::Less, delta_r.sub(base), lambda_label(index))
                }
                TheoremId::Cor32ii | TheoremId::Cor43ii | TheoremId::Cor53i => (
                    1,
                    1,
                    Index::Largest(index),
                    Relation::Less,
                    Scalar::from_integer(2 * delta as i64).sub(base),
                    q_label(index),
                ),
                TheoremId::Cor53ii => (
                    1,
                    -1,
                    Index::Smallest(2),
                    Relation::Greater,
                    Scalar::from_integer(big_delta as i64 - delta as i64).add(base),
                    "mu_{n-1}(G)",
                ),
                _ => (0, 0, Index::Largest(0), Relation::Less, base, ""),
            };
            let (pa, pb, idx, relation, threshold, quantity) = if id.family() == Family::Parametric {
                // (a + b) δ - c b β/(δ+1), with b = 1 for variant (i)
                let generic = a.add(b).mul(delta_r).sub(b.mul(base));
                match id.variant().expect("parametric") {
                    Variant::I => {
                        (a, b, Index::Largest(index), Relation::Less, generic, format!("lambda_{index}(aD+A)"))
                    }
                    Variant::Ii => {
                        (a, b, Index::Largest(index), Relation::Less, generic, format!("lambda_{index}(aD+bA)"))
                    }
                    Variant::Iii => {
                        let threshold = if id.regime() == Regime::Unrestricted {
                            // a Δ + b δ - 2 b β/(δ+1)
                            a.mul(Scalar::from_integer(big_delta as i64)).add(b.mul(delta_r)).sub(b.mul(base))
                        } else {
                            generic
                        };
                        let j = index;
                        (
                            a,
                            b,
                            Index::Smallest(j),
                            Relation::Greater,
                            threshold,
                            format!("lambda_{{n-{}}}(aD+bA)", j - 1),
                        )
                    }
                }
            } else {
                (Scalar::from_integer(ma), Scalar::from_integer(mb), idx, relation, threshold, quantity.to_string())
            };
            let profile = self.profile(pa.value(), pb.value())?;
            let value = match idx {
                Index::Largest(i) => profile.kth_largest(i),
                Index::Smallest(j) => profile.kth_smallest(j),
            };
            (value.map(Scalar::Float), threshold, relation, quantity)
        };

        let outcome = if !checks.all() {
            Outcome::HypothesisFailed
        } else {
            match measured {
                None => Outcome::HypothesisFailed,
                Some(m) => decide(m, threshold, relation, req.decision_tol),
            }
        };
        if measured.is_none() && checks.all() {
            failed.push(format!("n = {n} too small for {quantity}"));
        }
        let conclusion = (outcome == Outcome::Certified).then(|| format!("P({k},{d}) holds"));

        let cross = req.cross_verify.unwrap_or(n <= CROSS_VERIFY_MAX_N);
        let cross_check = if cross {
            let status = self.pkd(k, d, req.budget).map_err(|e| CertifyError::Precondition(e.to_string()))?;
            let refuted = matches!(status, PkdSearch::Refuted);
            Some(CrossCheck {
                status: status.label().to_string(),
                consistent: !(outcome == Outcome::Certified && refuted),
            })
        } else {
            None
        };

        let (threshold_num, threshold_den) = match threshold.exact() {
            Some(r) => (Some(*r.numer()), Some(*r.denom())),
            None => (None, None),
        };
        Ok(CertificateReport {
            theorem_id: id,
            k,
            d,
            a: id.uses_a().then_some(a),
            b: id.b_sign().map(|_| b),
            n,
            min_degree: delta,
            max_degree: big_delta,
            hypothesis_checks: checks,
            failed_hypotheses: failed,
            quantity,
            relation: match relation {
                Relation::Less => "<",
                Relation::Greater => ">",
            },
            measured,
            threshold_num,
            threshold_den,
            threshold_decimal: threshold.value(),
            outcome,
            conclusion,
            class_witness,
            cross_check,
        })
    }
}

fn lambda_label(i: usize) -> &'static str {
    match i {
        3 => "lambda_3(G)",
        _ => "lambda_4(G)",
    }
}

fn q_label(i: usize) -> &'static str {
    match i {
        2 => "q_2(G)",
        3 => "q_3(G)",
        _ => "q_4(G)",
    }
}

/// The statement's own parameter range: `k >= 2`, `a >= -1` and
/// `a/b >= -1` under a class hypothesis, `a >= 0` without one.
pub fn parameter_violation(id: TheoremId, k: usize, a: Scalar, b: Scalar) -> Option<String> {
    let min_k = match id.regime() {
        Regime::ClassOne | Regime::ClassTwo => 2,
        _ => 1,
    };
    if k < min_k {
        return Some(format!("{id} requires k >= {min_k}, got {k}"));
    }
    if id.family() != Family::Parametric {
        return None;
    }
    let (av, bv) = (a.value(), b.value());
    match id.regime() {
        Regime::ClassOne | Regime::ClassTwo if av < -1.0 => Some(format!("{id} requires a >= -1, got {a}")),
        Regime::ClassOne | Regime::ClassTwo if av / bv < -1.0 => Some(format!("{id} requires a/b >= -1, got {}", a.div(b))),
        Regime::Unrestricted if av < 0.0 => Some(format!("{id} requires a >= 0, got {a}")),
        _ => None,
    }
}

/// Effective `(a, b)`: variant (i) fixes `b = 1`; fixed statements ignore both.
fn resolve_parameters(id: TheoremId, a: Option<Scalar>, b: Option<Scalar>) -> Result<(Scalar, Scalar), CertifyError> {
    if id.family() != Family::Parametric {
        return Ok((Scalar::from_integer(0), Scalar::from_integer(1)));
    }
    let a = a.ok_or_else(|| CertifyError::Parameter(format!("{id} requires a")))?;
    if !a.is_finite() {
        return Err(CertifyError::Parameter("a must be finite".into()));
    }
    match id.b_sign() {
        None => Ok((a, Scalar::from_integer(1))),
        Some(sign) => {
            let b = b.ok_or_else(|| CertifyError::Parameter(format!("{id} requires b")))?;
            if !b.is_finite() {
                return Err(CertifyError::Parameter("b must be finite".into()));
            }
            if b.is_zero() {
                return Err(CertifyError::Parameter("b must be non-zero".into()));
            }
            if b.signum() != sign {
                let want = if sign > 0 { "b > 0" } else { "b < 0" };
                return Err(CertifyError::Parameter(format!("{id} requires {want}")));
            }
            Ok((a, b))
        }
    }
}

/// Strict comparison with a `MARGINAL` band of half-width `tol`. Exact
/// operands are compared exactly and never land in the band.
fn decide(measured: Scalar, threshold: Scalar, relation: Relation, tol: f64) -> Outcome {
    use std::cmp::Ordering;
    let ord = match measured.cmp_exact(&threshold) {
        Some(o) => o,
        None => {
            let (m, t) = (measured.value(), threshold.value());
            if (m - t).abs() <= tol {
                return Outcome::Marginal;
            }
            m.partial_cmp(&t).unwrap_or(Ordering::Equal)
        }
    };
    let holds = match relation {
        Relation::Less => ord == Ordering::Less,
        Relation::Greater => ord == Ordering::Greater,
    };
    if holds {
        Outcome::Certified
    } else {
        Outcome::ConditionFails
    }
}

pub fn certify(g: &Graph, req: &CertificateRequest) -> Result<CertificateReport, CertifyError> {
    Certifier::new(g).certify(req)
}

/// Rational value of a threshold, when exact.
pub fn threshold_rational(report: &CertificateReport) -> Option<Rational> {
    Some(Rational::new(report.threshold_num?, report.threshold_den?))
}

/// Decimal rendering of a report's threshold, for log lines.
pub fn threshold_display(report: &CertificateReport) -> String {
    match threshold_rational(report) {
        Some(r) => format!("{r} ≈ {:.6}", to_f64(&r)),
        None => format!("{:.6}", report.threshold_decimal),
    }
}

#[cfg(test)]
mod tests;
