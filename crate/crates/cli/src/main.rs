use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use treecert_core::certify::{certify, CertificateRequest, CertifyError, TheoremId, DEFAULT_DECISION_TOL};
use treecert_core::connectivity::gt_membership;
use treecert_core::graph::{parse_graph_auto, Graph};
use treecert_core::harness::{run_experiment, ExperimentConfig};
use treecert_core::packing::{
    nu_f_exact, pack_spanning_trees, search_pkd_witness, tau_matroid, verify_pkd_witness, PackingWitness, PkdSearch,
    WitnessConditions, DEFAULT_BUDGET,
};
use treecert_core::rational::Scalar;
use treecert_core::spectra::{spectral_profile, DEFAULT_TOL};

/// Spanning-tree packing certificates from graph spectra.
#[derive(Parser)]
#[command(name = "treecert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues of aD + bA, non-increasing (adjacency by default).
    Spectrum {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: Scalar,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        b: Scalar,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Exact fractional packing number with a minimizing partition.
    NuF {
        #[arg(long)]
        input: PathBuf,
    },
    /// Spanning-tree packing number, optionally with explicit trees.
    Tau {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_name = "K")]
        extract: Option<usize>,
    },
    /// Membership in G_t with a witness.
    Gt {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// Decides P(k,d), or checks a supplied witness.
    VerifyPkd {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Witness JSON to verify instead of searching.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Evaluates one sufficient condition.
    Certify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<Scalar>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<Scalar>,
        /// Force the ground-truth search on (default: only when n <= 10).
        #[arg(long)]
        cross_verify: bool,
        #[arg(long, default_value_t = DEFAULT_DECISION_TOL)]
        decision_tol: f64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Runs a seeded experiment; writes JSON lines plus `<out>.csv` aggregates.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure reported as `{"error": code, "message": ...}` on stderr.
struct Failure {
    code: &'static str,
    message: String,
}

impl Failure {
    fn new(code: &'static str, message: impl ToString) -> Self {
        Self { code, message: message.to_string() }
    }
}

impl From<CertifyError> for Failure {
    fn from(e: CertifyError) -> Self {
        let code = match e {
            CertifyError::Parameter(_) => "PARAMETER_ERROR",
            CertifyError::Precondition(_) => "PRECONDITION",
            CertifyError::Spectra(_) => "NUMERIC_ERROR",
        };
        Failure::new(code, e)
    }
}

/// Successful output and whether a requested decision came back inconclusive.
struct Output {
    body: String,
    inconclusive: bool,
}

impl Output {
    fn json(value: &impl serde::Serialize) -> Self {
        Self { body: serde_json::to_string_pretty(value).expect("output serializes"), inconclusive: false }
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new("IO_ERROR", format!("{}: {e}", path.display())))?;
    parse_graph_auto(&text).map_err(|e| Failure::new("PARSE_ERROR", e))
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Spectrum { input, a, b, tol } => {
            let g = read_graph(&input)?;
            let profile =
                spectral_profile(&g, a.value(), b.value(), tol).map_err(|e| Failure::new("NUMERIC_ERROR", e))?;
            Ok(Output::json(&profile.eigenvalues))
        }
        Command::NuF { input } => {
            let g = read_graph(&input)?;
            Ok(Output::json(&nu_f_exact(&g).map_err(|e| Failure::new("PRECONDITION", e))?))
        }
        Command::Tau { input, extract } => {
            let g = read_graph(&input)?;
            let tau = tau_matroid(&g).map_err(|e| Failure::new("PRECONDITION", e))?;
            let mut out = json!({ "tau": tau });
            if let Some(k) = extract {
                if k > tau {
                    return Err(Failure::new("PRECONDITION", format!("cannot extract {k} trees; τ = {tau}")));
                }
                let trees = pack_spanning_trees(&g, k).map_err(|e| Failure::new("PRECONDITION", e))?;
                out["trees"] = json!(trees.expect("k <= τ"));
            }
            Ok(Output::json(&out))
        }
        Command::Gt { input, t } => {
            let g = read_graph(&input)?;
            let out = match gt_membership(&g, t).map_err(|e| Failure::new("PRECONDITION", e))? {
                Some(w) => json!({ "status": "MEMBER", "witness": w, "leftover": w.leftover(g.n()) }),
                None => json!({ "status": "NOT_MEMBER" }),
            };
            Ok(Output::json(&out))
        }
        Command::VerifyPkd { input, k, d, budget, witness } => {
            let g = read_graph(&input)?;
            if let Some(path) = witness {
                return check_witness(&g, k, d, &path);
            }
            let search = search_pkd_witness(&g, k, d, budget).map_err(|e| Failure::new("PRECONDITION", e))?;
            if let PkdSearch::Found(w) = &search {
                let violations = verify_pkd_witness(&g, w).map_err(|e| Failure::new("INTERNAL_ERROR", e))?;
                if !violations.is_empty() {
                    return Err(Failure::new(
                        "INTERNAL_ERROR",
                        format!("search returned an invalid witness: {violations:?}"),
                    ));
                }
            }
            let mut out = Output::json(&search);
            out.inconclusive = search == PkdSearch::Inconclusive;
            Ok(out)
        }
        Command::Certify { input, theorem, k, d, a, b, cross_verify, decision_tol, budget } => {
            let g = read_graph(&input)?;
            let req = CertificateRequest {
                theorem_id: theorem,
                k,
                d,
                a,
                b,
                decision_tol,
                cross_verify: cross_verify.then_some(true),
                budget,
            };
            let report = certify(&g, &req)?;
            let mut out = Output::json(&report);
            out.inconclusive = cross_verify && report.cross_check.as_ref().is_some_and(|c| c.status == "INCONCLUSIVE");
            Ok(out)
        }
        Command::Experiment { config, jobs, out } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| Failure::new("IO_ERROR", format!("{}: {e}", config.display())))?;
            let mut cfg = ExperimentConfig::from_json(&text).map_err(|e| Failure::new("CONFIG_ERROR", e))?;
            if let Some(jobs) = jobs {
                cfg.jobs = jobs;
            }
            let report = run_experiment(&cfg).map_err(|e| Failure::new("CONFIG_ERROR", e))?;
            let s = &report.summary;
            eprintln!(
                "{} trials ({} skipped, {} errors), {} evaluations, {} certified, {} counterexamples",
                s.trials, s.skipped, s.errors, s.evaluations, s.certified, s.counterexamples
            );
            let jsonl = report.to_jsonl();
            match out {
                Some(path) => {
                    let write = |p: &Path, body: &str| {
                        fs::write(p, body).map_err(|e| Failure::new("IO_ERROR", format!("{}: {e}", p.display())))
                    };
                    write(&path, &jsonl)?;
                    write(&path.with_extension("csv"), &report.aggregates_csv())?;
                    Ok(Output { body: String::new(), inconclusive: false })
                }
                None => Ok(Output { body: jsonl.trim_end().to_string(), inconclusive: false }),
            }
        }
    }
}

fn check_witness(g: &Graph, k: usize, d: usize, path: &Path) -> Result<Output, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new("IO_ERROR", format!("{}: {e}", path.display())))?;
    let w: PackingWitness = serde_json::from_str(&text).map_err(|e| Failure::new("PARSE_ERROR", e))?;
    if (w.k, w.d) != (k, d) {
        return Err(Failure::new("PARAMETER_ERROR", format!("witness is for P({},{}), not P({k},{d})", w.k, w.d)));
    }
    let violations = verify_pkd_witness(g, &w).map_err(|e| Failure::new("PRECONDITION", e))?;
    let conditions = WitnessConditions::from_violations(&violations);
    let status = if violations.is_empty() { "VALID" } else { "INVALID" };
    Ok(Output::json(&json!({ "status": status, "conditions": conditions, "violations": violations })))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            if !out.body.is_empty() {
                // a closed pipe downstream is not an error here
                let _ = writeln!(std::io::stdout(), "{}", out.body);
            }
            ExitCode::from(if out.inconclusive { 3 } else { 0 })
        }
        Err(f) => {
            let err: Value = json!({ "error": f.code, "message": f.message });
            eprintln!("{err}");
            ExitCode::from(2)
        }
    }
}
