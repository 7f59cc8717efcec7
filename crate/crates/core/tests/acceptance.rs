//! The acceptance suite: one PASS/FAIL line per criterion, exit status 1 if
//! any criterion fails. Every expected value comes from an oracle written
//! here, independent of the library's own algorithms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};
use treecert_core::certify::lemmas::{check_lemma_small_cut, LemmaCheck};
use treecert_core::certify::{certify, threshold_rational, CertificateRequest, Outcome, TheoremId};
use treecert_core::connectivity::edge_connectivity;
use treecert_core::graph::{components, Graph, VertexPartition};
use treecert_core::harness::{run_experiment, ExperimentConfig};
use treecert_core::packing::{
    forest_requirement, lemma41_decompose, lemma41_gadget, nu_f_exact, pack_spanning_trees, remainder_feasible,
    search_pkd_witness, tau_matroid, tau_partition_bruteforce, verify_pkd_witness, PkdSearch, DEFAULT_BUDGET,
};
use treecert_core::quotient::{check_interlacing, check_weyl, quotient_laplacian, Interlacing};
use treecert_core::rational::Rational;
use treecert_core::spectra::{
    build_matrix, laplacian_profile, spectral_profile, sym_eigenvalues, SymmetricMatrix, DEFAULT_TOL,
};

type Edge = (usize, usize);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

// ---------------------------------------------------------------- oracles

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[v] = r;
        r
    }

    /// `false` if `u` and `v` were already joined.
    fn union(&mut self, u: usize, v: usize) -> bool {
        let (a, b) = (self.find(u), self.find(v));
        self.0[a] = b;
        a != b
    }
}

fn acyclic(n: usize, edges: &[Edge]) -> bool {
    let mut uf = UnionFind::new(n);
    edges.iter().all(|&(u, v)| uf.union(u, v))
}

fn tree_orders(n: usize, edges: &[Edge]) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    for &(u, v) in edges {
        uf.union(u, v);
    }
    let mut size = vec![0; n];
    for v in 0..n {
        let r = uf.find(v);
        size[r] += 1;
    }
    size.into_iter().filter(|&s| s > 0).collect()
}

/// Minimum of `cross(P) / (|P| - 1)` over every partition with at least two
/// blocks, by walking restricted growth strings.
fn partition_oracle(g: &Graph) -> Rational {
    let n = g.n();
    let mut labels = vec![0usize; n];
    let mut best: Option<Rational> = None;
    loop {
        let blocks = labels.iter().max().unwrap() + 1;
        if blocks >= 2 {
            let cross = g.edges().iter().filter(|&&(u, v)| labels[u] != labels[v]).count();
            let value = Rational::new(cross as i64, blocks as i64 - 1);
            if best.is_none_or(|b| value < b) {
                best = Some(value);
            }
        }
        // next restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                return best.unwrap_or_else(|| Rational::from_integer(0));
            }
            i -= 1;
            let prefix_max = labels[..i].iter().max().copied().unwrap_or(0);
            if labels[i] <= prefix_max {
                labels[i] += 1;
                labels[i + 1..].iter_mut().for_each(|l| *l = 0);
                break;
            }
        }
    }
}

/// Forest of the remainder meeting the size and large-component conditions,
/// by trying every subset.
fn remainder_oracle(n: usize, remainder: &[Edge], d: usize) -> bool {
    let required = forest_requirement(n, d);
    (0u32..1 << remainder.len()).any(|mask| {
        let f: Vec<Edge> = (0..remainder.len()).filter(|&i| mask >> i & 1 == 1).map(|i| remainder[i]).collect();
        if f.len() < required || !acyclic(n, &f) {
            return false;
        }
        let orders = tree_orders(n, &f);
        orders.len() == 1 || orders.iter().any(|&c| c > d)
    })
}

fn valid_packing(g: &Graph, trees: &[Vec<Edge>]) -> bool {
    let mut seen = std::collections::HashSet::new();
    trees.iter().all(|t| {
        t.len() + 1 == g.n()
            && acyclic(g.n(), t)
            && t.iter().all(|&(u, v)| g.has_edge(u, v) && seen.insert((u.min(v), u.max(v))))
    })
}

// ---------------------------------------------------------------- corpora

fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let pairs: Vec<Edge> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap()
}

fn all_connected_upto(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let pairs = n * (n - 1) / 2;
        for mask in 0u32..1 << pairs {
            let g = graph_from_mask(n, mask);
            if g.is_connected() {
                out.push(g);
            }
        }
    }
    out
}

fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

fn random_connected(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let p = rng.gen_range(0.25..0.95);
        let g = random_graph(n, p, rng);
        if g.is_connected() {
            return g;
        }
    }
}

fn random_corpus(count: usize, sizes: std::ops::RangeInclusive<usize>, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(sizes.clone());
            random_connected(n, &mut rng)
        })
        .collect()
}

fn base_corpus() -> Vec<Graph> {
    let mut corpus = all_connected_upto(5);
    corpus.extend(random_corpus(500, 2..=7, 0xC0FFEE));
    corpus
}

// ---------------------------------------------------------------- criteria

fn oracle_equivalence(corpus: &[Graph]) -> Verdict {
    let start = Instant::now();
    let (mut checks, mut bad) = (0, 0);
    for g in corpus {
        let tau = tau_partition_bruteforce(g).unwrap();
        for k in 1..=tau + 1 {
            checks += 1;
            let packed = pack_spanning_trees(g, k).unwrap();
            let agrees = match &packed {
                Some(trees) => tau >= k && valid_packing(g, trees),
                None => tau < k,
            };
            bad += usize::from(!agrees);
        }
    }
    let took = start.elapsed();
    verdict(
        bad == 0 && took < Duration::from_secs(60),
        format!("{} graphs, {checks} (graph, k) pairs, {bad} disagreements, {took:.2?} (limit 60s)", corpus.len()),
    )
}

fn tau_is_floor_nu(corpus: &[Graph]) -> Verdict {
    let mut bad = 0;
    for g in corpus {
        let nu = nu_f_exact(g).unwrap().value;
        let oracle = partition_oracle(g);
        let tau = tau_matroid(g).unwrap();
        if nu != oracle || tau as i64 != nu.floor().to_integer() {
            bad += 1;
        }
    }
    verdict(bad == 0, format!("{} graphs, {bad} disagreements (nu_f vs partition oracle, tau vs floor)", corpus.len()))
}

fn fractional_sufficiency(corpus: &[Graph]) -> Verdict {
    let start = Instant::now();
    let mut graphs: Vec<&Graph> = corpus.iter().collect();
    let larger = random_corpus(60, 8..=9, 0xBEEF);
    graphs.extend(larger.iter());
    let (mut checked, mut failures) = (0, Vec::new());
    for g in graphs {
        let nu = partition_oracle(g);
        for k in 1..=3usize {
            for d in 1..=g.min_degree() {
                let bound = Rational::from_integer(k as i64) + Rational::new(d as i64 - 1, d as i64);
                if nu <= bound {
                    continue;
                }
                checked += 1;
                let ok = match search_pkd_witness(g, k, d, DEFAULT_BUDGET).unwrap() {
                    PkdSearch::Found(w) => verify_pkd_witness(g, &w).unwrap().is_empty(),
                    _ => false,
                };
                if !ok {
                    failures.push(format!("{:?} k={k} d={d}", g.edges()));
                }
            }
        }
    }
    let took = start.elapsed();
    verdict(
        failures.is_empty() && took < Duration::from_secs(300),
        format!(
            "{checked} (graph, k, d) cases above the bound, {} failures, {took:.2?} (limit 300s) {}",
            failures.len(),
            failures.first().map(String::as_str).unwrap_or("")
        ),
    )
}

fn spectral_soundness(report_jsonl: &mut Option<String>) -> Verdict {
    let start = Instant::now();
    let cfg = ExperimentConfig::default_config();
    let report = match run_experiment(&cfg) {
        Ok(r) => r,
        Err(e) => return verdict(false, format!("default experiment failed: {e}")),
    };
    let s = &report.summary;
    let uncross_checked = report
        .rows
        .iter()
        .filter(|r| r.n.is_some_and(|n| n <= 10))
        .flat_map(|r| &r.evaluations)
        .filter(|e| e.outcome.is_some() && e.ground_truth.is_none())
        .count();
    *report_jsonl = Some(report.to_jsonl() + &report.aggregates_csv());

    let k7 = certify(&Graph::complete(7), &CertificateRequest::new(TheoremId::Thm12, 2)).unwrap();
    let k10 = certify(&Graph::complete(10), &CertificateRequest::new(TheoremId::Thm13, 2)).unwrap();
    let k7_ok = k7.outcome == Outcome::Certified
        && threshold_rational(&k7) == Some(Rational::new(136, 63))
        && (k7.measured.unwrap().value() - 7.0).abs() < 1e-9;
    let k10_ok = k10.outcome == Outcome::Certified
        && threshold_rational(&k10) == Some(Rational::new(13, 5))
        && (k10.measured.unwrap().value() - 10.0).abs() < 1e-9;
    verdict(
        s.trials >= 2000 && s.counterexamples == 0 && uncross_checked == 0 && k7_ok && k10_ok,
        format!(
            "{} trials, {} evaluations, {} certified, {} marginal, {} counterexamples, {} guarantee failures, \
             K7 thm1.2 {}, K10 thm1.3 {}, {:.2?}",
            s.trials,
            s.evaluations,
            s.certified,
            s.marginal,
            s.counterexamples,
            s.guarantee_failures,
            if k7_ok { "136/63 CERTIFIED" } else { "WRONG" },
            if k10_ok { "13/5 CERTIFIED" } else { "WRONG" },
            start.elapsed()
        ),
    )
}

fn random_partition(n: usize, rng: &mut ChaCha8Rng) -> VertexPartition {
    let blocks = rng.gen_range(1..n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut labels = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        labels[v] = if i < blocks { i } else { rng.gen_range(0..blocks) };
    }
    VertexPartition::from_labels(&labels)
}

fn interlacing_suite() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut bad = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(2..=12);
        let p = rng.gen_range(0.1..0.9);
        let g = random_graph(n, p, &mut rng);
        let part = random_partition(n, &mut rng);
        let small = quotient_laplacian(&g, &part).unwrap().eigenvalues(DEFAULT_TOL).unwrap();
        let big = laplacian_profile(&g, DEFAULT_TOL).unwrap().eigenvalues;
        bad += usize::from(check_interlacing(&big, &small, 1e-8).unwrap() != Interlacing::Pass);
    }
    verdict(bad == 0, format!("1000 (graph, partition) pairs, n <= 12, {bad} failures"))
}

fn weyl_suite(corpus: &[Graph]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut violations = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let a = SymmetricMatrix::from_fn(n, |_, _| rng.gen_range(-5.0..5.0));
        let b = SymmetricMatrix::from_fn(n, |_, _| rng.gen_range(-5.0..5.0));
        violations += check_weyl(&a, &b, 1e-8).unwrap().len();
    }
    for g in corpus {
        let d = build_matrix(g, 1.0, 0.0);
        let neg_l = build_matrix(g, -1.0, 1.0);
        violations += check_weyl(&d, &neg_l, 1e-8).unwrap().len();
    }
    verdict(violations == 0, format!("500 random pairs + {} D/-L splits, {violations} violations", corpus.len()))
}

fn eigensolver_accuracy() -> Verdict {
    let mut worst_kn: f64 = 0.0;
    for n in 2..=12 {
        let eig = laplacian_profile(&Graph::complete(n), DEFAULT_TOL).unwrap().eigenvalues;
        let expected: Vec<f64> = std::iter::repeat_n(n as f64, n - 1).chain([0.0]).collect();
        for (x, y) in eig.iter().zip(&expected) {
            worst_kn = worst_kn.max((x - y).abs());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut worst_trace: f64 = 0.0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.0..1.0);
        let g = random_graph(n, p, &mut rng);
        let (a, b) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let m = build_matrix(&g, a, b);
        let sum: f64 = sym_eigenvalues(&m, DEFAULT_TOL).unwrap().iter().sum();
        worst_trace = worst_trace.max((sum - m.trace()).abs());
        let lap: f64 = spectral_profile(&g, 1.0, -1.0, DEFAULT_TOL).unwrap().eigenvalues.iter().sum();
        worst_trace = worst_trace.max((lap - 2.0 * g.m() as f64).abs());
    }
    verdict(
        worst_kn < 1e-9 && worst_trace < 1e-8,
        format!("max |L(K_n) error| = {worst_kn:.1e} (limit 1e-9), max |sum - trace| = {worst_trace:.1e} (limit 1e-8)"),
    )
}

fn exact_nu_values() -> Verdict {
    let mut cases: Vec<(String, Graph, Rational)> = vec![
        ("K4".into(), Graph::complete(4), Rational::from_integer(2)),
        ("K5".into(), Graph::complete(5), Rational::new(5, 2)),
    ];
    for n in 3..=8 {
        cases.push((format!("C{n}"), Graph::cycle(n), Rational::new(n as i64, n as i64 - 1)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for n in 2..=10 {
        let tree = Graph::new(n, (1..n).map(|v| (rng.gen_range(0..v), v))).unwrap();
        cases.push((format!("tree{n}"), tree, Rational::from_integer(1)));
    }
    let wrong: Vec<String> = cases
        .iter()
        .filter(|(_, g, want)| nu_f_exact(g).unwrap().value != *want)
        .map(|(name, _, _)| name.clone())
        .collect();
    verdict(wrong.is_empty(), format!("{} graphs, wrong: {wrong:?}", cases.len()))
}

/// Cliques joined by a few random links, so small cuts actually occur.
fn linked_cliques(rng: &mut ChaCha8Rng) -> Graph {
    let sizes: Vec<usize> = (0..rng.gen_range(2..=4)).map(|_| rng.gen_range(2..=5)).collect();
    let sizes: Vec<usize> = sizes
        .into_iter()
        .scan(0, |total, s| {
            *total += s;
            (*total <= 12).then_some(s)
        })
        .collect();
    let mut edges = Vec::new();
    let mut start = 0;
    for (b, &s) in sizes.iter().enumerate() {
        edges.extend((start..start + s).flat_map(|u| (u + 1..start + s).map(move |v| (u, v))));
        if b > 0 {
            let prev = start - sizes[b - 1];
            for _ in 0..rng.gen_range(1..=3) {
                let e = (rng.gen_range(prev..start), rng.gen_range(start..start + s));
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
        }
        start += s;
    }
    Graph::new(start, edges).unwrap()
}

fn small_cut_lemma(corpus: &[Graph]) -> Verdict {
    let mut extra = random_corpus(200, 8..=12, 0x5EED);
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    extra.extend((0..300).map(|_| linked_cliques(&mut rng)));
    let (mut checked, mut vacuous, mut violations) = (0, 0, 0);
    for g in corpus.iter().chain(&extra) {
        checked += 1;
        match check_lemma_small_cut(g).unwrap() {
            LemmaCheck::Vacuous => vacuous += 1,
            LemmaCheck::NoViolation { .. } => {}
            LemmaCheck::Violations { .. } => violations += 1,
        }
    }
    verdict(violations == 0, format!("{checked} graphs n <= 12 ({vacuous} vacuous), {violations} with violations"))
}

fn refinement_lemma() -> Verdict {
    let k = 2;
    let mut failures = Vec::new();
    for seed in 0..25 {
        let gadget = lemma41_gadget(k, seed);
        let g = &gadget.graph;
        let split = match lemma41_decompose(g, &gadget.witness, &gadget.x, k) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        let (kappa, _) = edge_connectivity(g).unwrap();
        let delta = g.min_degree();
        let outside_x = split.x_prime.iter().all(|e| !gadget.x.contains(e) && g.has_edge(e.0, e.1));
        let removed: Vec<Edge> = gadget.x.iter().chain(&split.x_prime).copied().collect();
        let comps = components(&g.without_edges(&removed));
        let ok = outside_x
            && comps == split.components
            && split.x_prime.len() <= kappa
            && comps.len() == 4
            && comps.iter().all(|c| c.len() > delta);
        if !ok {
            failures.push(format!("seed {seed}: |x'| = {}, {} components", split.x_prime.len(), comps.len()));
        }
    }
    verdict(failures.is_empty(), format!("25 gadgets with k = 2, failures: {failures:?}"))
}

fn reduction_soundness() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let (mut feasible, mut bad) = (0, 0);
    for _ in 0..200 {
        let n = rng.gen_range(3..=8);
        let mut pairs: Vec<Edge> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        pairs.shuffle(&mut rng);
        let size = rng.gen_range(0..=pairs.len().min(16));
        pairs.truncate(size);
        let d = rng.gen_range(1..n);
        let oracle = remainder_oracle(n, &pairs, d);
        feasible += usize::from(oracle);
        bad += usize::from(remainder_feasible(n, &pairs, d) != oracle);
    }
    verdict(bad == 0, format!("200 remainders ({feasible} feasible), {bad} disagreements"))
}

fn determinism(first: Option<String>) -> Verdict {
    let mut cfg = ExperimentConfig::default_config();
    let render =
        |cfg: &ExperimentConfig| run_experiment(cfg).map(|r| r.to_jsonl() + &r.aggregates_csv()).unwrap_or_default();
    let first = first.unwrap_or_else(|| render(&cfg));
    let first_jobs = cfg.jobs;
    cfg.jobs = 1;
    let second = render(&cfg);
    verdict(
        !first.is_empty() && first == second,
        format!(
            "default config at jobs = {first_jobs} and jobs = 1: {} bytes, identical = {}",
            first.len(),
            first == second
        ),
    )
}

fn report(index: usize, name: &str, v: Verdict) -> bool {
    println!("{} {index:>2} {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
    v.pass
}

fn main() {
    let corpus = base_corpus();
    let mut default_run = None;
    let results = [
        report(1, "packing oracle equivalence", oracle_equivalence(&corpus)),
        report(2, "tau equals floor of nu_f", tau_is_floor_nu(&corpus)),
        report(3, "fractional bound gives P(k,d)", fractional_sufficiency(&corpus)),
        report(4, "spectral conditions sound", spectral_soundness(&mut default_run)),
        report(5, "quotient interlacing", interlacing_suite()),
        report(6, "Weyl inequalities", weyl_suite(&corpus)),
        report(7, "eigensolver accuracy", eigensolver_accuracy()),
        report(8, "exact nu_f values", exact_nu_values()),
        report(9, "small-cut lemma", small_cut_lemma(&corpus)),
        report(10, "cut refinement", refinement_lemma()),
        report(11, "remainder reduction", reduction_soundness()),
        report(12, "determinism", determinism(default_run)),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed} of {} criteria passed", results.len());
    if passed < results.len() {
        std::process::exit(1);
    }
}
