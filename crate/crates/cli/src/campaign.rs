//! Verification campaign: every corpus graph runs through the per-graph checks,
//! then seeded random suites compare the fast algorithms with the brute-force
//! references. The report is a pure function of the configuration; wall-clock
//! timings are returned separately.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{Context, Result};
use girthcut_core::constructions::{check_expected, parse_rational, random_digraph, random_oriented, random_r_free, GeneratorSpec};
use girthcut_core::degree::max_balanced_degree;
use girthcut_core::expansion::{all_sweeps, amgm_holds, exact_mu, short_cycle_through, SweepStrategy};
use girthcut_core::fas::{
    bound_report, exact_min_fas, recursive_expansion_fas_with, quadratic_girth_bound, BetaMode, BoundCheck, BoundReport,
    CheckStatus, FasError,
};
use girthcut_core::oracle;
use girthcut_core::periodicity::{
    build_coprime_walk, coin_represent, cycle_spectrum, cycle_spectrum_dfs, lambda_exact, partition_is_valid,
    PeriodReport, SpectrumReport,
};
use girthcut_core::rational::{int, ratio};
use girthcut_core::scc::strong_components;
use girthcut_core::traversal::{is_simple_cycle, shortest_cycle_at, stats, GraphStats};
use girthcut_core::Digraph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analyze::{beta_density, expansion, feedback_arc_set, spectrum, CutSummary, Exactness, Limits};
use crate::corpus::{default_manifest, CorpusEntry};

/// Largest `n` for the short-cycle premise, duality and periodicity checks.
const SMALL_N: usize = 16;
const DUALITY_N: usize = 14;
const PERIODICITY_N: usize = 14;
const LAMBDA_EDGES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialCounts {
    /// Random digraphs with `n ≤ 8` checked against the permutation oracle.
    pub fas_oracle: usize,
    /// Random digraphs with `n ≤ 10` for the two spectrum algorithms.
    pub spectrum_oracle: usize,
    /// Random digraphs with `n ≤ 12` against the subset enumeration of `μ`.
    pub mu_oracle: usize,
    /// Random r-free digraphs with `n ≤ 16`, `r ≥ 3` for the non-adjacency bounds.
    pub r_free: usize,
    /// Dense random oriented graphs with `n ≤ 40` for the balanced-degree bound.
    pub oriented: usize,
}

impl Default for TrialCounts {
    fn default() -> Self {
        TrialCounts {
            fas_oracle: 1000,
            spectrum_oracle: 1000,
            mu_oracle: 300,
            r_free: 2000,
            oriented: 120,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub manifest: Vec<CorpusEntry>,
    /// Directory that relative file entries resolve against.
    pub base_dir: Option<PathBuf>,
    pub limits: Limits,
    pub trials: TrialCounts,
    pub seed: u64,
    /// Worker threads; 0 lets the pool decide.
    pub workers: usize,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            manifest: default_manifest(),
            base_dir: None,
            limits: Limits::default(),
            trials: TrialCounts::default(),
            seed: 0,
            workers: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

/// A failed check with the graph that reproduces it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub subject: String,
    pub detail: String,
    /// Edge list of the failing graph.
    pub witness: String,
}

/// A graph above the conjectured `2γ/((r+1)(r-2))` bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub subject: String,
    pub r: Option<usize>,
    pub gamma: usize,
    pub beta: usize,
    pub bound: String,
    pub witness: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Tally {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Skipped => self.skipped += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PremiseReport {
    /// Smallest `r ≥ 9` with `μ ≥ 25n/r²`, when `μ > 0`.
    pub r: Option<usize>,
    pub triggered: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkSummary {
    pub anchor: usize,
    pub r: usize,
    pub length: usize,
    pub max_visits: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub label: String,
    pub stats: GraphStats,
    pub bounds: BoundReport,
    pub fas_method: Exactness,
    pub beta_density: String,
    pub expansion: Option<CutSummary>,
    pub periods: PeriodReport,
    pub spectrum: Option<SpectrumReport>,
    pub lambda: Option<usize>,
    pub short_cycle_premise: Option<PremiseReport>,
    /// Sweep levels on which the layer/cut inequality was checked.
    pub sweep_levels_checked: usize,
    pub coprime_walks: Vec<WalkSummary>,
    pub checks: Vec<CheckOutcome>,
}

impl GraphReport {
    pub fn status_of(&self, check: &str) -> Vec<Status> {
        self.checks.iter().filter(|c| c.check == check).map(|c| c.status).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub seed: u64,
    pub limits: Limits,
    pub trials: TrialCounts,
    pub graphs: Vec<GraphReport>,
    pub checks: BTreeMap<String, Tally>,
    pub failures: Vec<Failure>,
    pub sullivan_findings: Vec<Finding>,
    pub premise_evaluated: usize,
    pub premise_triggered: usize,
    pub coprime_walks: usize,
}

impl CampaignReport {
    pub fn tally(&self, check: &str) -> Tally {
        self.checks.get(check).copied().unwrap_or_default()
    }

    /// 2 when a proven statement failed, 0 otherwise (conjecture findings included).
    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            0
        } else {
            2
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    /// Seconds per phase.
    pub phases: BTreeMap<String, f64>,
    pub per_graph: Vec<(String, f64)>,
}

/// Per-item accumulator of check outcomes.
struct Recorder {
    subject: String,
    witness: String,
    outcomes: Vec<CheckOutcome>,
    failures: Vec<Failure>,
}

impl Recorder {
    fn new(subject: String, g: &Digraph) -> Self {
        Recorder {
            subject,
            witness: g.to_edge_list(),
            outcomes: Vec::new(),
            failures: Vec::new(),
        }
    }

    fn record(&mut self, check: &str, status: Status, detail: Option<String>) {
        if status == Status::Fail {
            self.failures.push(Failure {
                check: check.to_string(),
                subject: self.subject.clone(),
                detail: detail.clone().unwrap_or_default(),
                witness: self.witness.clone(),
            });
        }
        self.outcomes.push(CheckOutcome {
            check: check.to_string(),
            status,
            detail,
        });
    }

    fn assert(&mut self, check: &str, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.record(check, Status::Pass, None);
        } else {
            self.record(check, Status::Fail, Some(detail()));
        }
    }

    fn skip(&mut self, check: &str, why: &str) {
        self.record(check, Status::Skipped, Some(why.to_string()));
    }

    fn bound(&mut self, check: &str, b: &BoundCheck, beta: usize) {
        match b.status {
            CheckStatus::Pass => self.record(check, Status::Pass, None),
            CheckStatus::Fail => self.record(
                check,
                Status::Fail,
                Some(format!("beta = {beta} exceeds {} = {:?}", b.formula, b.value())),
            ),
            CheckStatus::OutOfScope => self.skip(check, "r out of range"),
            CheckStatus::Inconclusive => self.skip(check, "only an upper bound on beta"),
        }
    }
}

fn smallest_premise_r(mu_num: i128, mu_den: i128, n: usize) -> Option<usize> {
    // smallest r ≥ 9 with μ·r² ≥ 25n
    if mu_num == 0 {
        return None;
    }
    let mut r = 9usize;
    while mu_num * ((r * r) as i128) < 25 * n as i128 * mu_den {
        r += 1;
    }
    Some(r)
}

fn evaluate_graph(label: String, spec: Option<&GeneratorSpec>, g: &Digraph, limits: &Limits) -> Result<(GraphReport, Vec<Failure>, Option<Finding>)> {
    let mut rec = Recorder::new(label.clone(), g);
    let st = stats(g);
    let n = g.n();
    let r = st.r_free_level();

    if let Some(spec) = spec {
        let res = check_expected(g, &spec.expected());
        rec.assert("expected-properties", res.is_ok(), || format!("{res:?}"));
    }

    let fas = feedback_arc_set(g, limits)?;
    let exact_beta = (fas.method == Exactness::Exact).then_some(fas.beta);
    let verified = fas.certificate.verify(g);
    rec.assert("fas-certificate", verified.is_ok(), || format!("{verified:?}"));
    if fas.method == Exactness::Exact && fas.beta > 0 {
        let mut mutant = fas.certificate.clone();
        mutant.removed_edges.remove(0);
        let res = mutant.verify(g);
        rec.assert("certificate-mutant-rejected", matches!(res, Err(FasError::NotAcyclic { .. })), || {
            format!("dropping an edge from a minimum certificate gave {res:?}")
        });
    }

    if let Some(GeneratorSpec::BlowupCycle { p, parts }) = spec {
        if parts.windows(2).all(|w| w[0] == w[1]) {
            match exact_beta {
                Some(beta) => {
                    let b = parts[0];
                    rec.assert("tight-family", beta == b * b && st.girth == Some(*p), || {
                        format!("beta = {beta}, girth = {:?}; expected {} and {p}", st.girth, b * b)
                    })
                }
                None => rec.skip("tight-family", "beta not exact"),
            }
        }
    }

    let bounds = bound_report(g, limits.exact_limit)?;
    rec.bound("bound-quadratic", &bounds.quadratic, bounds.beta);
    rec.bound("bound-gamma-linear", &bounds.gamma_linear, bounds.beta);
    rec.bound("bound-gamma-induction", &bounds.gamma_induction, bounds.beta);
    let finding = bounds.sullivan_violated().then(|| Finding {
        subject: label.clone(),
        r,
        gamma: bounds.gamma,
        beta: bounds.beta,
        bound: bounds.sullivan.value().map(|v| v.to_string()).unwrap_or_default(),
        witness: rec.witness.clone(),
    });

    // recursive construction and the layer/cut inequality on every sweep it makes
    let mut levels_checked = 0usize;
    let mut amgm_failure: Option<String> = None;
    let mut amgm = |trace: &girthcut_core::expansion::SweepTrace| {
        for i in 0..trace.levels.len() {
            levels_checked += 1;
            if amgm_failure.is_none() && !amgm_holds(trace, i) {
                amgm_failure = Some(format!("sweep from {} ({:?}) level {i}", trace.source, trace.direction));
            }
        }
    };
    match r {
        Some(r) if r >= 2 => {
            let res = recursive_expansion_fas_with(g, r, SweepStrategy::AllVertices, &mut |step| amgm(&step.sweep.trace));
            match res {
                Ok(cert) => {
                    let bound = quadratic_girth_bound(n, r);
                    rec.assert("recursive-construction", cert.verified_acyclic && int(cert.size()) <= bound, || {
                        format!("|X| = {} against 25n^2/r^2 = {bound}", cert.size())
                    })
                }
                Err(e) => rec.record("recursive-construction", Status::Fail, Some(e.to_string())),
            }
        }
        _ => rec.skip("recursive-construction", "no cycle or r < 2"),
    }
    if n <= SMALL_N {
        for s in all_sweeps(g) {
            amgm(&s.trace);
        }
    }
    if levels_checked > 0 {
        rec.assert("sweep-amgm", amgm_failure.is_none(), || amgm_failure.clone().unwrap_or_default());
    }

    let expansion = expansion(g, limits)?;
    let exact_cut = expansion.as_ref().filter(|c| c.method == Exactness::Exact).map(|c| &c.cut);

    let mut premise = None;
    if let (Some(cut), true) = (exact_cut, n <= SMALL_N) {
        let pr = smallest_premise_r(cut.mu_num, cut.mu_den, n);
        let triggered = pr.is_some();
        if let Some(pr) = pr {
            let missing = (0..n).find(|&v| short_cycle_through(g, v, pr).map_or(true, |c| c.len() > pr));
            rec.assert("short-cycle-premise", missing.is_none(), || {
                format!("mu = {}/{} >= 25n/r^2 for r = {pr}, but vertex {missing:?} has no cycle of length <= r", cut.mu_num, cut.mu_den)
            });
        } else {
            rec.skip("short-cycle-premise", "premise not met");
        }
        premise = Some(PremiseReport { r: pr, triggered });
    }
    if n <= 10 {
        let bad = (0..n).find(|&v| short_cycle_through(g, v, n).map(|c| c.len()) != oracle::shortest_closed_walk(g, v));
        rec.assert("short-cycle-exact", bad.is_none(), || format!("vertex {bad:?}"));
    }

    if let (Some(cut), Some(beta), true) = (exact_cut, exact_beta, n <= DUALITY_N) {
        let lhs = ratio(cut.mu_num, cut.mu_den) * int(n / 2);
        rec.assert("mu-beta-duality", lhs <= int(beta), || format!("mu*floor(n/2) = {lhs} > beta = {beta}"));
    }

    let periods = girthcut_core::periodicity::pseudoperiodicity(g);
    if n <= PERIODICITY_N {
        for c in &periods.components {
            let (h, _) = g.induced(&c.vertices);
            let spec_gcd = cycle_spectrum(&h, limits.spectrum_limit.max(PERIODICITY_N)).map(|s| s.gcd());
            let partition_ok = c.classes.as_ref().map_or(true, |cl| partition_is_valid(g, cl));
            rec.assert("periodicity-structure", spec_gcd == Ok(c.period) && partition_ok, || {
                format!("component {:?}: period {} vs spectrum gcd {spec_gcd:?}, partition valid {partition_ok}", c.vertices, c.period)
            });
        }
    }

    let mut lambda = None;
    if let (Some(beta), true) = (exact_beta, g.m() <= LAMBDA_EDGES) {
        let lam = lambda_exact(g, LAMBDA_EDGES)?;
        lambda = Some(lam.lambda());
        rec.assert("lambda-vs-beta", lam.lambda() <= beta, || format!("lambda = {} > beta = {beta}", lam.lambda()));
    }

    let mut walks = Vec::new();
    for c in periods.aperiodic_components() {
        let anchor = c.vertices[0];
        let wr = shortest_cycle_at(g, anchor).expect("aperiodic component has cycles").len();
        match build_coprime_walk(g, &c.vertices, wr, anchor) {
            Ok(w) => {
                let ok = w.check(g).is_ok() && w.length % wr == 1 && w.max_visits() <= 2 * wr * wr;
                rec.assert("coprime-walk", ok, || format!("walk {:?} for r = {wr}", w.walk));
                walks.push(WalkSummary {
                    anchor,
                    r: wr,
                    length: w.length,
                    max_visits: w.max_visits(),
                });
            }
            Err(e) => rec.record("coprime-walk", Status::Fail, Some(e.to_string())),
        }
    }

    if st.is_oriented && n >= 4 && 8 * g.m() >= 3 * n * n {
        rec.assert("balanced-degree", balanced_degree_holds(g), || "no vertex with large in- and outdegree".into());
    }
    if let Some(GeneratorSpec::TwoBlockRegular { n: bn, eps }) = spec {
        let d = (int(1) - parse_rational(eps)? * 2) * int(*bn) / 4;
        let best = max_balanced_degree(g).map_or(0, |(_, d)| d);
        rec.assert("two-block-tightness", int(best) == d, || format!("max min-degree {best} vs {d}"));
    }

    let report = GraphReport {
        label,
        stats: st,
        beta_density: beta_density(bounds.beta, n),
        fas_method: fas.method,
        bounds,
        expansion,
        periods,
        spectrum: spectrum(g, limits)?,
        lambda,
        short_cycle_premise: premise,
        sweep_levels_checked: levels_checked,
        coprime_walks: walks,
        checks: rec.outcomes,
    };
    Ok((report, rec.failures, finding))
}

/// Some vertex has `min(in, out) ≥ (1-2ε)n/4 - 1` where `m = (1-ε)n²/2`,
/// i.e. `4n·(d+1) ≥ 4m - n²`.
pub fn balanced_degree_holds(g: &Digraph) -> bool {
    let n = g.n() as i128;
    let d = max_balanced_degree(g).map_or(0, |(_, d)| d) as i128;
    4 * n * (d + 1) >= 4 * g.m() as i128 - n * n
}

fn trial_seed(base: u64, suite: u64, i: usize) -> u64 {
    base.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(suite << 40)
        .wrapping_add(i as u64)
}

const DENSITIES: [f64; 5] = [0.15, 0.25, 0.35, 0.5, 0.7];

type TrialResult = Vec<(String, Status, Option<Failure>)>;

fn one(check: &str, subject: String, g: &Digraph, ok: bool, detail: impl FnOnce() -> String) -> (String, Status, Option<Failure>) {
    if ok {
        (check.into(), Status::Pass, None)
    } else {
        let f = Failure {
            check: check.into(),
            subject,
            detail: detail(),
            witness: g.to_edge_list(),
        };
        (check.into(), Status::Fail, Some(f))
    }
}

fn fas_trial(seed: u64, i: usize) -> Result<TrialResult> {
    let n = 2 + i % 7;
    let s = trial_seed(seed, 1, i);
    let g = random_digraph(n, DENSITIES[(i / 7) % 5], s)?;
    let subject = format!("random-digraph(n={n},seed={s})");
    let ours = exact_min_fas(&g, 20)?.size();
    let brute = oracle::permutation_min_fas(&g);
    let mut sccs = strong_components(&g).components;
    sccs.sort();
    let closure = oracle::reachability_components(&g);
    Ok(vec![
        one("oracle-fas-permutation", subject.clone(), &g, ours == brute, || format!("dp {ours}, permutations {brute}")),
        one("oracle-scc", subject, &g, sccs == closure, || format!("{sccs:?} vs {closure:?}")),
    ])
}

fn spectrum_trial(seed: u64, i: usize) -> Result<TrialResult> {
    let n = 2 + i % 9;
    let s = trial_seed(seed, 2, i);
    let g = random_digraph(n, DENSITIES[(i / 9) % 5], s)?;
    let dp = cycle_spectrum(&g, 18)?;
    let dfs = cycle_spectrum_dfs(&g);
    let witnesses = dp.entries.iter().all(|e| e.witness.len() == e.length && is_simple_cycle(&g, &e.witness));
    Ok(vec![one(
        "oracle-spectrum-dfs",
        format!("random-digraph(n={n},seed={s})"),
        &g,
        dp.lengths() == dfs.lengths() && witnesses,
        || format!("dp {:?}, dfs {:?}, witnesses ok {witnesses}", dp.lengths(), dfs.lengths()),
    )])
}

fn mu_trial(seed: u64, i: usize) -> Result<TrialResult> {
    let n = 2 + i % 11;
    let s = trial_seed(seed, 3, i);
    let g = random_digraph(n, DENSITIES[(i / 11) % 5], s)?;
    let ours = exact_mu(&g, 22)?.mu();
    let brute = oracle::brute_mu(&g);
    Ok(vec![one(
        "oracle-exact-mu",
        format!("random-digraph(n={n},seed={s})"),
        &g,
        Some(ours) == brute,
        || format!("exact {ours}, subsets {brute:?}"),
    )])
}

fn r_free_trial(seed: u64, i: usize, exact_limit: usize) -> Result<TrialResult> {
    let n = 5 + i % 12;
    let r = (3 + (i / 12) % 4).min(n - 2);
    let density = [0.1, 0.3, 0.6][(i / 48) % 3];
    let s = trial_seed(seed, 4, i);
    let g = random_r_free(n, r, density, s)?;
    let subject = format!("random-r-free(n={n},r={r},density={density},seed={s})");
    let rep = bound_report(&g, exact_limit.max(SMALL_N))?;
    if rep.degenerate || rep.beta_mode != BetaMode::Exact || rep.r.map_or(true, |r| r < 3) {
        return Ok(vec![("r-free-gamma-bounds".into(), Status::Skipped, None)]);
    }
    let lin = rep.gamma_linear.status == CheckStatus::Pass;
    let ind = rep.gamma_induction.status == CheckStatus::Pass;
    Ok(vec![one("r-free-gamma-bounds", subject, &g, lin && ind, || {
        format!("beta = {}, gamma = {}, r = {:?}: linear {lin}, induction {ind}", rep.beta, rep.gamma, rep.r)
    })])
}

fn oriented_trial(seed: u64, i: usize) -> Result<TrialResult> {
    let n = 8 + i % 33;
    let lo = (3 * n * n).div_ceil(8);
    let hi = n * (n - 1) / 2;
    let m = lo + (i * 7919) % (hi - lo + 1);
    let s = trial_seed(seed, 5, i);
    let g = random_oriented(n, m, s)?;
    Ok(vec![one(
        "balanced-degree-random",
        format!("random-oriented(n={n},m={m},seed={s})"),
        &g,
        balanced_degree_holds(&g),
        || "no vertex with large in- and outdegree".into(),
    )])
}

/// Two-coin representations against direct search for `x, y ≤ 12`, `n ≤ 200`.
pub fn coin_suite() -> TrialResult {
    let mut out = Vec::new();
    for x in 1..=12u64 {
        for y in 1..=12u64 {
            if num_integer::gcd(x, y) != 1 {
                continue;
            }
            let bad = (0..=200u64).find(|&n| {
                let brute = (0..=n / x).any(|a| (n - a * x) % y == 0);
                let rep = coin_represent(x, y, n).expect("coprime");
                let valid = rep.coefficients.map_or(true, |(a, b)| a * x + b * y == n);
                rep.coefficients.is_some() != brute || !valid
            });
            let empty = Digraph::empty(0);
            out.push(one("coin-representation", format!("coins({x},{y})"), &empty, bad.is_none(), || {
                format!("disagrees at n = {bad:?}")
            }));
        }
    }
    let gaps: Vec<u64> = (1..=200).filter(|&n| coin_represent(3, 5, n).unwrap().coefficients.is_none()).collect();
    out.push(one("coin-frobenius-3-5", "coins(3,5)".into(), &Digraph::empty(0), gaps == [1, 2, 4, 7], || {
        format!("unrepresentable: {gaps:?}")
    }));
    out
}

pub fn run_campaign(config: &CampaignConfig) -> Result<(CampaignReport, Timing)> {
    config.limits.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .context("building worker pool")?;
    pool.install(|| run_in_pool(config))
}

fn run_in_pool(config: &CampaignConfig) -> Result<(CampaignReport, Timing)> {
    let mut timing = Timing::default();
    let limits = config.limits;

    let start = Instant::now();
    let graphs: Vec<(GraphReport, Vec<Failure>, Option<Finding>, f64)> = config
        .manifest
        .par_iter()
        .map(|entry| {
            let t = Instant::now();
            let g = entry.load(config.base_dir.as_deref())?;
            let (rep, fails, finding) = evaluate_graph(entry.label(), entry.spec(), &g, &limits)
                .with_context(|| format!("evaluating {}", entry.label()))?;
            Ok((rep, fails, finding, t.elapsed().as_secs_f64()))
        })
        .collect::<Result<_>>()?;
    timing.phases.insert("corpus".into(), start.elapsed().as_secs_f64());

    let mut checks: BTreeMap<String, Tally> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut findings = Vec::new();
    let mut reports = Vec::new();
    for (rep, fails, finding, secs) in graphs {
        for c in &rep.checks {
            checks.entry(c.check.clone()).or_default().add(c.status);
        }
        timing.per_graph.push((rep.label.clone(), secs));
        failures.extend(fails);
        findings.extend(finding);
        reports.push(rep);
    }

    let seed = config.seed;
    let t = &config.trials;
    let suites: [(&str, usize, &(dyn Fn(usize) -> Result<TrialResult> + Sync)); 5] = [
        ("fas-oracle", t.fas_oracle, &|i| fas_trial(seed, i)),
        ("spectrum-oracle", t.spectrum_oracle, &|i| spectrum_trial(seed, i)),
        ("mu-oracle", t.mu_oracle, &|i| mu_trial(seed, i)),
        ("r-free", t.r_free, &|i| r_free_trial(seed, i, limits.exact_limit)),
        ("oriented", t.oriented, &|i| oriented_trial(seed, i)),
    ];
    let mut trial_results: Vec<TrialResult> = Vec::new();
    for (name, count, f) in suites {
        let start = Instant::now();
        let res: Vec<TrialResult> = (0..count).into_par_iter().map(f).collect::<Result<_>>()?;
        trial_results.extend(res);
        timing.phases.insert(name.into(), start.elapsed().as_secs_f64());
    }
    trial_results.push(coin_suite());
    for (check, status, failure) in trial_results.into_iter().flatten() {
        checks.entry(check).or_default().add(status);
        failures.extend(failure);
    }

    let premise_evaluated = reports.iter().filter(|r| r.short_cycle_premise.is_some()).count();
    let premise_triggered = reports
        .iter()
        .filter(|r| r.short_cycle_premise.as_ref().is_some_and(|p| p.triggered))
        .count();
    let coprime_walks = reports.iter().map(|r| r.coprime_walks.len()).sum();
    let report = CampaignReport {
        seed,
        limits,
        trials: config.trials,
        graphs: reports,
        checks,
        failures,
        sullivan_findings: findings,
        premise_evaluated,
        premise_triggered,
        coprime_walks,
    };
    Ok((report, timing))
}
