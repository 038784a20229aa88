//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;

use girthcut::campaign::{run_campaign, CampaignConfig, CampaignReport, TrialCounts};
use girthcut::corpus::{default_manifest, CorpusEntry};
use girthcut_core::constructions::{blowup_cycle, two_block_regular, GeneratorSpec};
use girthcut_core::degree::max_balanced_degree;
use girthcut_core::expansion::{all_sweeps, amgm_holds, exact_mu, SweepStrategy};
use girthcut_core::fas::{exact_min_fas, quadratic_girth_bound, recursive_expansion_fas_with};
use girthcut_core::oracle;
use girthcut_core::periodicity::{
    build_coprime_walk, coin_represent, component_structure, cycle_spectrum, lambda_exact, partition_is_valid,
};
use girthcut_core::rational::{int, ratio};
use girthcut_core::scc::strong_components;
use girthcut_core::traversal::{shortest_cycle_at, stats};
use girthcut_core::Digraph;

const SEED: u64 = 20_240_601;

struct Outcome {
    ok: bool,
    summary: String,
}

fn outcome(ok: bool, summary: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        summary: summary.into(),
    }
}

/// The built-in corpus plus seeded random digraphs and tournaments.
fn acceptance_manifest() -> Vec<CorpusEntry> {
    let mut m = default_manifest();
    for i in 0..40u64 {
        m.push(CorpusEntry::Spec(GeneratorSpec::RandomDigraph {
            n: 6 + (i as usize % 9),
            density: [0.2, 0.3, 0.45][i as usize % 3],
            seed: 1000 + i,
        }));
    }
    for i in 0..20u64 {
        m.push(CorpusEntry::Spec(GeneratorSpec::RandomTournament {
            n: 5 + (i as usize % 10),
            seed: 2000 + i,
        }));
    }
    m
}

fn corpus() -> Vec<(String, Digraph)> {
    acceptance_manifest()
        .iter()
        .map(|e| (e.label(), e.spec().unwrap().generate().unwrap()))
        .collect()
}

fn no_failures(report: &CampaignReport, check: &str) -> (bool, usize) {
    let t = report.tally(check);
    let witnesses_present = report
        .failures
        .iter()
        .filter(|f| f.check == check)
        .all(|f| !f.witness.is_empty());
    (t.fail == 0 && witnesses_present, t.pass)
}

fn tight_family() -> Outcome {
    let mut cases = 0;
    for p in 3..=8usize {
        for b in 1..=20 / p {
            let g = blowup_cycle(p, &vec![b; p]).unwrap();
            let n = p * b;
            let st = stats(&g);
            let beta = exact_min_fas(&g, 20).unwrap().size();
            if beta != b * b || st.girth != Some(p) || st.gamma != n * (n - 1) / 2 - p * b * b {
                return outcome(false, format!("p={p} b={b}: beta {beta}, girth {:?}, gamma {}", st.girth, st.gamma));
            }
            cases += 1;
        }
    }
    outcome(true, format!("{cases} (p, b) pairs, beta = b^2 in every case"))
}

fn gamma_bounds(report: &CampaignReport) -> Outcome {
    let (ok, pass) = no_failures(report, "r-free-gamma-bounds");
    outcome(
        ok && pass >= 1000,
        format!("{pass} r-free digraphs with n <= 16, r >= 3; 0 violations of either bound required"),
    )
}

fn recursive_construction(graphs: &[(String, Digraph)]) -> Outcome {
    let mut checked = 0;
    let mut levels = 0;
    for (label, g) in graphs {
        let Some(r) = stats(g).r_free_level() else { continue };
        if g.n() > 200 || r < 11 {
            continue;
        }
        let mut amgm_ok = true;
        let cert = recursive_expansion_fas_with(g, r, SweepStrategy::AllVertices, &mut |step| {
            for i in 0..step.sweep.trace.levels.len() {
                levels += 1;
                amgm_ok &= amgm_holds(&step.sweep.trace, i);
            }
        });
        let Ok(cert) = cert else {
            return outcome(false, format!("{label}: {cert:?}"));
        };
        let acyclic = oracle::is_acyclic_closure(&g.without_edges(&cert.removed_edges));
        if !acyclic || int(cert.size()) > quadratic_girth_bound(g.n(), r) || !amgm_ok {
            return outcome(false, format!("{label}: |X| = {}, acyclic {acyclic}", cert.size()));
        }
        checked += 1;
    }
    outcome(checked >= 5, format!("{checked} r-free graphs with r >= 11, n <= 200; {levels} sweep levels"))
}

fn short_cycles(report: &CampaignReport) -> Outcome {
    let (ok, pass) = no_failures(report, "short-cycle-premise");
    let complete_triggered = report
        .graphs
        .iter()
        .filter(|g| g.label.starts_with("complete-digraph"))
        .all(|g| g.short_cycle_premise.as_ref().is_some_and(|p| p.triggered));
    outcome(
        ok && pass > 0 && complete_triggered && pass == report.premise_triggered,
        format!(
            "premise met on {} of {} graphs with n <= 16 (complete digraphs included: {complete_triggered})",
            report.premise_triggered, report.premise_evaluated
        ),
    )
}

fn layer_identity(report: &CampaignReport, graphs: &[(String, Digraph)]) -> Outcome {
    let (ok, _) = no_failures(report, "sweep-amgm");
    let mut levels = 0;
    for (_, g) in graphs.iter().filter(|(_, g)| g.n() <= 16) {
        for s in all_sweeps(g) {
            for i in 0..s.trace.levels.len() {
                levels += 1;
                if !amgm_holds(&s.trace, i) {
                    return outcome(false, format!("sweep from {} level {i}", s.trace.source));
                }
            }
        }
    }
    let campaign_levels: usize = report.graphs.iter().map(|g| g.sweep_levels_checked).sum();
    outcome(ok && levels > 0, format!("{} sweep levels, no violation", levels + campaign_levels))
}

fn duality(report: &CampaignReport, graphs: &[(String, Digraph)]) -> Outcome {
    let (ok, _) = no_failures(report, "mu-beta-duality");
    let mut checked = 0;
    for (label, g) in graphs.iter().filter(|(_, g)| (2..=14).contains(&g.n())) {
        let mu = exact_mu(g, 22).unwrap().mu();
        let beta = exact_min_fas(g, 20).unwrap().size();
        if mu * int(g.n() / 2) > int(beta) {
            return outcome(false, format!("{label}: mu = {mu}, beta = {beta}"));
        }
        checked += 1;
    }
    outcome(ok && checked > 0, format!("{checked} graphs with n <= 14"))
}

fn balanced_degree(report: &CampaignReport) -> Outcome {
    let (ok_random, random) = no_failures(report, "balanced-degree-random");
    let mut tight = 0;
    for (n, eps) in [(8, ratio(1, 4)), (32, ratio(1, 4)), (16, ratio(1, 4)), (12, ratio(1, 6)), (24, ratio(1, 6)), (40, ratio(1, 10))] {
        let g = two_block_regular(n, eps).unwrap();
        let d = (int(1) - eps * 2) * int(n) / 4;
        if int(max_balanced_degree(&g).unwrap().1) != d {
            return outcome(false, format!("two_block_regular({n}, {eps}) max min-degree differs from {d}"));
        }
        tight += 1;
    }
    outcome(
        ok_random && random >= 100,
        format!("{random} dense random oriented graphs; {tight} two-block graphs at equality"),
    )
}

fn periodicity(report: &CampaignReport, graphs: &[(String, Digraph)]) -> Outcome {
    let (ok, _) = no_failures(report, "periodicity-structure");
    let mut comps = 0;
    for (label, g) in graphs.iter().filter(|(_, g)| g.n() <= 14) {
        for c in strong_components(g).components {
            let s = component_structure(g, &c).unwrap();
            let (h, _) = g.induced(&c);
            let gcd = cycle_spectrum(&h, 18).unwrap().gcd();
            if gcd != s.period || !s.classes.as_ref().map_or(true, |cl| partition_is_valid(g, cl)) {
                return outcome(false, format!("{label} component {c:?}"));
            }
            comps += 1;
        }
    }
    outcome(ok && comps > 0, format!("{comps} strong components with n <= 14"))
}

fn lambda(report: &CampaignReport) -> Outcome {
    let (ok, pass) = no_failures(report, "lambda-vs-beta");
    let blowups = [blowup_cycle(3, &[2, 2, 2]).unwrap(), blowup_cycle(4, &[1, 2, 1, 2]).unwrap(), blowup_cycle(5, &[1; 5]).unwrap()];
    let zero = blowups.iter().all(|g| lambda_exact(g, 20).unwrap().lambda() == 0);
    let g = Digraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
    let one = lambda_exact(&g, 20).unwrap().lambda();
    outcome(
        ok && zero && one == 1,
        format!("lambda <= beta on {pass} graphs; blowups 0: {zero}; triangle and square: {one}"),
    )
}

fn coins() -> Outcome {
    let mut pairs = 0;
    for x in 1..=12u64 {
        for y in 1..=12u64 {
            if num_integer::gcd(x, y) != 1 {
                continue;
            }
            for n in 0..=200u64 {
                let brute = (0..=n / x).any(|a| (0..=n / y).any(|b| a * x + b * y == n));
                let rep = coin_represent(x, y, n).unwrap();
                let valid = rep.coefficients.map_or(true, |(a, b)| a * x + b * y == n);
                if rep.coefficients.is_some() != brute || !valid {
                    return outcome(false, format!("x={x} y={y} n={n}"));
                }
            }
            pairs += 1;
        }
    }
    let gaps: BTreeSet<u64> = (1..=200).filter(|&n| coin_represent(3, 5, n).unwrap().coefficients.is_none()).collect();
    outcome(
        gaps == BTreeSet::from([1, 2, 4, 7]),
        format!("{pairs} coprime pairs, n <= 200; (3,5) misses {gaps:?}"),
    )
}

fn coprime_walks(report: &CampaignReport, graphs: &[(String, Digraph)]) -> Outcome {
    let (ok, _) = no_failures(report, "coprime-walk");
    let mut built = 0;
    for (label, g) in graphs {
        for c in strong_components(g).nontrivial() {
            if component_structure(g, c).unwrap().period != 1 {
                continue;
            }
            let anchor = c[0];
            let r = shortest_cycle_at(g, anchor).unwrap().len();
            let w = build_coprime_walk(g, c, r, anchor);
            let valid = w.as_ref().is_ok_and(|w| {
                w.check(g).is_ok() && w.length % r == 1 && w.max_visits() <= 2 * r * r && w.walk.len() == w.length + 1
            });
            if !valid {
                return outcome(false, format!("{label}: {w:?}"));
            }
            built += 1;
        }
    }
    outcome(ok && built >= 50, format!("{built} aperiodic strong components"))
}

fn oracles(report: &CampaignReport) -> Outcome {
    let (a, fas) = no_failures(report, "oracle-fas-permutation");
    let (b, spec) = no_failures(report, "oracle-spectrum-dfs");
    let (c, mu) = no_failures(report, "oracle-exact-mu");
    let (d, scc) = no_failures(report, "oracle-scc");
    outcome(
        a && b && c && d && fas >= 1000 && spec >= 1000 && mu > 0,
        format!("fas {fas}, spectrum {spec}, mu {mu}, scc {scc} agreements"),
    )
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_girthcut");
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let status = Command::new(bin)
            .args(["verify", "--seed", "42", "--out"])
            .arg(&out)
            .status()
            .unwrap();
        (status.code(), std::fs::read(out.join("report.json")).unwrap(), out)
    };
    let (c1, r1, o1) = run("a");
    let (c2, r2, _) = run("b");
    let timing_split = Path::new(&o1).join("timing.json").exists() && !String::from_utf8_lossy(&r1).contains("secs");
    outcome(
        r1 == r2 && c1 == Some(0) && c1 == c2 && timing_split,
        format!("two runs, {} bytes each, identical: {}", r1.len(), r1 == r2),
    )
}

fn main() {
    let graphs = corpus();
    let config = CampaignConfig {
        manifest: acceptance_manifest(),
        trials: TrialCounts::default(),
        seed: SEED,
        ..CampaignConfig::default()
    };
    let (report, _) = run_campaign(&config).expect("campaign runs");

    let criteria: Vec<(&str, Outcome)> = vec![
        ("tight blowup family", tight_family()),
        ("non-adjacency bounds on r-free digraphs", gamma_bounds(&report)),
        ("recursive feedback arc set", recursive_construction(&graphs)),
        ("large expansion forces short cycles", short_cycles(&report)),
        ("layer sizes bound sweep cuts", layer_identity(&report, &graphs)),
        ("expansion against feedback arc set", duality(&report, &graphs)),
        ("balanced degree and its tightness", balanced_degree(&report)),
        ("periods and class partitions", periodicity(&report, &graphs)),
        ("lambda", lambda(&report)),
        ("two-coin representations", coins()),
        ("coprime closed walks", coprime_walks(&report, &graphs)),
        ("oracle agreement", oracles(&report)),
        ("determinism", determinism()),
    ];
    let mut failed = 0;
    for (i, (name, o)) in criteria.iter().enumerate() {
        println!("{} {:>2} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, i + 1, o.summary);
        failed += usize::from(!o.ok);
    }
    if !report.failures.is_empty() {
        println!("campaign failures: {}", report.failures.len());
        for f in report.failures.iter().take(10) {
            println!("  {} on {}: {}", f.check, f.subject, f.detail);
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 || !report.failures.is_empty() {
        std::process::exit(1);
    }
}
