use girthcut_core::expansion::{all_sweeps, amgm_holds, best_sweep_cut, check_layer_growth, exact_mu, SweepStrategy};
use girthcut_core::fas::{exact_min_fas, ordering_fas, recursive_expansion_fas};
use girthcut_core::oracle;
use girthcut_core::periodicity::{
    build_coprime_walk, component_structure, cycle_spectrum, cycle_spectrum_dfs, lambda_exact, partition_is_valid,
    pseudoperiodicity,
};
use girthcut_core::scc::strong_components;
use girthcut_core::traversal::{girth, is_simple_cycle, stats};
use girthcut_core::{Digraph, Rational};
use proptest::prelude::*;

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(0u8..100, n * n), 5u8..60))
        .prop_map(|(n, coins, p)| {
            let edges = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| u != v && coins[u * n + v] < p);
            Digraph::from_edges(n, edges).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn components_match_closure(g in digraph(10)) {
        let mut ours = strong_components(&g).components;
        ours.sort();
        prop_assert_eq!(ours, oracle::reachability_components(&g));
    }

    #[test]
    fn exact_fas_matches_permutations(g in digraph(7)) {
        let cert = exact_min_fas(&g, 20).unwrap();
        prop_assert_eq!(cert.size(), oracle::permutation_min_fas(&g));
        prop_assert!(cert.verified_acyclic);
        prop_assert!(ordering_fas(&g, None).unwrap().size() >= cert.size());
    }

    #[test]
    fn spectra_agree(g in digraph(8)) {
        let dp = cycle_spectrum(&g, 18).unwrap();
        let dfs = cycle_spectrum_dfs(&g);
        let naive: Vec<usize> = oracle::naive_spectrum(&g).into_iter().collect();
        prop_assert_eq!(dp.lengths(), naive.clone());
        prop_assert_eq!(dfs.lengths(), naive);
        prop_assert_eq!(dp.girth(), girth(&g));
        prop_assert_eq!(girth(&g), oracle::brute_girth(&g));
        for e in &dp.entries {
            prop_assert!(is_simple_cycle(&g, &e.witness));
        }
    }

    #[test]
    fn periods_match_spectrum(g in digraph(9)) {
        let report = pseudoperiodicity(&g);
        for c in &report.components {
            let (h, _) = g.induced(&c.vertices);
            prop_assert_eq!(c.period, oracle::naive_period(&h));
            if let Some(classes) = &c.classes {
                prop_assert!(partition_is_valid(&g, classes));
                prop_assert_eq!(classes.len(), c.period);
            }
        }
    }

    #[test]
    fn exact_mu_matches_subsets(g in digraph(10)) {
        let cut = exact_mu(&g, 22).unwrap();
        prop_assert_eq!(Some(cut.mu()), oracle::brute_mu(&g));
        let sweep = best_sweep_cut(&g, SweepStrategy::AllVertices).unwrap();
        prop_assert!(sweep.cut.mu() >= cut.mu());
    }

    #[test]
    fn sweep_layers_bound_cuts(g in digraph(14)) {
        let mu_min = exact_mu(&g, 22).unwrap().mu();
        for s in all_sweeps(&g) {
            for i in 0..s.trace.levels.len() {
                prop_assert!(amgm_holds(&s.trace, i));
            }
            if mu_min > Rational::from_integer(0) {
                let rep = check_layer_growth(&s.trace, mu_min).unwrap();
                prop_assert!(rep.passed(), "{:?}", rep);
            }
        }
    }

    #[test]
    fn lambda_at_most_beta(g in digraph(6)) {
        prop_assume!(g.m() <= 14);
        let lam = lambda_exact(&g, 20).unwrap();
        prop_assert!(lam.lambda() <= exact_min_fas(&g, 20).unwrap().size());
        prop_assert!(pseudoperiodicity(&g.without_edges(&lam.removed)).pseudoperiodic);
    }

    #[test]
    fn coprime_walks_on_aperiodic_components(g in digraph(9), r in 2usize..40) {
        for comp in strong_components(&g).nontrivial() {
            if component_structure(&g, comp).unwrap().period != 1 {
                continue;
            }
            let w = build_coprime_walk(&g, comp, r, comp[comp.len() / 2]).unwrap();
            prop_assert_eq!(w.length % r, 1);
            prop_assert!(w.max_visits() <= 2 * r * r);
            prop_assert!(w.check(&g).is_ok());
        }
    }

    #[test]
    fn recursive_certificate_within_bound(g in digraph(12)) {
        let st = stats(&g);
        if let Some(r) = st.r_free_level() {
            if r >= 2 {
                let cert = recursive_expansion_fas(&g, r).unwrap();
                prop_assert!(cert.verified_acyclic);
                prop_assert_eq!(oracle::brute_gamma(&g), st.gamma);
            }
        }
    }
}
