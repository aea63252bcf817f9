//! Learner-level invariants: the supergraph chain, exact stopping levels,
//! distinct-test counts, oracle soundness, and isomorphism invariance.

use proptest::prelude::*;
use seplearn::{
    generators, learn_naive, supergraph_at_level, Budget, Graph, Oracle, OracleAnswer, VertexSet,
};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|u| ((u + 1)..n as u32).map(move |v| (u, v)))
            .collect();
        proptest::collection::vec(proptest::bool::ANY, pairs.len()).prop_map(move |mask| {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .zip(&mask)
                .filter(|(_, &keep)| keep)
                .map(|(&e, _)| e)
                .collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn tests_up_to(n: usize, k: usize) -> u128 {
    fn binomial(m: usize, k: usize) -> u128 {
        if k > m {
            return 0;
        }
        let k = k.min(m - k);
        let mut out: u128 = 1;
        for i in 0..k {
            out = out * (m - i) as u128 / (i as u128 + 1);
        }
        out
    }
    let pairs = binomial(n, 2);
    let mut sets = 0u128;
    for j in 0..=k.min(n.saturating_sub(2)) {
        sets += binomial(n - 2, j);
    }
    pairs * sets
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_answers_match_ground_truth(g in arb_graph(7), raw in proptest::collection::vec(0u32..7, 0..3)) {
        let mut o = Oracle::exact(g.clone(), Budget::unlimited());
        let s: VertexSet = raw.into_iter().filter(|&v| (v as usize) < g.n()).collect();
        for u in 0..g.n() as u32 {
            for v in (u + 1)..g.n() as u32 {
                if s.contains(u) || s.contains(v) {
                    continue;
                }
                let expected = g.is_separated(&s, u, v).unwrap();
                let got = o.query(&s, u, v, "t").unwrap() == OracleAnswer::Disconnected;
                prop_assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn supergraph_chain_shrinks_towards_the_graph(g in arb_graph(6)) {
        let kappa = g.kappa_max().unwrap();
        let mut previous: Option<Graph> = None;
        for k in 0..=kappa {
            let mut o = Oracle::exact(g.clone(), Budget::unlimited());
            let level = supergraph_at_level(&mut o, g.n(), k, "t").unwrap();
            // G is always a subgraph of G^k.
            for &(a, b) in g.edges() {
                prop_assert!(level.has_edge(a, b));
            }
            // G^k is a subgraph of G^{k-1}.
            if let Some(prev) = &previous {
                for &(a, b) in level.edges() {
                    prop_assert!(prev.has_edge(a, b));
                }
            }
            previous = Some(level);
        }
        // At k = kappa the supergraph collapses onto the graph itself.
        prop_assert_eq!(previous.unwrap(), g);
    }

    #[test]
    fn naive_learner_is_exact_with_tight_counts(g in arb_graph(7)) {
        let kappa = g.kappa_max().unwrap();
        let mut o = Oracle::exact(g.clone(), Budget::unlimited());
        let report = learn_naive(&mut o, g.n()).unwrap();
        prop_assert_eq!(&report.result_graph, &g);
        prop_assert_eq!(report.stopping_level, kappa);
        prop_assert_eq!(report.stats.max_size_seen, kappa);
        // Levels accumulate, so the distinct total is exactly the number of
        // tests of size at most the stopping level, and within the bound.
        let expected = tests_up_to(g.n(), kappa);
        prop_assert_eq!(report.stats.total_tests as u128, expected);
        prop_assert_eq!(report.stats.raw_calls, report.stats.total_tests);
        prop_assert!(expected <= (g.n() as u128).pow(kappa as u32 + 2));
    }

    #[test]
    fn learning_commutes_with_relabeling(g in arb_graph(6), seed in 0u64..1000) {
        let (permuted, pi) = generators::permute_graph(&g, seed);
        let mut o1 = Oracle::exact(g.clone(), Budget::unlimited());
        let r1 = learn_naive(&mut o1, g.n()).unwrap();
        let mut o2 = Oracle::exact(permuted.clone(), Budget::unlimited());
        let r2 = learn_naive(&mut o2, permuted.n()).unwrap();
        let relabeled: Vec<(u32, u32)> = r1
            .result_graph
            .edges()
            .iter()
            .map(|&(a, b)| (pi[a as usize], pi[b as usize]))
            .collect();
        prop_assert_eq!(Graph::new(g.n(), &relabeled).unwrap(), r2.result_graph);
        prop_assert_eq!(r1.stats.per_size_counts, r2.stats.per_size_counts);
    }
}

#[test]
fn verifier_holds_on_named_instances() {
    for g in [
        generators::path_graph(3).unwrap(),
        generators::path_graph(5).unwrap(),
        generators::cycle_graph(5).unwrap(),
        generators::clique(4).unwrap(),
        generators::wheel6(),
        generators::book(4).unwrap(),
        generators::star(5).unwrap(),
    ] {
        assert!(seplearn::verify_size_lower_bound(&g).unwrap(), "failed on {g:?}");
    }
}

#[test]
fn size_budget_caps_the_naive_learner() {
    let g = generators::wheel6();
    let mut o = Oracle::exact(g, Budget::size_limit(2));
    let failure = learn_naive(&mut o, 6).unwrap_err();
    assert!(failure.error.is_budget_exceeded());
    assert_eq!(failure.completed_level, Some(2));
    assert_eq!(failure.stats.max_size_seen, 2);
}
