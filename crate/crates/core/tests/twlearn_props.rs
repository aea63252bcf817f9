//! End-to-end properties of the decomposition-guided learner on random
//! instances: exact recovery, the bucketed size/count bounds, and a clean
//! ground-truth audit for every run.

use proptest::prelude::*;
use seplearn::audit::audit_tw_report;
use seplearn::treewidth::{exact_treewidth, validate_decomposition};
use seplearn::twlearn::{self, learn_tw};
use seplearn::{Budget, Graph, Oracle};

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

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tw_learner_recovers_and_respects_bounds(g in arb_graph(8)) {
        let n = g.n();
        let (tw, _) = exact_treewidth(&g).unwrap();
        let kappa = g.kappa_max().unwrap();
        let mut o = Oracle::exact(g.clone(), Budget::unlimited());
        let report = learn_tw(&mut o, n).unwrap();

        prop_assert_eq!(&report.result_graph, &g);
        prop_assert_eq!(report.width, tw);
        prop_assert!(validate_decomposition(&g, &report.decomposition).is_empty());
        prop_assert!(report.candidate_pairs <= n * tw);

        let final_bucket = report.stats.bucket(twlearn::BUCKET_FINAL);
        prop_assert!(final_bucket.count <= report.candidate_pairs as u64);
        prop_assert!(final_bucket.count <= (n * tw) as u64);
        prop_assert!(final_bucket.max_size <= 2 * kappa);
        let other_max = report.stats.max_size_outside(twlearn::BUCKET_FINAL);
        prop_assert!(other_max <= 4 * tw + 4);

        let violations = audit_tw_report(&g, &report).unwrap();
        prop_assert!(violations.is_empty(), "audit violations: {:?}", violations);
    }
}

#[test]
fn decomposition_learner_bounds_on_random_instances() {
    for seed in 0..12u64 {
        let g = seplearn::generators::random_graph(8, 0.3, seed).unwrap();
        let (tw, _) = exact_treewidth(&g).unwrap();
        let mut o = Oracle::exact(g.clone(), Budget::unlimited());
        let (td, report) = seplearn::learn_decomposition(&mut o, g.n()).unwrap();
        assert!(validate_decomposition(&g, &td).is_empty());
        assert_eq!(td.width(), tw);
        assert_eq!(report.stopping_level, tw);
        assert_eq!(report.stats.max_size_seen, tw);
        assert!((report.stats.total_tests as u128) <= (g.n() as u128).pow(tw as u32 + 2));
    }
}
