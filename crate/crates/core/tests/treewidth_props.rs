//! Treewidth correctness against an independent exhaustive oracle: width
//! over all elimination orders, found by branch-and-bound over
//! permutations. Completely separate from the production search.

use proptest::prelude::*;
use seplearn::treewidth::{exact_treewidth, validate_decomposition};
use seplearn::{generators, Graph};
use std::collections::BTreeSet;

/// Width of the best elimination order, by exhaustive permutation search
/// with simple pruning on the running maximum.
fn treewidth_brute(g: &Graph) -> usize {
    fn rec(nb: &mut Vec<BTreeSet<u32>>, alive: &mut BTreeSet<u32>, so_far: usize, best: &mut usize) {
        if alive.is_empty() {
            *best = (*best).min(so_far);
            return;
        }
        if so_far >= *best {
            return; // cannot improve
        }
        let candidates: Vec<u32> = alive.iter().copied().collect();
        for v in candidates {
            let deg = nb[v as usize].len();
            let width = so_far.max(deg);
            if width >= *best {
                continue;
            }
            // eliminate v: clique the neighborhood, remove v
            let ns: Vec<u32> = nb[v as usize].iter().copied().collect();
            let mut added = Vec::new();
            for (i, &a) in ns.iter().enumerate() {
                for &b in &ns[i + 1..] {
                    if nb[a as usize].insert(b) {
                        nb[b as usize].insert(a);
                        added.push((a, b));
                    }
                }
            }
            for &w in &ns {
                nb[w as usize].remove(&v);
            }
            alive.remove(&v);
            rec(nb, alive, width, best);
            alive.insert(v);
            for &w in &ns {
                nb[w as usize].insert(v);
            }
            for (a, b) in added {
                nb[a as usize].remove(&b);
                nb[b as usize].remove(&a);
            }
        }
    }
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let mut nb: Vec<BTreeSet<u32>> = (0..n as u32)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive: BTreeSet<u32> = (0..n as u32).collect();
    let mut best = n;
    rec(&mut nb, &mut alive, 0, &mut best);
    best
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
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
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_treewidth_matches_permutation_search(g in arb_graph(7)) {
        let (w, td) = exact_treewidth(&g).unwrap();
        prop_assert_eq!(w, treewidth_brute(&g));
        prop_assert!(validate_decomposition(&g, &td).is_empty());
        prop_assert_eq!(td.width(), w);
    }
}

#[test]
fn named_instances_against_the_brute_oracle() {
    for g in [
        generators::wheel6(),
        generators::book(5).unwrap(),
        generators::cycle_graph(6).unwrap(),
        generators::clique(5).unwrap(),
        generators::star(7).unwrap(),
        generators::random_graph(8, 0.4, 3).unwrap(),
        generators::random_graph(9, 0.25, 4).unwrap(),
    ] {
        let (w, td) = exact_treewidth(&g).unwrap();
        assert_eq!(w, treewidth_brute(&g), "width mismatch on {g:?}");
        assert!(validate_decomposition(&g, &td).is_empty());
    }
}
