//! Iterative-deepening learner over test size, plus the verifier showing
//! that smaller tests cannot tell a graph from its toggled twin.
//!
//! The learner builds the supergraph `G^k` (edge absent iff some test of
//! size at most `k` answered Disconnected), stops at the first `k` with
//! `kappa(G^k) <= k`, and never issues a test larger than the stopping
//! level. Levels accumulate: level `k` issues only the size-`k` layer, so
//! the distinct-test total is exactly the number of tests of size up to the
//! stopping level.

use crate::graph::{Graph, VertexSet};
use crate::oracle::{Oracle, OracleAnswer, OracleStats};
use crate::subsets;
use crate::{Error, Result};
use std::collections::HashSet;
use std::time::{Duration, Instant};

/// Outcome of a completed learner run.
#[derive(Debug, Clone)]
pub struct LearnerReport {
    pub result_graph: Graph,
    pub stopping_level: usize,
    pub stats: OracleStats,
    pub elapsed: Duration,
}

/// A learner run that died mid-flight (budget exhaustion, cap); carries the
/// partial state reached so far so harnesses can report it.
#[derive(Debug, Clone, thiserror::Error)]
#[error("{error}")]
pub struct LearnFailure {
    pub error: Error,
    pub stats: OracleStats,
    pub completed_level: Option<usize>,
    pub partial_graph: Option<Graph>,
}

/// Issues every size-`k` test not implied smaller, recording disconnected
/// pairs. Pairs are enumerated lexicographically, conditioning sets in
/// colex order.
pub(crate) fn issue_level(
    oracle: &mut Oracle,
    n: usize,
    k: usize,
    bucket: &str,
    separated: &mut HashSet<(u32, u32)>,
) -> Result<()> {
    let verts: Vec<u32> = (0..n as u32).collect();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            let others: Vec<u32> = verts.iter().copied().filter(|&w| w != u && w != v).collect();
            let res = subsets::for_each_combination(&others, k, &mut |s| {
                match oracle.query(s, u, v, bucket) {
                    Ok(OracleAnswer::Disconnected) => {
                        separated.insert((u, v));
                        None
                    }
                    Ok(OracleAnswer::Connected) => None,
                    Err(e) => Some(e),
                }
            });
            if let Some(err) = res {
                return Err(err);
            }
        }
    }
    Ok(())
}

pub(crate) fn graph_from_separated(n: usize, separated: &HashSet<(u32, u32)>) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if !separated.contains(&(u, v)) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("pairs are in range")
}

/// Builds `G^k` by issuing every distinct test of size at most `k`.
pub fn supergraph_at_level(oracle: &mut Oracle, n: usize, k: usize, bucket: &str) -> Result<Graph> {
    let mut separated = HashSet::new();
    for level in 0..=k {
        issue_level(oracle, n, level, bucket, &mut separated)?;
    }
    Ok(graph_from_separated(n, &separated))
}

/// Iterative-deepening learner: the smallest `k` with `kappa(G^k) <= k`
/// determines both the answer and the stopping level.
pub fn learn_naive(oracle: &mut Oracle, n: usize) -> std::result::Result<LearnerReport, LearnFailure> {
    let start = Instant::now();
    if n <= 1 {
        return Ok(LearnerReport {
            result_graph: Graph::new(n, &[]).expect("empty"),
            stopping_level: 0,
            stats: oracle.snapshot_stats(),
            elapsed: start.elapsed(),
        });
    }
    let mut separated = HashSet::new();
    let mut completed: Option<usize> = None;
    let mut k = 0usize;
    loop {
        let bucket = format!("level{k}");
        if let Err(error) = issue_level(oracle, n, k, &bucket, &mut separated) {
            return Err(LearnFailure {
                error,
                stats: oracle.snapshot_stats(),
                completed_level: completed,
                partial_graph: Some(graph_from_separated(n, &separated)),
            });
        }
        let hypothesis = graph_from_separated(n, &separated);
        let kappa = hypothesis
            .kappa_max()
            .expect("n >= 2 checked above");
        if kappa <= k {
            return Ok(LearnerReport {
                result_graph: hypothesis,
                stopping_level: k,
                stats: oracle.snapshot_stats(),
                elapsed: start.elapsed(),
            });
        }
        completed = Some(k);
        k += 1;
    }
}

pub const DEFAULT_VERIFY_CAP: usize = 12;

/// Exhaustively confirms that every test smaller than `kappa(g)` answers
/// identically on `g` and on `g` with one extremal edge toggled. Uses the
/// lexicographically smallest pair attaining `kappa(g)`.
pub fn verify_size_lower_bound(g: &Graph) -> Result<bool> {
    verify_size_lower_bound_with_cap(g, DEFAULT_VERIFY_CAP)
}

pub fn verify_size_lower_bound_with_cap(g: &Graph, cap: usize) -> Result<bool> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidGraph(
            "the size lower bound needs at least two vertices".into(),
        ));
    }
    if n > cap {
        return Err(Error::InstanceTooLarge(format!(
            "exhaustive verification capped at {cap} vertices, instance has {n}"
        )));
    }
    let (u, v, kappa) = g.kappa_attaining_pair()?;
    let twin = g.toggle_edge(u, v)?;
    let verts: Vec<u32> = (0..n as u32).collect();
    for x in 0..n as u32 {
        for y in (x + 1)..n as u32 {
            let others: Vec<u32> = verts.iter().copied().filter(|&w| w != x && w != y).collect();
            for size in 0..kappa {
                let mismatch = subsets::for_each_combination(&others, size, &mut |s| {
                    let set = VertexSet::from_sorted_slice(s);
                    let a = g.is_separated(&set, x, y).expect("well-formed test");
                    let b = twin.is_separated(&set, x, y).expect("well-formed test");
                    (a != b).then_some(())
                });
                if mismatch.is_some() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::oracle::Budget;

    #[test]
    fn supergraph_levels_on_p3() {
        let p3 = generators::path_graph(3).unwrap();
        let mut o = Oracle::exact(p3.clone(), Budget::unlimited());
        let g0 = supergraph_at_level(&mut o, 3, 0, "t").unwrap();
        assert_eq!(g0, generators::clique(3).unwrap());
        let mut o = Oracle::exact(p3.clone(), Budget::unlimited());
        let g1 = supergraph_at_level(&mut o, 3, 1, "t").unwrap();
        assert_eq!(g1, p3);
    }

    #[test]
    fn supergraph_of_edgeless_is_edgeless() {
        let g = generators::edgeless(3).unwrap();
        let mut o = Oracle::exact(g.clone(), Budget::unlimited());
        assert_eq!(supergraph_at_level(&mut o, 3, 0, "t").unwrap(), g);
    }

    #[test]
    fn learn_p3_stops_at_level_one() {
        let p3 = generators::path_graph(3).unwrap();
        let mut o = Oracle::exact(p3.clone(), Budget::unlimited());
        let report = learn_naive(&mut o, 3).unwrap();
        assert_eq!(report.result_graph, p3);
        assert_eq!(report.stopping_level, 1);
        assert_eq!(report.stats.max_size_seen, 1);
    }

    #[test]
    fn learn_wheel6_stops_at_kappa() {
        let g = generators::wheel6();
        let mut o = Oracle::exact(g.clone(), Budget::unlimited());
        let report = learn_naive(&mut o, 6).unwrap();
        assert_eq!(report.result_graph, g);
        assert_eq!(report.stopping_level, 3);
        assert_eq!(report.stats.max_size_seen, 3);
    }

    #[test]
    fn learn_edgeless_needs_only_empty_tests() {
        let g = generators::edgeless(3).unwrap();
        let mut o = Oracle::exact(g.clone(), Budget::unlimited());
        let report = learn_naive(&mut o, 3).unwrap();
        assert_eq!(report.result_graph, g);
        assert_eq!(report.stopping_level, 0);
        assert_eq!(report.stats.total_tests, 3);
    }

    #[test]
    fn budget_failure_carries_partial_state() {
        let mut o = Oracle::adversary(4).with_budget(Budget::count_limit(5));
        let failure = learn_naive(&mut o, 4).unwrap_err();
        assert!(failure.error.is_budget_exceeded());
        assert_eq!(failure.stats.total_tests, 5);
        assert!(failure.partial_graph.is_some());
    }

    #[test]
    fn adversary_without_budget_concludes_complete_graph() {
        // The adversary admits no disconnections, so the learner terminates
        // believing the graph is complete, at level n-2.
        let mut o = Oracle::adversary(4);
        let report = learn_naive(&mut o, 4).unwrap();
        assert_eq!(report.result_graph, generators::clique(4).unwrap());
        assert_eq!(report.stopping_level, 2);
    }

    #[test]
    fn verifier_accepts_p3_wheel6_k2() {
        assert!(verify_size_lower_bound(&generators::path_graph(3).unwrap()).unwrap());
        assert!(verify_size_lower_bound(&generators::wheel6()).unwrap());
        // kappa(K2) = 0: vacuously true.
        assert!(verify_size_lower_bound(&generators::clique(2).unwrap()).unwrap());
    }

    #[test]
    fn verifier_rejects_oversized_instances() {
        let g = generators::edgeless(20).unwrap();
        assert!(matches!(
            verify_size_lower_bound(&g),
            Err(Error::InstanceTooLarge(_))
        ));
    }
}
