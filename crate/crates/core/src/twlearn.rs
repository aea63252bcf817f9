//! Decomposition-guided learner.
//!
//! Phase one learns an optimum-width tree decomposition using tests no
//! larger than the treewidth. Each edge of the learned supergraph is then a
//! candidate pair, decided by assembling a guard set from the rooted
//! decomposition, discovering the components it cuts off, finding a small
//! separator through each component, and issuing a single combined test
//! whose size stays within twice the graph's maximum pairwise connectivity.
//! All region reasoning happens through oracle reachability queries; the
//! learner never sees the hidden graph.

use crate::graph::{Graph, VertexSet};
use crate::naive::{graph_from_separated, issue_level, LearnFailure, LearnerReport};
use crate::oracle::{Oracle, OracleAnswer, OracleStats};
use crate::subsets;
use crate::treewidth::{self, root_decomposition, RootedDecomposition, TreeDecomposition};
use crate::{Error, Result};
use std::collections::HashSet;
use std::time::{Duration, Instant};

pub const BUCKET_PHASE1: &str = "phase1";
pub const BUCKET_GUARD: &str = "guard";
pub const BUCKET_COMPONENTS: &str = "components";
pub const BUCKET_CUTS: &str = "cuts";
pub const BUCKET_FINAL: &str = "final";

/// How a node's region was carved out during guard selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuardCase {
    /// No descendant in R: the region is everything strictly below.
    Fresh,
    /// One branch already holds R-nodes; the region stops at their LCA.
    Branch { lca: usize },
}

/// One threshold check performed while selecting the guard set.
#[derive(Debug, Clone)]
pub struct RegionCheck {
    pub node: usize,
    pub case: GuardCase,
    pub region: VertexSet,
    pub base: VertexSet,
    /// True iff no cut within budget exists, i.e. the region's connectivity
    /// met the threshold and the node joined R.
    pub added: bool,
    pub cut: Option<VertexSet>,
}

/// The guard set for one candidate pair: the LCA-closed node set R and the
/// conditioning core S = bag(R) ∪ {u,v}, with the per-region evidence.
#[derive(Debug, Clone)]
pub struct GuardSet {
    pub r_nodes: Vec<usize>,
    pub s_vertices: VertexSet,
    pub region_log: Vec<RegionCheck>,
}

/// Everything recorded while deciding one candidate pair; consumed by the
/// ground-truth audit.
#[derive(Debug, Clone)]
pub struct PairTrail {
    pub u: u32,
    pub v: u32,
    pub guard: GuardSet,
    /// Discovered components of G \ S with their boundary bounds
    /// (neighborhood ∪ {u,v}).
    pub components: Vec<(VertexSet, VertexSet)>,
    pub cuts: Vec<VertexSet>,
    pub final_test_size: usize,
    pub edge: bool,
}

/// Result of a full decomposition-guided run.
#[derive(Debug, Clone)]
pub struct TwLearnerReport {
    pub result_graph: Graph,
    pub decomposition: TreeDecomposition,
    pub width: usize,
    pub candidate_pairs: usize,
    pub stats: OracleStats,
    pub trail: Vec<PairTrail>,
    pub elapsed: Duration,
}

/// Learns a minimum-width tree decomposition of the hidden graph by
/// iterative deepening: at level `k` it completes the supergraph `G^k` and
/// asks whether `G^k` has width `k`. All tests have size at most the
/// treewidth.
pub fn learn_decomposition(
    oracle: &mut Oracle,
    n: usize,
) -> std::result::Result<(TreeDecomposition, LearnerReport), LearnFailure> {
    let start = Instant::now();
    let mut separated = HashSet::new();
    let mut completed = None;
    let mut k = 0usize;
    loop {
        if let Err(error) = issue_level(oracle, n, k, BUCKET_PHASE1, &mut separated) {
            return Err(LearnFailure {
                error,
                stats: oracle.snapshot_stats(),
                completed_level: completed,
                partial_graph: Some(graph_from_separated(n, &separated)),
            });
        }
        let hypothesis = graph_from_separated(n, &separated);
        match treewidth::width_at_most(&hypothesis, k) {
            Ok(Some(td)) => {
                return Ok((
                    td,
                    LearnerReport {
                        result_graph: hypothesis,
                        stopping_level: k,
                        stats: oracle.snapshot_stats(),
                        elapsed: start.elapsed(),
                    },
                ))
            }
            Ok(None) => {
                completed = Some(k);
                k += 1;
            }
            Err(error) => {
                return Err(LearnFailure {
                    error,
                    stats: oracle.snapshot_stats(),
                    completed_level: completed,
                    partial_graph: Some(hypothesis),
                })
            }
        }
    }
}

fn merge_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Does deleting `x` separate `u` from `v` inside the region graph minus
/// the direct edge? Decided purely by reachability queries: a region vertex
/// reachable from both endpoints certifies a surviving path.
fn region_separates(
    oracle: &mut Oracle,
    region: &VertexSet,
    base_minus_u: &[u32],
    base_minus_v: &[u32],
    u: u32,
    v: u32,
    x: &[u32],
    bucket: &str,
) -> Result<bool> {
    let cond_u = merge_sorted(base_minus_u, x);
    let cond_v = merge_sorted(base_minus_v, x);
    for w in region.iter() {
        if x.binary_search(&w).is_ok() {
            continue;
        }
        if oracle.query(&cond_u, w, u, bucket)? == OracleAnswer::Connected
            && oracle.query(&cond_v, w, v, bucket)? == OracleAnswer::Connected
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches for the first set `X ⊆ region` (sizes ascending, colex within a
/// size) of size at most `f` separating `u` from `v` in the region graph
/// minus the direct edge. The caller guarantees the region's neighborhood
/// lies inside `base`; `u` and `v` must belong to `base`.
pub fn bounded_cut_search(
    oracle: &mut Oracle,
    region: &VertexSet,
    base: &VertexSet,
    u: u32,
    v: u32,
    f: usize,
    bucket: &str,
) -> Result<Option<VertexSet>> {
    if !base.contains(u) || !base.contains(v) {
        return Err(Error::InvalidRegion(format!(
            "endpoints ({u},{v}) must belong to the conditioning base {base}"
        )));
    }
    if region.intersects(base) {
        return Err(Error::InvalidRegion(format!(
            "region {region} overlaps conditioning base {base}"
        )));
    }
    let base_minus_u: Vec<u32> = base.iter().filter(|&w| w != u).collect();
    let base_minus_v: Vec<u32> = base.iter().filter(|&w| w != v).collect();
    for size in 0..=f.min(region.len()) {
        let hit = subsets::for_each_combination(region.as_slice(), size, &mut |x| {
            match region_separates(oracle, region, &base_minus_u, &base_minus_v, u, v, x, bucket) {
                Ok(true) => Some(Ok(VertexSet::from_sorted_slice(x))),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        });
        match hit {
            Some(Ok(x)) => return Ok(Some(x)),
            Some(Err(e)) => return Err(e),
            None => {}
        }
    }
    Ok(None)
}

/// Builds the guard set for `(u,v)` by one postorder sweep. A node joins R
/// when it is the LCA of two R-nodes, or when the region it closes off
/// still carries connectivity at least `2·tw + 2` between `u` and `v`.
pub fn select_guard_set(
    oracle: &mut Oracle,
    rd: &RootedDecomposition,
    u: u32,
    v: u32,
    tw: usize,
    bucket: &str,
) -> Result<GuardSet> {
    let f = 2 * tw + 1;
    let pair = VertexSet::new(vec![u, v]);
    let total = rd.node_count();
    let mut in_r = vec![false; total];
    let mut subtree_has_r = vec![false; total];
    let mut r_nodes: Vec<usize> = Vec::new();
    let mut region_log = Vec::new();
    for &t in rd.postorder() {
        let busy: Vec<usize> = rd
            .children(t)
            .iter()
            .copied()
            .filter(|&c| subtree_has_r[c])
            .collect();
        let added = if busy.len() >= 2 {
            true // LCA of two R-nodes
        } else if busy.is_empty() {
            let region = rd.cmp(t).minus(&pair);
            let base = rd.bag(t).union(&pair);
            let cut = bounded_cut_search(oracle, &region, &base, u, v, f, bucket)?;
            let added = cut.is_none();
            region_log.push(RegionCheck {
                node: t,
                case: GuardCase::Fresh,
                region,
                base,
                added,
                cut,
            });
            added
        } else {
            let below: Vec<usize> = r_nodes
                .iter()
                .copied()
                .filter(|&r| rd.is_strict_descendant(r, t))
                .collect();
            let l = below
                .iter()
                .copied()
                .reduce(|a, b| rd.lca(a, b))
                .expect("busy branch holds an R-node");
            debug_assert!(in_r[l], "LCA closure would be broken at node {l}");
            let region = rd
                .cmp(t)
                .minus(rd.cmp(l))
                .minus(rd.bag(l))
                .minus(&pair);
            let base = rd.bag(t).union(rd.bag(l)).union(&pair);
            let cut = bounded_cut_search(oracle, &region, &base, u, v, f, bucket)?;
            let added = cut.is_none();
            region_log.push(RegionCheck {
                node: t,
                case: GuardCase::Branch { lca: l },
                region,
                base,
                added,
                cut,
            });
            added
        };
        if added {
            in_r[t] = true;
            r_nodes.push(t);
        }
        subtree_has_r[t] = in_r[t] || !busy.is_empty();
    }
    r_nodes.sort_unstable();
    let mut s_vertices = pair;
    for &t in &r_nodes {
        s_vertices = s_vertices.union(rd.bag(t));
    }
    Ok(GuardSet {
        r_nodes,
        s_vertices,
        region_log,
    })
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let root = self.find(self.0[x]);
            self.0[x] = root;
        }
        self.0[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Discovers the connected components of `G \ S` and their neighborhoods.
///
/// Candidate boundary sets are `bag(t) ∪ bag(l) ∪ {u,v}` over nodes of
/// `R ∪ {root}` with `l` a descendant of `t` (plus singletons). Every
/// candidate is a subset of `S`, so a part disjoint from `S` is exactly a
/// component of `G \ S`; LCA-closedness of R guarantees every component
/// shows up for some candidate. Neighborhoods are read off with one
/// reachability query per boundary vertex.
pub fn discover_components(
    oracle: &mut Oracle,
    rd: &RootedDecomposition,
    guard: &GuardSet,
    u: u32,
    v: u32,
    bucket: &str,
) -> Result<Vec<(VertexSet, VertexSet)>> {
    let n = oracle.universe();
    let pair = VertexSet::new(vec![u, v]);
    let mut nodes = guard.r_nodes.clone();
    if !nodes.contains(&rd.root()) {
        nodes.push(rd.root());
    }
    nodes.sort_unstable();

    let mut candidates: Vec<VertexSet> = Vec::new();
    let mut seen_candidates: HashSet<Vec<u32>> = HashSet::new();
    let mut push_candidate = |b: VertexSet, cs: &mut Vec<VertexSet>| {
        if seen_candidates.insert(b.as_slice().to_vec()) {
            cs.push(b);
        }
    };
    for &t in &nodes {
        push_candidate(rd.bag(t).union(&pair), &mut candidates);
    }
    for &t in &nodes {
        for &l in &nodes {
            if l != t && rd.is_strict_descendant(l, t) {
                push_candidate(rd.bag(t).union(rd.bag(l)).union(&pair), &mut candidates);
            }
        }
    }

    let s = &guard.s_vertices;
    let mut components: Vec<(VertexSet, VertexSet)> = Vec::new();
    for b in &candidates {
        let rest: Vec<u32> = (0..n as u32).filter(|&w| !b.contains(w)).collect();
        let mut dsu = Dsu::new(rest.len());
        for i in 0..rest.len() {
            for j in (i + 1)..rest.len() {
                if dsu.find(i) == dsu.find(j) {
                    continue;
                }
                if oracle.query(b, rest[i], rest[j], bucket)? == OracleAnswer::Connected {
                    dsu.union(i, j);
                }
            }
        }
        let mut classes: Vec<Vec<u32>> = vec![Vec::new(); rest.len()];
        for (i, &w) in rest.iter().enumerate() {
            let root = dsu.find(i);
            classes[root].push(w);
        }
        for class in classes.into_iter().filter(|c| !c.is_empty()) {
            let class = VertexSet::new(class);
            if class.intersects(s) || components.iter().any(|(c, _)| *c == class) {
                continue;
            }
            let anchor = class.min_elem().expect("class is nonempty");
            let mut boundary = Vec::new();
            for bv in b.iter() {
                let reduced = b.without(bv);
                if oracle.query(&reduced, anchor, bv, bucket)? == OracleAnswer::Connected {
                    boundary.push(bv);
                }
            }
            let bound = VertexSet::new(boundary).union(&pair);
            components.push((class, bound));
        }
    }
    components.sort_by_key(|(c, _)| c.min_elem());

    let mut covered = vec![false; n];
    for (c, _) in &components {
        for w in c.iter() {
            if covered[w as usize] {
                return Err(Error::IncompleteComponents(format!(
                    "vertex {w} appears in two discovered components"
                )));
            }
            covered[w as usize] = true;
        }
    }
    for w in 0..n as u32 {
        if !s.contains(w) && !covered[w as usize] {
            return Err(Error::IncompleteComponents(format!(
                "vertex {w} missed by component discovery"
            )));
        }
    }
    Ok(components)
}

/// Decides whether `{u,v}` is an edge of the hidden graph using one final
/// test of size at most `2·kappa(G)` on top of the small region tests.
pub fn decide_edge(
    oracle: &mut Oracle,
    rd: &RootedDecomposition,
    u: u32,
    v: u32,
    tw: usize,
) -> Result<(bool, PairTrail)> {
    let co_occurs =
        (0..rd.node_count()).any(|t| rd.bag(t).contains(u) && rd.bag(t).contains(v));
    if !co_occurs {
        return Err(Error::InvalidRegion(format!(
            "candidate pair ({u},{v}) does not co-occur in any bag"
        )));
    }
    let guard = select_guard_set(oracle, rd, u, v, tw, BUCKET_GUARD)?;
    let components = discover_components(oracle, rd, &guard, u, v, BUCKET_COMPONENTS)?;
    let mut cuts = Vec::with_capacity(components.len());
    for (c, bound) in &components {
        match bounded_cut_search(oracle, c, bound, u, v, 3 * tw + 2, BUCKET_CUTS)? {
            Some(x) => cuts.push(x),
            None => {
                return Err(Error::RegionBoundViolated(format!(
                    "component {c} admits no cut of size at most {} for pair ({u},{v})",
                    3 * tw + 2
                )))
            }
        }
    }
    let mut final_set = guard.s_vertices.without(u).without(v);
    for x in &cuts {
        final_set = final_set.union(x);
    }
    let answer = oracle.query(&final_set, u, v, BUCKET_FINAL)?;
    let edge = answer == OracleAnswer::Connected;
    let trail = PairTrail {
        u,
        v,
        guard,
        components,
        cuts,
        final_test_size: final_set.len(),
        edge,
    };
    Ok((edge, trail))
}

/// Full decomposition-guided learner.
pub fn learn_tw(oracle: &mut Oracle, n: usize) -> std::result::Result<TwLearnerReport, LearnFailure> {
    let start = Instant::now();
    let (td, phase1) = learn_decomposition(oracle, n)?;
    let supergraph = phase1.result_graph;
    let width = td.width();
    let candidates: Vec<(u32, u32)> = supergraph.edges().to_vec();
    let mut edges = Vec::new();
    let mut trail = Vec::new();
    if !candidates.is_empty() {
        let rd = root_decomposition(&td).map_err(|error| LearnFailure {
            error,
            stats: oracle.snapshot_stats(),
            completed_level: Some(width),
            partial_graph: Some(supergraph.clone()),
        })?;
        for &(u, v) in &candidates {
            match decide_edge(oracle, &rd, u, v, width) {
                Ok((true, t)) => {
                    edges.push((u, v));
                    trail.push(t);
                }
                Ok((false, t)) => trail.push(t),
                Err(error) => {
                    return Err(LearnFailure {
                        error,
                        stats: oracle.snapshot_stats(),
                        completed_level: Some(width),
                        partial_graph: Some(supergraph.clone()),
                    })
                }
            }
        }
    }
    let result_graph = Graph::new(n, &edges).expect("candidate pairs are in range");
    Ok(TwLearnerReport {
        result_graph,
        decomposition: td,
        width,
        candidate_pairs: candidates.len(),
        stats: oracle.snapshot_stats(),
        trail,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::oracle::Budget;
    use crate::treewidth::validate_decomposition;

    fn exact(g: &Graph) -> Oracle {
        Oracle::exact(g.clone(), Budget::unlimited())
    }

    #[test]
    fn cut_search_on_wheel_rim() {
        // Region {2,3} between endpoints 1 and 4 is the rim path 1-2-3-4;
        // either interior vertex cuts it, and {2} comes first in order.
        let g = generators::wheel6();
        let mut o = exact(&g);
        let region = VertexSet::new(vec![2, 3]);
        let base = VertexSet::new(vec![0, 1, 4, 5]);
        let cut = bounded_cut_search(&mut o, &region, &base, 1, 4, 1, "t").unwrap();
        assert_eq!(cut, Some(VertexSet::new(vec![2])));
        let none = bounded_cut_search(&mut o, &region, &base, 1, 4, 0, "t").unwrap();
        assert_eq!(none, None);
    }

    #[test]
    fn cut_search_on_empty_region() {
        let g = generators::path_graph(4).unwrap();
        let mut o = exact(&g);
        let region = VertexSet::empty();
        let base = VertexSet::new(vec![1, 2]);
        let before = o.stats().raw_calls;
        let cut = bounded_cut_search(&mut o, &region, &base, 1, 2, 3, "t").unwrap();
        assert_eq!(cut, Some(VertexSet::empty()));
        assert_eq!(o.stats().raw_calls, before);
    }

    #[test]
    fn cut_search_rejects_overlapping_region() {
        let g = generators::path_graph(4).unwrap();
        let mut o = exact(&g);
        let region = VertexSet::new(vec![1, 3]);
        let base = VertexSet::new(vec![1, 2]);
        assert!(matches!(
            bounded_cut_search(&mut o, &region, &base, 1, 2, 1, "t"),
            Err(Error::InvalidRegion(_))
        ));
    }

    #[test]
    fn guard_set_is_trivial_on_p4() {
        let g = generators::path_graph(4).unwrap();
        let mut o = exact(&g);
        let (td, _) = learn_decomposition(&mut o, 4).unwrap();
        let rd = root_decomposition(&td).unwrap();
        let guard = select_guard_set(&mut o, &rd, 1, 2, td.width(), "t").unwrap();
        assert!(guard.r_nodes.is_empty());
        assert_eq!(guard.s_vertices, VertexSet::new(vec![1, 2]));
    }

    #[test]
    fn guard_set_on_book_hub_pair() {
        // Six pages between the hubs force one guard node; the conditioning
        // core stays far below kappa = 6.
        let g = generators::book(6).unwrap();
        let mut o = exact(&g);
        let (td, _) = learn_decomposition(&mut o, 8).unwrap();
        let rd = root_decomposition(&td).unwrap();
        let guard = select_guard_set(&mut o, &rd, 0, 1, td.width(), "t").unwrap();
        assert!(rd.is_lca_closed(&guard.r_nodes));
        assert!(guard.s_vertices.len() <= 6);
        assert!(guard.s_vertices.contains(0) && guard.s_vertices.contains(1));
    }

    #[test]
    fn components_of_p4_around_middle_pair() {
        let g = generators::path_graph(4).unwrap();
        let mut o = exact(&g);
        let (td, _) = learn_decomposition(&mut o, 4).unwrap();
        let rd = root_decomposition(&td).unwrap();
        let guard = select_guard_set(&mut o, &rd, 1, 2, td.width(), "t").unwrap();
        let comps = discover_components(&mut o, &rd, &guard, 1, 2, "t").unwrap();
        let sets: Vec<&VertexSet> = comps.iter().map(|(c, _)| c).collect();
        assert_eq!(
            sets,
            vec![&VertexSet::new(vec![0]), &VertexSet::new(vec![3])]
        );
    }

    #[test]
    fn decide_edge_on_p4_middle_pair() {
        let g = generators::path_graph(4).unwrap();
        let mut o = exact(&g);
        let (td, _) = learn_decomposition(&mut o, 4).unwrap();
        let rd = root_decomposition(&td).unwrap();
        let (edge, trail) = decide_edge(&mut o, &rd, 1, 2, td.width()).unwrap();
        assert!(edge);
        assert_eq!(trail.final_test_size, 0);
    }

    #[test]
    fn book_with_missing_hub_edge_is_refuted_by_one_large_test() {
        let g = generators::book(6).unwrap().remove_edge(0, 1).unwrap();
        let mut o = exact(&g);
        let report = learn_tw(&mut o, 8).unwrap();
        assert_eq!(report.result_graph, g);
        let hub_trail = report
            .trail
            .iter()
            .find(|t| (t.u, t.v) == (0, 1))
            .expect("hub pair is a candidate");
        assert!(!hub_trail.edge);
        assert_eq!(hub_trail.final_test_size, 6);
    }

    #[test]
    fn learn_tw_recovers_small_instances() {
        for g in [
            generators::path_graph(3).unwrap(),
            generators::path_graph(4).unwrap(),
            generators::clique(3).unwrap(),
            generators::wheel6(),
            generators::book(4).unwrap(),
            generators::edgeless(4).unwrap(),
            generators::edgeless(2).unwrap(),
            generators::clique(2).unwrap(),
            generators::edgeless(1).unwrap(),
        ] {
            let mut o = exact(&g);
            let report = learn_tw(&mut o, g.n()).unwrap();
            assert_eq!(report.result_graph, g, "failed on {g:?}");
            assert!(validate_decomposition(&g, &report.decomposition).is_empty());
        }
    }

    #[test]
    fn edgeless_learns_with_empty_tests_only() {
        let g = generators::edgeless(4).unwrap();
        let mut o = exact(&g);
        let report = learn_tw(&mut o, 4).unwrap();
        assert_eq!(report.result_graph, g);
        assert_eq!(report.stats.max_size_seen, 0);
        assert_eq!(report.candidate_pairs, 0);
        assert_eq!(report.stats.total_tests, 6);
    }

    #[test]
    fn learn_decomposition_examples() {
        let p3 = generators::path_graph(3).unwrap();
        let mut o = exact(&p3);
        let (td, rep) = learn_decomposition(&mut o, 3).unwrap();
        assert_eq!(td.width(), 1);
        assert_eq!(rep.stopping_level, 1);
        assert!(validate_decomposition(&p3, &td).is_empty());

        let k3 = generators::clique(3).unwrap();
        let mut o = exact(&k3);
        let (td, rep) = learn_decomposition(&mut o, 3).unwrap();
        assert_eq!(td.width(), 2);
        assert_eq!(rep.stopping_level, 2);

        let e2 = generators::edgeless(2).unwrap();
        let mut o = exact(&e2);
        let (td, _) = learn_decomposition(&mut o, 2).unwrap();
        assert_eq!(td.width(), 0);
    }

    #[test]
    fn budget_exhaustion_surfaces_partial_state() {
        let g = generators::wheel6();
        let mut o = Oracle::exact(g, Budget::count_limit(10));
        let failure = learn_tw(&mut o, 6).unwrap_err();
        assert!(failure.error.is_budget_exceeded());
        assert_eq!(failure.stats.total_tests, 10);
    }
}
