//! Ground-truth audits of decomposition-guided runs.
//!
//! The learner records what it did (guard sets, regions, components, cuts,
//! final tests); the functions here replay that trail against the true
//! graph and report every broken guarantee. Nothing in this module is
//! reachable from the learning path, so no learner decision can read the
//! hidden graph.

use crate::graph::{Graph, VertexSet};
use crate::treewidth::{exact_treewidth, root_decomposition, validate_decomposition};
use crate::twlearn::{PairTrail, TwLearnerReport};
use crate::Result;
use std::fmt;

/// One broken guarantee observed while replaying a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditViolation {
    DecompositionInvalid { detail: String },
    WidthMismatch { learned: usize, actual: usize },
    NotLcaClosed { u: u32, v: u32 },
    GuardTooLarge { u: u32, v: u32, size: usize, kappa: usize },
    RegionPrecondition { u: u32, v: u32, node: usize },
    RegionVerdict { u: u32, v: u32, node: usize },
    RegionCutWrong { u: u32, v: u32, node: usize },
    ComponentsMismatch { u: u32, v: u32 },
    ComponentKappa { u: u32, v: u32, observed: usize, bound: usize },
    NeighborhoodTooLarge { u: u32, v: u32, observed: usize, bound: usize },
    BoundaryWrong { u: u32, v: u32 },
    AdditivityViolated { u: u32, v: u32, sum: usize, kappa_pair: usize },
    CutNotMinimum { u: u32, v: u32 },
    RSizeExceeded { u: u32, v: u32, size: usize, bound: usize },
    FinalUnsound { u: u32, v: u32 },
    FinalTooLarge { u: u32, v: u32, size: usize, bound: usize },
    EdgeMismatch { u: u32, v: u32 },
}

impl fmt::Display for AuditViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use AuditViolation::*;
        match self {
            DecompositionInvalid { detail } => write!(f, "learned decomposition invalid: {detail}"),
            WidthMismatch { learned, actual } => {
                write!(f, "learned width {learned} but treewidth is {actual}")
            }
            NotLcaClosed { u, v } => write!(f, "({u},{v}): guard node set is not LCA-closed"),
            GuardTooLarge { u, v, size, kappa } => {
                write!(f, "({u},{v}): |S| = {size} exceeds kappa = {kappa}")
            }
            RegionPrecondition { u, v, node } => {
                write!(f, "({u},{v}): region at node {node} leaks outside its base")
            }
            RegionVerdict { u, v, node } => {
                write!(f, "({u},{v}): threshold verdict at node {node} contradicts ground truth")
            }
            RegionCutWrong { u, v, node } => {
                write!(f, "({u},{v}): recorded cut at node {node} is not a minimum separator")
            }
            ComponentsMismatch { u, v } => {
                write!(f, "({u},{v}): discovered components differ from components of G \\ S")
            }
            ComponentKappa { u, v, observed, bound } => {
                write!(f, "({u},{v}): region connectivity {observed} exceeds {bound}")
            }
            NeighborhoodTooLarge { u, v, observed, bound } => {
                write!(f, "({u},{v}): component neighborhood {observed} exceeds {bound}")
            }
            BoundaryWrong { u, v } => {
                write!(f, "({u},{v}): recorded boundary is not N(C) with the endpoints")
            }
            AdditivityViolated { u, v, sum, kappa_pair } => {
                write!(f, "({u},{v}): region connectivities sum to {sum} > kappa(u,v) = {kappa_pair}")
            }
            CutNotMinimum { u, v } => {
                write!(f, "({u},{v}): a component cut is not minimum or not separating")
            }
            RSizeExceeded { u, v, size, bound } => {
                write!(f, "({u},{v}): |R| = {size} exceeds {bound}")
            }
            FinalUnsound { u, v } => {
                write!(f, "({u},{v}): final combined test contradicts the true graph")
            }
            FinalTooLarge { u, v, size, bound } => {
                write!(f, "({u},{v}): final test size {size} exceeds 2*kappa = {bound}")
            }
            EdgeMismatch { u, v } => write!(f, "({u},{v}): decided edge differs from the true graph"),
        }
    }
}

/// `kappa(G[region ∪ {u,v}], u, v)` against ground truth.
pub fn kappa_through_region(g: &Graph, region: &VertexSet, u: u32, v: u32) -> Result<usize> {
    let sub_vertices = region.with(u).with(v);
    let (sub, map) = g.induced(&sub_vertices)?;
    let pos = |x: u32| map.binary_search(&x).expect("member of the induced set") as u32;
    sub.kappa_pair(pos(u), pos(v))
}

fn separates_in_region(g: &Graph, region: &VertexSet, x: &VertexSet, u: u32, v: u32) -> bool {
    let sub_vertices = region.with(u).with(v);
    let (sub, map) = g.induced(&sub_vertices).expect("vertices in range");
    let pos = |w: u32| map.binary_search(&w).expect("member") as u32;
    let sub = if sub.has_edge(pos(u), pos(v)) {
        sub.remove_edge(pos(u), pos(v)).expect("edge present")
    } else {
        sub
    };
    let x_local: VertexSet = x.iter().map(pos).collect();
    sub.is_separated(&x_local, pos(u), pos(v))
        .expect("well-formed separation query")
}

fn audit_pair(
    g: &Graph,
    tw: usize,
    kappa: usize,
    trail: &PairTrail,
    rd: &crate::treewidth::RootedDecomposition,
    out: &mut Vec<AuditViolation>,
) -> Result<()> {
    let (u, v) = (trail.u, trail.v);
    let guard = &trail.guard;

    if !rd.is_lca_closed(&guard.r_nodes) {
        out.push(AuditViolation::NotLcaClosed { u, v });
    }
    // S always carries the two endpoints, so the kappa bound can only bind
    // from 2 upward; it is exactly kappa whenever kappa >= 2.
    if guard.s_vertices.len() > kappa.max(2) {
        out.push(AuditViolation::GuardTooLarge {
            u,
            v,
            size: guard.s_vertices.len(),
            kappa,
        });
    }
    let r_bound = (kappa / (tw + 1)).saturating_sub(1);
    if guard.r_nodes.len() > r_bound {
        out.push(AuditViolation::RSizeExceeded {
            u,
            v,
            size: guard.r_nodes.len(),
            bound: r_bound,
        });
    }

    for check in &guard.region_log {
        // The oracle procedure is only sound when the region's neighborhood
        // stays inside the conditioning base.
        let leak = g
            .neighborhood(&check.region)?
            .iter()
            .any(|w| !check.base.contains(w));
        if leak {
            out.push(AuditViolation::RegionPrecondition { u, v, node: check.node });
        }
        let k_region = kappa_through_region(g, &check.region, u, v)?;
        if check.added != (k_region >= 2 * tw + 2) {
            out.push(AuditViolation::RegionVerdict { u, v, node: check.node });
        }
        if let Some(cut) = &check.cut {
            if cut.len() != k_region || !separates_in_region(g, &check.region, cut, u, v) {
                out.push(AuditViolation::RegionCutWrong { u, v, node: check.node });
            }
        }
    }

    let truth = g.connected_components(&guard.s_vertices)?;
    let discovered: Vec<&VertexSet> = trail.components.iter().map(|(c, _)| c).collect();
    if truth.len() != discovered.len()
        || truth.iter().zip(&discovered).any(|(a, &b)| a != b)
    {
        out.push(AuditViolation::ComponentsMismatch { u, v });
        return Ok(());
    }

    let mut region_sum = 0usize;
    for ((c, bound), cut) in trail.components.iter().zip(&trail.cuts) {
        let k_region = kappa_through_region(g, c, u, v)?;
        region_sum += k_region;
        if k_region > 3 * tw + 2 {
            out.push(AuditViolation::ComponentKappa {
                u,
                v,
                observed: k_region,
                bound: 3 * tw + 2,
            });
        }
        let nb = g.neighborhood(c)?;
        if nb.len() > 2 * tw + 4 {
            out.push(AuditViolation::NeighborhoodTooLarge {
                u,
                v,
                observed: nb.len(),
                bound: 2 * tw + 4,
            });
        }
        if bound != &nb.with(u).with(v) {
            out.push(AuditViolation::BoundaryWrong { u, v });
        }
        if cut.len() != k_region || !separates_in_region(g, c, cut, u, v) {
            out.push(AuditViolation::CutNotMinimum { u, v });
        }
    }
    let kappa_pair = g.kappa_pair(u, v)?;
    if region_sum > kappa_pair {
        out.push(AuditViolation::AdditivityViolated {
            u,
            v,
            sum: region_sum,
            kappa_pair,
        });
    }

    if trail.final_test_size > 2 * kappa {
        out.push(AuditViolation::FinalTooLarge {
            u,
            v,
            size: trail.final_test_size,
            bound: 2 * kappa,
        });
    }
    let truly_adjacent = g.has_edge(u, v);
    if trail.edge != truly_adjacent {
        out.push(AuditViolation::EdgeMismatch { u, v });
    }
    if !truly_adjacent {
        let mut combined = guard.s_vertices.without(u).without(v);
        for x in &trail.cuts {
            combined = combined.union(x);
        }
        if !g.is_separated(&combined, u, v)? {
            out.push(AuditViolation::FinalUnsound { u, v });
        }
    }
    Ok(())
}

/// Replays a decomposition-guided run against the true graph. Empty result
/// means every audited guarantee held.
pub fn audit_tw_report(g: &Graph, report: &TwLearnerReport) -> Result<Vec<AuditViolation>> {
    let mut out = Vec::new();
    let violations = validate_decomposition(g, &report.decomposition);
    for violation in violations {
        out.push(AuditViolation::DecompositionInvalid {
            detail: violation.to_string(),
        });
    }
    let (actual_tw, _) = exact_treewidth(g)?;
    if report.width != actual_tw {
        out.push(AuditViolation::WidthMismatch {
            learned: report.width,
            actual: actual_tw,
        });
    }
    if report.trail.is_empty() {
        return Ok(out);
    }
    let kappa = g.kappa_max()?;
    let rd = root_decomposition(&report.decomposition)?;
    for trail in &report.trail {
        audit_pair(g, actual_tw, kappa, trail, &rd, &mut out)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::oracle::{Budget, Oracle};
    use crate::twlearn::learn_tw;

    fn audited_clean(g: &Graph) -> Vec<AuditViolation> {
        let mut o = Oracle::exact(g.clone(), Budget::unlimited());
        let report = learn_tw(&mut o, g.n()).unwrap();
        assert_eq!(&report.result_graph, g);
        audit_tw_report(g, &report).unwrap()
    }

    #[test]
    fn clean_runs_produce_no_violations() {
        for g in [
            generators::path_graph(4).unwrap(),
            generators::wheel6(),
            generators::book(6).unwrap(),
            generators::cycle_graph(5).unwrap(),
            generators::random_graph(8, 0.3, 11).unwrap(),
        ] {
            let violations = audited_clean(&g);
            assert!(violations.is_empty(), "violations on {g:?}: {violations:?}");
        }
    }

    #[test]
    fn kappa_through_region_matches_hand_values() {
        let g = generators::wheel6();
        // Rim path 1-2-3-4 inside the region {2,3}.
        let region = VertexSet::new(vec![2, 3]);
        assert_eq!(kappa_through_region(&g, &region, 1, 4).unwrap(), 1);
        // All internal vertices available: the full kappa of the pair.
        let everything = VertexSet::new(vec![0, 2, 3, 5]);
        assert_eq!(kappa_through_region(&g, &everything, 1, 4).unwrap(), 3);
    }

    #[test]
    fn tampered_report_is_flagged() {
        let g = generators::book(4).unwrap();
        let mut o = Oracle::exact(g.clone(), Budget::unlimited());
        let mut report = learn_tw(&mut o, g.n()).unwrap();
        for trail in &mut report.trail {
            if (trail.u, trail.v) == (0, 1) {
                trail.edge = false;
            }
        }
        let violations = audit_tw_report(&g, &report).unwrap();
        assert!(violations
            .iter()
            .any(|x| matches!(x, AuditViolation::EdgeMismatch { u: 0, v: 1 })));
    }
}
