//! Tree decompositions: validation, exact treewidth, and the rooted form
//! used by the decomposition-guided learner.
//!
//! `width_at_most` is the workhorse decision procedure. It settles cheap
//! instances with a degeneracy lower bound or a greedy elimination order and
//! falls back to an exact dynamic program over elimination prefixes; only
//! the exact fallback is subject to the instance-size cap.

use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

/// A tree of bags. Structural bag/edge storage only; see
/// [`validate_decomposition`] for the three decomposition properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Builds a decomposition from bags and tree edges. Edge endpoints must
    /// be valid node ids; tree-ness itself is reported by validation, not
    /// enforced here, so tests can construct broken instances.
    pub fn new(bags: Vec<VertexSet>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let nn = bags.len();
        let mut canonical = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a >= nn || b >= nn || a == b {
                return Err(Error::InvalidDecomposition(format!(
                    "bad tree edge ({a},{b}) for {nn} nodes"
                )));
            }
            canonical.push((a.min(b), a.max(b)));
        }
        canonical.sort_unstable();
        canonical.dedup();
        Ok(TreeDecomposition {
            bags,
            edges: canonical,
        })
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn bag(&self, node: usize) -> &VertexSet {
        &self.bags[node]
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Max bag size minus one; 0 for empty or all-empty decompositions.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(VertexSet::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    fn is_tree(&self) -> bool {
        let nn = self.bags.len();
        if nn == 0 {
            return false;
        }
        if self.edges.len() != nn - 1 {
            return false;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; nn];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(t) = queue.pop_front() {
            for &w in &adj[t] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == nn
    }

    /// Plain-text form: header `td <nodes> <width>`, one `b` line per bag,
    /// one `e` line per tree edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("td {} {}\n", self.node_count(), self.width());
        for (i, bag) in self.bags.iter().enumerate() {
            out.push_str(&format!("b {i}"));
            for v in bag.iter() {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!("e {a} {b}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidDecomposition("missing td header".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "td" {
            return Err(Error::InvalidDecomposition(format!(
                "bad header line '{header}'"
            )));
        }
        let nn: usize = parts[1]
            .parse()
            .map_err(|_| Error::InvalidDecomposition("bad node count".into()))?;
        let stated_width: usize = parts[2]
            .parse()
            .map_err(|_| Error::InvalidDecomposition("bad width".into()))?;
        let mut bags = vec![VertexSet::empty(); nn];
        let mut edges = Vec::new();
        for line in lines {
            let mut fields = line.split_whitespace();
            match fields.next() {
                Some("b") => {
                    let id: usize = fields
                        .next()
                        .and_then(|f| f.parse().ok())
                        .ok_or_else(|| Error::InvalidDecomposition("bad bag id".into()))?;
                    if id >= nn {
                        return Err(Error::InvalidDecomposition(format!(
                            "bag id {id} out of range"
                        )));
                    }
                    let members: Vec<u32> = fields
                        .map(|f| {
                            f.parse().map_err(|_| {
                                Error::InvalidDecomposition(format!("bad bag member '{f}'"))
                            })
                        })
                        .collect::<Result<_>>()?;
                    bags[id] = VertexSet::new(members);
                }
                Some("e") => {
                    let a: usize = fields
                        .next()
                        .and_then(|f| f.parse().ok())
                        .ok_or_else(|| Error::InvalidDecomposition("bad edge".into()))?;
                    let b: usize = fields
                        .next()
                        .and_then(|f| f.parse().ok())
                        .ok_or_else(|| Error::InvalidDecomposition("bad edge".into()))?;
                    edges.push((a, b));
                }
                Some(other) => {
                    return Err(Error::InvalidDecomposition(format!(
                        "unknown record '{other}'"
                    )))
                }
                None => {}
            }
        }
        let td = TreeDecomposition::new(bags, edges)?;
        if td.width() != stated_width {
            return Err(Error::InvalidDecomposition(format!(
                "stated width {stated_width} does not match actual {}",
                td.width()
            )));
        }
        Ok(td)
    }
}

/// One broken decomposition property, naming its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotATree,
    BagVertexOutOfRange { node: usize, vertex: u32 },
    MissingVertex { vertex: u32 },
    UncoveredEdge { u: u32, v: u32 },
    DisconnectedOccurrence { vertex: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree => write!(f, "decomposition tree is not a tree"),
            Violation::BagVertexOutOfRange { node, vertex } => {
                write!(f, "bag {node} contains out-of-range vertex {vertex}")
            }
            Violation::MissingVertex { vertex } => {
                write!(f, "vertex {vertex} appears in no bag")
            }
            Violation::UncoveredEdge { u, v } => {
                write!(f, "edge {{{u},{v}}} is contained in no bag")
            }
            Violation::DisconnectedOccurrence { vertex } => {
                write!(f, "occurrence subtree of vertex {vertex} is disconnected")
            }
        }
    }
}

/// Checks the three decomposition properties plus basic structure. Empty
/// list iff `td` is a valid tree decomposition of `g`.
pub fn validate_decomposition(g: &Graph, td: &TreeDecomposition) -> Vec<Violation> {
    let mut out = Vec::new();
    let nn = td.node_count();
    if nn == 0 {
        if g.n() == 0 {
            return out;
        }
        out.push(Violation::NotATree);
        for v in g.vertices() {
            out.push(Violation::MissingVertex { vertex: v });
        }
        return out;
    }
    if !td.is_tree() {
        out.push(Violation::NotATree);
    }
    for (node, bag) in td.bags().iter().enumerate() {
        for v in bag.iter() {
            if v as usize >= g.n() {
                out.push(Violation::BagVertexOutOfRange { node, vertex: v });
            }
        }
    }
    let mut covered = vec![false; g.n()];
    for bag in td.bags() {
        for v in bag.iter() {
            if (v as usize) < g.n() {
                covered[v as usize] = true;
            }
        }
    }
    for v in g.vertices() {
        if !covered[v as usize] {
            out.push(Violation::MissingVertex { vertex: v });
        }
    }
    for &(u, v) in g.edges() {
        if !td.bags().iter().any(|b| b.contains(u) && b.contains(v)) {
            out.push(Violation::UncoveredEdge { u, v });
        }
    }
    let adj = td.adjacency();
    for v in g.vertices() {
        let nodes: Vec<usize> = (0..nn).filter(|&t| td.bag(t).contains(v)).collect();
        if nodes.len() <= 1 {
            continue;
        }
        let inside: BTreeSet<usize> = nodes.iter().copied().collect();
        let mut seen = BTreeSet::from([nodes[0]]);
        let mut queue = VecDeque::from([nodes[0]]);
        while let Some(t) = queue.pop_front() {
            for &w in &adj[t] {
                if inside.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        if seen.len() != nodes.len() {
            out.push(Violation::DisconnectedOccurrence { vertex: v });
        }
    }
    out
}

/// A decomposition rooted at a synthetic empty bag, with parent links,
/// depths, a fixed postorder, and per-node `cmp` sets (the vertices that
/// occur strictly below a node but not in its bag).
#[derive(Debug, Clone)]
pub struct RootedDecomposition {
    bags: Vec<VertexSet>,
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    postorder: Vec<usize>,
    cmp: Vec<VertexSet>,
}

/// Roots `td` by attaching a fresh empty-bag node to node 0.
pub fn root_decomposition(td: &TreeDecomposition) -> Result<RootedDecomposition> {
    let nn = td.node_count();
    if nn == 0 {
        return Err(Error::InvalidDecomposition(
            "cannot root an empty decomposition".into(),
        ));
    }
    if !td.is_tree() {
        return Err(Error::InvalidDecomposition(
            "cannot root a non-tree decomposition".into(),
        ));
    }
    let total = nn + 1;
    let root = nn;
    let mut bags = td.bags().to_vec();
    bags.push(VertexSet::empty());
    let mut adj = td.adjacency();
    adj.push(vec![0]);
    adj[0].push(root);
    adj[0].sort_unstable();

    let mut parent = vec![None; total];
    let mut children = vec![Vec::new(); total];
    let mut depth = vec![0usize; total];
    let mut order = Vec::with_capacity(total);
    let mut queue = VecDeque::from([root]);
    let mut seen = vec![false; total];
    seen[root] = true;
    while let Some(t) = queue.pop_front() {
        order.push(t);
        for &w in &adj[t] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(t);
                depth[w] = depth[t] + 1;
                children[t].push(w);
                queue.push_back(w);
            }
        }
    }
    for list in &mut children {
        list.sort_unstable();
    }

    // Iterative DFS postorder, children visited in ascending node id.
    let mut postorder = Vec::with_capacity(total);
    let mut stack = vec![(root, 0usize)];
    while let Some(&mut (t, ref mut next)) = stack.last_mut() {
        if *next < children[t].len() {
            let c = children[t][*next];
            *next += 1;
            stack.push((c, 0));
        } else {
            postorder.push(t);
            stack.pop();
        }
    }

    let mut below: Vec<VertexSet> = vec![VertexSet::empty(); total];
    let mut cmp: Vec<VertexSet> = vec![VertexSet::empty(); total];
    for &t in &postorder {
        let mut acc = VertexSet::empty();
        for &c in &children[t] {
            acc = acc.union(&below[c]).union(&bags[c]);
        }
        cmp[t] = acc.minus(&bags[t]);
        below[t] = acc;
    }

    Ok(RootedDecomposition {
        bags,
        root,
        parent,
        children,
        depth,
        postorder,
        cmp,
    })
}

impl RootedDecomposition {
    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn bag(&self, t: usize) -> &VertexSet {
        &self.bags[t]
    }

    /// Vertices occurring in bags strictly below `t`, minus `bag(t)`.
    pub fn cmp(&self, t: usize) -> &VertexSet {
        &self.cmp[t]
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        self.parent[t]
    }

    pub fn children(&self, t: usize) -> &[usize] {
        &self.children[t]
    }

    /// Nodes in DFS postorder: every descendant precedes its ancestors.
    pub fn postorder(&self) -> &[usize] {
        &self.postorder
    }

    pub fn lca(&self, a: usize, b: usize) -> usize {
        let (mut x, mut y) = (a, b);
        while self.depth[x] > self.depth[y] {
            x = self.parent[x].expect("non-root has parent");
        }
        while self.depth[y] > self.depth[x] {
            y = self.parent[y].expect("non-root has parent");
        }
        while x != y {
            x = self.parent[x].expect("non-root has parent");
            y = self.parent[y].expect("non-root has parent");
        }
        x
    }

    /// True iff `node` lies strictly below `of`.
    pub fn is_strict_descendant(&self, node: usize, of: usize) -> bool {
        node != of && self.lca(node, of) == of
    }

    /// True iff the set contains the LCA of each of its pairs.
    pub fn is_lca_closed(&self, nodes: &[usize]) -> bool {
        for (i, &a) in nodes.iter().enumerate() {
            for &b in &nodes[i + 1..] {
                let l = self.lca(a, b);
                if !nodes.contains(&l) {
                    return false;
                }
            }
        }
        true
    }
}

/// Caps on the exact search. Only the exhaustive decision procedure is
/// subject to them; degeneracy/greedy shortcuts run at any size.
#[derive(Debug, Clone, Copy)]
pub struct TreewidthLimits {
    pub max_exact_n: usize,
    pub max_states: usize,
}

impl Default for TreewidthLimits {
    fn default() -> Self {
        TreewidthLimits {
            max_exact_n: 30,
            max_states: 1 << 22,
        }
    }
}

fn neighbor_sets(g: &Graph) -> Vec<BTreeSet<u32>> {
    (0..g.n() as u32)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect()
}

/// Largest minimum degree over the suffix subgraphs of a min-degree
/// elimination; a lower bound on treewidth.
pub fn degeneracy(g: &Graph) -> usize {
    let mut nb = neighbor_sets(g);
    let mut alive: BTreeSet<u32> = (0..g.n() as u32).collect();
    let mut best = 0;
    while !alive.is_empty() {
        let &v = alive
            .iter()
            .min_by_key(|&&v| (nb[v as usize].len(), v))
            .unwrap();
        best = best.max(nb[v as usize].len());
        let neighbors: Vec<u32> = nb[v as usize].iter().copied().collect();
        for w in neighbors {
            nb[w as usize].remove(&v);
        }
        nb[v as usize].clear();
        alive.remove(&v);
    }
    best
}

#[derive(Clone, Copy)]
enum GreedyRule {
    MinDegree,
    MinFill,
}

fn greedy_order(g: &Graph, rule: GreedyRule) -> Vec<u32> {
    let n = g.n();
    let mut nb = neighbor_sets(g);
    let mut alive: BTreeSet<u32> = (0..n as u32).collect();
    let mut order = Vec::with_capacity(n);
    while !alive.is_empty() {
        let v = *alive
            .iter()
            .min_by_key(|&&v| {
                let score = match rule {
                    GreedyRule::MinDegree => nb[v as usize].len(),
                    GreedyRule::MinFill => {
                        let ns: Vec<u32> = nb[v as usize].iter().copied().collect();
                        let mut missing = 0usize;
                        for (i, &a) in ns.iter().enumerate() {
                            for &b in &ns[i + 1..] {
                                if !nb[a as usize].contains(&b) {
                                    missing += 1;
                                }
                            }
                        }
                        missing
                    }
                };
                (score, v)
            })
            .unwrap();
        order.push(v);
        let ns: Vec<u32> = nb[v as usize].iter().copied().collect();
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                nb[a as usize].insert(b);
                nb[b as usize].insert(a);
            }
        }
        for &w in &ns {
            nb[w as usize].remove(&v);
        }
        nb[v as usize].clear();
        alive.remove(&v);
    }
    order
}

/// Builds the decomposition induced by an elimination order: one bag per
/// vertex, containing it and its not-yet-eliminated fill neighbors.
fn decomposition_from_order(g: &Graph, order: &[u32]) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::new(vec![VertexSet::empty()], vec![]).unwrap();
    }
    debug_assert_eq!(order.len(), n);
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v as usize] = i;
    }
    let mut nb = neighbor_sets(g);
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::new();
    let mut orphans = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<u32> = nb[v as usize].iter().copied().collect();
        let mut bag: Vec<u32> = later.clone();
        bag.push(v);
        bags.push(VertexSet::new(bag));
        match later.iter().min_by_key(|&&w| pos[w as usize]) {
            Some(&w) => edges.push((i, pos[w as usize])),
            None if i + 1 < n => orphans.push(i),
            None => {}
        }
        for (a_idx, &a) in later.iter().enumerate() {
            for &b in &later[a_idx + 1..] {
                nb[a as usize].insert(b);
                nb[b as usize].insert(a);
            }
        }
        for &w in &later {
            nb[w as usize].remove(&v);
        }
        nb[v as usize].clear();
    }
    for i in orphans {
        edges.push((i, n - 1));
    }
    TreeDecomposition::new(bags, edges).expect("construction yields valid node ids")
}

fn single_bag(g: &Graph) -> TreeDecomposition {
    TreeDecomposition::new(vec![g.vertices().collect()], vec![]).unwrap()
}

/// Number of vertices outside `s ∪ {v}` reachable from `v` via paths whose
/// internal vertices all lie in `s`. This is `v`'s bag size minus one when
/// `s` is eliminated before it.
fn q_degree(adj: &[u64], s: u64, v: usize) -> usize {
    let vbit = 1u64 << v;
    let mut seen = vbit;
    let mut frontier = vbit;
    let mut outside = 0u64;
    while frontier != 0 {
        let mut expand = 0u64;
        let mut f = frontier;
        while f != 0 {
            let w = f.trailing_zeros() as usize;
            f &= f - 1;
            expand |= adj[w];
        }
        let fresh = expand & !seen;
        seen |= fresh;
        outside |= fresh & !s;
        frontier = fresh & s;
    }
    outside.count_ones() as usize
}

/// Exhaustive decision: is there an elimination order whose every step has
/// at most `k` remaining fill neighbors? Runs a layered search over
/// feasible elimination prefixes.
fn decide_width_at_most(
    g: &Graph,
    k: usize,
    limits: &TreewidthLimits,
) -> Result<Option<TreeDecomposition>> {
    let n = g.n();
    if n <= k + 1 {
        return Ok(Some(single_bag(g)));
    }
    if n > 64 || n > limits.max_exact_n {
        return Err(Error::InstanceTooLarge(format!(
            "exact treewidth search capped at {} vertices, instance has {n}",
            limits.max_exact_n.min(64)
        )));
    }
    let adj: Vec<u64> = (0..n as u32)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(0u64, |m, &w| m | (1u64 << w))
        })
        .collect();
    let target = n - (k + 1);
    let mut parents: HashMap<u64, (u64, u32)> = HashMap::new();
    let mut layer: Vec<u64> = vec![0];
    for _ in 0..target {
        let mut next = Vec::new();
        for &s in &layer {
            for v in 0..n {
                if s & (1 << v) != 0 {
                    continue;
                }
                if q_degree(&adj, s, v) <= k {
                    let t = s | (1 << v);
                    if let std::collections::hash_map::Entry::Vacant(e) = parents.entry(t) {
                        e.insert((s, v as u32));
                        next.push(t);
                    }
                }
            }
        }
        if parents.len() > limits.max_states {
            return Err(Error::InstanceTooLarge(format!(
                "exact treewidth search exceeded {} states",
                limits.max_states
            )));
        }
        if next.is_empty() {
            return Ok(None);
        }
        next.sort_unstable();
        layer = next;
    }
    let chosen = layer[0];
    let mut prefix = Vec::new();
    let mut cur = chosen;
    while cur != 0 {
        let (prev, v) = parents[&cur];
        prefix.push(v);
        cur = prev;
    }
    prefix.reverse();
    let mut order = prefix;
    for v in 0..n as u32 {
        if chosen & (1 << v) == 0 {
            order.push(v);
        }
    }
    Ok(Some(decomposition_from_order(g, &order)))
}

/// Decision variant: a width-`<= k` decomposition of `g`, or `None` when
/// `tw(g) > k` (certified).
pub fn width_at_most(g: &Graph, k: usize) -> Result<Option<TreeDecomposition>> {
    width_at_most_with(g, k, &TreewidthLimits::default())
}

pub fn width_at_most_with(
    g: &Graph,
    k: usize,
    limits: &TreewidthLimits,
) -> Result<Option<TreeDecomposition>> {
    let n = g.n();
    if n == 0 {
        return Ok(Some(TreeDecomposition::new(vec![VertexSet::empty()], vec![])?));
    }
    if n <= k + 1 {
        return Ok(Some(single_bag(g)));
    }
    if k == 0 && g.edge_count() > 0 {
        return Ok(None);
    }
    if degeneracy(g) > k {
        return Ok(None);
    }
    for rule in [GreedyRule::MinDegree, GreedyRule::MinFill] {
        let td = decomposition_from_order(g, &greedy_order(g, rule));
        if td.width() <= k {
            return Ok(Some(td));
        }
    }
    decide_width_at_most(g, k, limits)
}

/// Exact treewidth with a witness decomposition of that width.
pub fn exact_treewidth(g: &Graph) -> Result<(usize, TreeDecomposition)> {
    exact_treewidth_with(g, &TreewidthLimits::default())
}

pub fn exact_treewidth_with(
    g: &Graph,
    limits: &TreewidthLimits,
) -> Result<(usize, TreeDecomposition)> {
    let n = g.n();
    if n == 0 {
        let td = TreeDecomposition::new(vec![VertexSet::empty()], vec![])?;
        return Ok((0, td));
    }
    let lb = degeneracy(g);
    let mut best: Option<TreeDecomposition> = None;
    for rule in [GreedyRule::MinDegree, GreedyRule::MinFill] {
        let td = decomposition_from_order(g, &greedy_order(g, rule));
        if best.as_ref().is_none_or(|b| td.width() < b.width()) {
            best = Some(td);
        }
    }
    let best = best.expect("at least one greedy order");
    if best.width() == lb {
        return Ok((lb, best));
    }
    for k in lb..best.width() {
        if let Some(td) = decide_width_at_most(g, k, limits)? {
            debug_assert!(td.width() <= k);
            return Ok((td.width().max(lb), td));
        }
    }
    Ok((best.width(), best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn set(vs: &[u32]) -> VertexSet {
        VertexSet::new(vs.to_vec())
    }

    #[test]
    fn clique_treewidth() {
        let g = generators::clique(4).unwrap();
        let (w, td) = exact_treewidth(&g).unwrap();
        assert_eq!(w, 3);
        assert!(validate_decomposition(&g, &td).is_empty());
    }

    #[test]
    fn cycle_treewidth() {
        let g = generators::cycle_graph(5).unwrap();
        let (w, td) = exact_treewidth(&g).unwrap();
        assert_eq!(w, 2);
        assert!(validate_decomposition(&g, &td).is_empty());
    }

    #[test]
    fn trees_have_width_one() {
        for n in 2..7 {
            let g = generators::path_graph(n).unwrap();
            assert_eq!(exact_treewidth(&g).unwrap().0, 1);
            let s = generators::star(n).unwrap();
            assert_eq!(exact_treewidth(&s).unwrap().0, 1);
        }
    }

    #[test]
    fn band_treewidth_is_k() {
        let p = generators::BandParams::new(3, 3, 3).unwrap();
        let g = generators::band_graph(&p);
        let (w, td) = exact_treewidth(&g).unwrap();
        assert_eq!(w, 3);
        assert!(validate_decomposition(&g, &td).is_empty());
    }

    #[test]
    fn edgeless_and_tiny_graphs() {
        let g = generators::edgeless(3).unwrap();
        let (w, td) = exact_treewidth(&g).unwrap();
        assert_eq!(w, 0);
        assert!(validate_decomposition(&g, &td).is_empty());
        let single = generators::edgeless(1).unwrap();
        assert_eq!(exact_treewidth(&single).unwrap().0, 0);
    }

    #[test]
    fn width_at_most_is_a_decision() {
        let g = generators::clique(4).unwrap();
        assert!(width_at_most(&g, 2).unwrap().is_none());
        assert!(width_at_most(&g, 3).unwrap().is_some());
    }

    #[test]
    fn validate_flags_each_property() {
        let p3 = generators::path_graph(3).unwrap();
        let good =
            TreeDecomposition::new(vec![set(&[0, 1]), set(&[1, 2])], vec![(0, 1)]).unwrap();
        assert!(validate_decomposition(&p3, &good).is_empty());

        let k3 = generators::clique(3).unwrap();
        let bad = TreeDecomposition::new(vec![set(&[0, 1]), set(&[1, 2])], vec![(0, 1)]).unwrap();
        assert_eq!(
            validate_decomposition(&k3, &bad),
            vec![Violation::UncoveredEdge { u: 0, v: 2 }]
        );

        let split = TreeDecomposition::new(
            vec![set(&[0, 1]), set(&[2]), set(&[0, 2])],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        let violations = validate_decomposition(&p3, &split);
        assert!(violations.contains(&Violation::DisconnectedOccurrence { vertex: 0 }));
    }

    #[test]
    fn rooting_builds_cmp_and_lca() {
        let p3 = generators::path_graph(3).unwrap();
        let td = TreeDecomposition::new(vec![set(&[0, 1]), set(&[1, 2])], vec![(0, 1)]).unwrap();
        let rd = root_decomposition(&td).unwrap();
        assert_eq!(rd.root(), 2);
        assert!(rd.bag(rd.root()).is_empty());
        assert_eq!(rd.cmp(rd.root()), &set(&[0, 1, 2]));
        // Leaf whose vertices all appear in its own bag contributes nothing.
        assert_eq!(rd.cmp(1), &VertexSet::empty());
        assert_eq!(rd.cmp(0), &set(&[2]));
        let _ = p3;
    }

    #[test]
    fn lca_of_siblings_is_parent() {
        let td = TreeDecomposition::new(
            vec![set(&[0]), set(&[1]), set(&[2])],
            vec![(0, 1), (0, 2)],
        )
        .unwrap();
        let rd = root_decomposition(&td).unwrap();
        assert_eq!(rd.lca(1, 2), 0);
        assert!(rd.is_strict_descendant(1, rd.root()));
        assert!(rd.is_lca_closed(&[1, 2, 0]));
        assert!(!rd.is_lca_closed(&[1, 2]));
    }

    #[test]
    fn empty_decomposition_cannot_be_rooted() {
        let td = TreeDecomposition::new(vec![], vec![]).unwrap();
        assert!(matches!(
            root_decomposition(&td),
            Err(Error::InvalidDecomposition(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        let td = TreeDecomposition::new(
            vec![set(&[0, 1]), set(&[1, 2]), VertexSet::empty()],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        let text = td.to_text();
        assert_eq!(text, "td 3 1\nb 0 0 1\nb 1 1 2\nb 2\ne 0 1\ne 1 2\n");
        let parsed = TreeDecomposition::from_text(&text).unwrap();
        assert_eq!(parsed, td);
    }

    #[test]
    fn cmp_consistency_on_a_branching_tree() {
        let td = TreeDecomposition::new(
            vec![set(&[0, 1]), set(&[1, 2]), set(&[1, 3]), set(&[3, 4])],
            vec![(0, 1), (0, 2), (2, 3)],
        )
        .unwrap();
        let rd = root_decomposition(&td).unwrap();
        for &t in rd.postorder() {
            let mut acc = VertexSet::empty();
            for &c in rd.children(t) {
                acc = acc.union(rd.cmp(c)).union(rd.bag(c));
            }
            assert_eq!(&acc.minus(rd.bag(t)), rd.cmp(t), "node {t}");
        }
    }
}
