//! Immutable undirected graphs and exact connectivity primitives.
//!
//! Everything downstream (oracles, learners, generators) is built on the
//! operations here: connected components after vertex deletion, minimum
//! vertex separators, and the pairwise connectivity values they induce.

use crate::{Error, Result};
use std::collections::VecDeque;
use std::fmt;
use std::ops::Deref;

/// Sorted, duplicate-free set of vertex ids.
///
/// Used for conditioning sets, separators, components and bags. Keeping the
/// members sorted makes set output deterministic and lets membership tests
/// use binary search.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<u32>);

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn new(mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    /// Wraps a slice that is already sorted and duplicate-free.
    pub fn from_sorted_slice(members: &[u32]) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members.to_vec())
    }

    pub fn singleton(v: u32) -> Self {
        VertexSet(vec![v])
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn min_elem(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn insert(&mut self, v: u32) {
        if let Err(pos) = self.0.binary_search(&v) {
            self.0.insert(pos, v);
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        VertexSet::new(out)
    }

    pub fn minus(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn without(&self, v: u32) -> VertexSet {
        VertexSet(self.iter().filter(|&w| w != v).collect())
    }

    pub fn with(&self, v: u32) -> VertexSet {
        let mut out = self.clone();
        out.insert(v);
        out
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().any(|v| large.contains(v))
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Bitmask form; only valid when all members are below 64.
    pub(crate) fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &v| m | (1u64 << v))
    }
}

impl Deref for VertexSet {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl FromIterator<u32> for VertexSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl From<Vec<u32>> for VertexSet {
    fn from(v: Vec<u32>) -> Self {
        VertexSet::new(v)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Immutable undirected simple graph over vertex ids `0..n`.
///
/// Edge-edit operations return new graphs; the edge list is kept in
/// canonical sorted order so equality and reports are reproducible.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
    adj_mask: Option<Vec<u64>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}
impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph, rejecting out-of-range endpoints, self-loops and
    /// duplicate edges.
    pub fn new(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut canonical: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a as usize >= n {
                return Err(Error::InvalidVertex { vertex: a, n });
            }
            if b as usize >= n {
                return Err(Error::InvalidVertex { vertex: b, n });
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            canonical.push((a.min(b), a.max(b)));
        }
        canonical.sort_unstable();
        if canonical.windows(2).any(|w| w[0] == w[1]) {
            let dup = canonical.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
            return Err(Error::InvalidGraph(format!(
                "duplicate edge {{{},{}}}",
                dup.0, dup.1
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &canonical {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let adj_mask = if n <= 64 {
            let mut masks = vec![0u64; n];
            for &(a, b) in &canonical {
                masks[a as usize] |= 1u64 << b;
                masks[b as usize] |= 1u64 << a;
            }
            Some(masks)
        } else {
            None
        };
        Ok(Graph {
            n,
            edges: canonical,
            adj,
            adj_mask,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list: each pair `(u,v)` has `u < v`, sorted ascending.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        0..self.n as u32
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let (a, b) = (u.min(v), u.max(v));
        self.edges.binary_search(&(a, b)).is_ok()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    fn check_vertex(&self, v: u32) -> Result<()> {
        if (v as usize) < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.n,
            })
        }
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        for v in s.iter() {
            self.check_vertex(v)?;
        }
        Ok(())
    }

    /// New graph with the edge `{u,v}` added.
    pub fn add_edge(&self, u: u32, v: u32) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::InvalidGraph(format!(
                "edge {{{},{}}} already present",
                u.min(v),
                u.max(v)
            )));
        }
        let mut edges = self.edges.clone();
        edges.push((u.min(v), u.max(v)));
        Graph::new(self.n, &edges)
    }

    /// New graph with the edge `{u,v}` removed.
    pub fn remove_edge(&self, u: u32, v: u32) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::InvalidGraph(format!(
                "edge {{{},{}}} not present",
                u.min(v),
                u.max(v)
            )));
        }
        let edges: Vec<(u32, u32)> = self
            .edges
            .iter()
            .copied()
            .filter(|&e| e != (u.min(v), u.max(v)))
            .collect();
        Graph::new(self.n, &edges)
    }

    /// Toggles the edge `{u,v}`: removes it if present, adds it otherwise.
    pub fn toggle_edge(&self, u: u32, v: u32) -> Result<Graph> {
        if self.has_edge(u, v) {
            self.remove_edge(u, v)
        } else {
            self.add_edge(u, v)
        }
    }

    /// Induced subgraph `G[s]`, relabeled to `0..s.len()`.
    /// Returns the new graph and the map from new ids back to originals.
    pub fn induced(&self, s: &VertexSet) -> Result<(Graph, Vec<u32>)> {
        self.check_set(s)?;
        let map: Vec<u32> = s.iter().collect();
        let mut index = vec![u32::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            index[old as usize] = new as u32;
        }
        let mut edges = Vec::new();
        for &(a, b) in &self.edges {
            let (ia, ib) = (index[a as usize], index[b as usize]);
            if ia != u32::MAX && ib != u32::MAX {
                edges.push((ia, ib));
            }
        }
        Ok((Graph::new(map.len(), &edges)?, map))
    }

    /// Largest vertex degree; 0 for edgeless graphs.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `N(S)`: vertices outside `s` adjacent to some member of `s`.
    pub fn neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        let mut out = Vec::new();
        for v in s.iter() {
            for &w in self.neighbors(v) {
                if !s.contains(w) {
                    out.push(w);
                }
            }
        }
        Ok(VertexSet::new(out))
    }

    /// Connected components of `G \ s`, each sorted, ordered by minimum
    /// element.
    pub fn connected_components(&self, s: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_set(s)?;
        let mut removed = vec![false; self.n];
        for v in s.iter() {
            removed[v as usize] = true;
        }
        let mut seen = vec![false; self.n];
        let mut components = Vec::new();
        for start in 0..self.n as u32 {
            if removed[start as usize] || seen[start as usize] {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            seen[start as usize] = true;
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in self.neighbors(v) {
                    if !removed[w as usize] && !seen[w as usize] {
                        seen[w as usize] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(VertexSet(comp));
        }
        Ok(components)
    }

    /// True iff `u` and `v` lie in different components of `G \ s`.
    pub fn is_separated(&self, s: &VertexSet, u: u32, v: u32) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.check_set(s)?;
        if u == v {
            return Err(Error::InvalidTest(format!("endpoints coincide ({u})")));
        }
        if s.contains(u) || s.contains(v) {
            return Err(Error::InvalidTest(format!(
                "endpoint inside conditioning set {s}"
            )));
        }
        if let Some(masks) = &self.adj_mask {
            return Ok(Self::separated_mask(masks, self.n, s.mask(), u, v));
        }
        let mut removed = vec![false; self.n];
        for w in s.iter() {
            removed[w as usize] = true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([u]);
        seen[u as usize] = true;
        while let Some(x) = queue.pop_front() {
            if x == v {
                return Ok(false);
            }
            for &w in self.neighbors(x) {
                if !removed[w as usize] && !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
        Ok(true)
    }

    /// Bitset reachability for graphs with at most 64 vertices. The caller
    /// guarantees `u`, `v` are in range and outside the deleted set.
    pub(crate) fn separated_by_mask(&self, s_mask: u64, u: u32, v: u32) -> Option<bool> {
        self.adj_mask
            .as_ref()
            .map(|masks| Self::separated_mask(masks, self.n, s_mask, u, v))
    }

    fn separated_mask(masks: &[u64], n: usize, s_mask: u64, u: u32, v: u32) -> bool {
        let alive = if n == 64 {
            !s_mask
        } else {
            ((1u64 << n) - 1) & !s_mask
        };
        let target = 1u64 << v;
        let mut reach = 1u64 << u;
        let mut frontier = reach;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let w = f.trailing_zeros();
                f &= f - 1;
                next |= masks[w as usize];
            }
            next &= alive & !reach;
            if next & target != 0 {
                return false;
            }
            reach |= next;
            frontier = next;
        }
        true
    }

    /// True iff `G` has at most one connected component.
    pub fn is_connected(&self) -> bool {
        self.connected_components(&VertexSet::empty())
            .map(|c| c.len() <= 1)
            .unwrap_or(true)
    }

    /// Maximum number of vertex-disjoint `u`-`v` paths that each use at
    /// least one internal vertex. Equals the smallest `u`-`v`-separator in
    /// `G - uv`, computed by unit-vertex-capacity maximum flow.
    pub fn kappa_pair(&self, u: u32, v: u32) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidTest(format!("endpoints coincide ({u})")));
        }
        Ok(self.internal_vertex_flow(u, v))
    }

    /// Max flow from `u` to `v` on the vertex-split network of `G - uv`.
    fn internal_vertex_flow(&self, u: u32, v: u32) -> usize {
        // Node 2w is "in", 2w+1 is "out". Source is out(u), sink is in(v).
        let n = self.n;
        let size = 2 * n;
        let mut cap = vec![false; size * size];
        let idx = |a: usize, b: usize| a * size + b;
        for w in 0..n {
            if w != u as usize && w != v as usize {
                cap[idx(2 * w, 2 * w + 1)] = true;
            }
        }
        for &(a, b) in &self.edges {
            if (a, b) == (u.min(v), u.max(v)) {
                continue; // the direct edge contributes no internal path
            }
            let (a, b) = (a as usize, b as usize);
            cap[idx(2 * a + 1, 2 * b)] = true;
            cap[idx(2 * b + 1, 2 * a)] = true;
        }
        let source = 2 * u as usize + 1;
        let sink = 2 * v as usize;
        let mut flow = 0;
        loop {
            // BFS for an augmenting path in the residual network.
            let mut prev = vec![usize::MAX; size];
            prev[source] = source;
            let mut queue = VecDeque::from([source]);
            'bfs: while let Some(x) = queue.pop_front() {
                for y in 0..size {
                    if cap[idx(x, y)] && prev[y] == usize::MAX {
                        prev[y] = x;
                        if y == sink {
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
            if prev[sink] == usize::MAX {
                return flow;
            }
            let mut y = sink;
            while y != source {
                let x = prev[y];
                cap[idx(x, y)] = false;
                cap[idx(y, x)] = true;
                y = x;
            }
            flow += 1;
        }
    }

    /// `max_{u,v} kappa_pair(u, v)`; requires at least two vertices.
    pub fn kappa_max(&self) -> Result<usize> {
        Ok(self.kappa_attaining_pair()?.2)
    }

    /// Lexicographically smallest pair attaining the maximum pairwise
    /// connectivity, together with that value.
    pub fn kappa_attaining_pair(&self) -> Result<(u32, u32, usize)> {
        if self.n < 2 {
            return Err(Error::InvalidGraph(
                "pairwise connectivity needs at least two vertices".into(),
            ));
        }
        let mut best = (0u32, 1u32, 0usize);
        let mut found = false;
        for u in 0..self.n as u32 {
            for v in (u + 1)..self.n as u32 {
                let k = self.internal_vertex_flow(u, v);
                if !found || k > best.2 {
                    best = (u, v, k);
                    found = true;
                }
            }
        }
        Ok(best)
    }
}
