//! Instance families: band graphs with certified parameters, named test
//! graphs, and seeded random generation.
//!
//! Band vertices are stored 0-indexed; textbook descriptions of these
//! graphs number the line `v_1, v_2, ...`, so position `v_i` is id `i-1`
//! here. The removed edge in the minus variant is `{0, k}` accordingly.

use crate::graph::{Graph, VertexSet};
use crate::treewidth::TreeDecomposition;
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Parameters of the band family; the inequality chain `n >= q >= k >= 3`
/// is enforced at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BandParams {
    n: usize,
    q: usize,
    k: usize,
}

impl BandParams {
    pub fn new(n: usize, q: usize, k: usize) -> Result<Self> {
        if !(n >= q && q >= k && k >= 3) {
            return Err(Error::InvalidParams(format!(
                "band parameters must satisfy n >= q >= k >= 3, got ({n},{q},{k})"
            )));
        }
        Ok(BandParams { n, q, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn q(&self) -> usize {
        self.q
    }
    pub fn k(&self) -> usize {
        self.k
    }

    /// Total vertex count, `3qn`.
    pub fn total(&self) -> usize {
        3 * self.q * self.n
    }
}

/// Line graph where `i` and `j` are adjacent whenever `|i-j| <= k`.
pub fn band_line(total: usize, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParams("band width k must be positive".into()));
    }
    let mut edges = Vec::new();
    for i in 0..total {
        for j in (i + 1)..total.min(i + k + 1) {
            edges.push((i as u32, j as u32));
        }
    }
    Graph::new(total, &edges)
}

/// Same line graph with the single edge `{0, k}` removed.
pub fn band_line_minus(total: usize, k: usize) -> Result<Graph> {
    let g = band_line(total, k)?;
    if total <= k {
        return Err(Error::InvalidParams(
            "band line too short to contain the removed edge".into(),
        ));
    }
    g.remove_edge(0, k as u32)
}

/// The band graph on `3qn` vertices.
pub fn band_graph(p: &BandParams) -> Graph {
    band_line(p.total(), p.k()).expect("validated params")
}

/// The band graph minus the edge `{0, k}`.
pub fn band_graph_minus(p: &BandParams) -> Graph {
    band_line_minus(p.total(), p.k()).expect("validated params")
}

/// Sliding-window path decomposition of the band graph: bags
/// `{i, ..., i+k}` chained in line order. Width is exactly `k`.
pub fn band_path_decomposition(p: &BandParams) -> TreeDecomposition {
    band_line_path_decomposition(p.total(), p.k())
}

pub fn band_line_path_decomposition(total: usize, k: usize) -> TreeDecomposition {
    let bags: Vec<VertexSet> = (0..total.saturating_sub(k))
        .map(|i| (i as u32..=(i + k) as u32).collect())
        .collect();
    let bags = if bags.is_empty() {
        vec![(0..total as u32).collect()]
    } else {
        bags
    };
    let edges: Vec<(usize, usize)> = (1..bags.len()).map(|i| (i - 1, i)).collect();
    TreeDecomposition::new(bags, edges).expect("well-formed by construction")
}

/// True iff no `k-1` consecutive line positions are all members of `s`.
pub fn covers_no_short_interval(s: &VertexSet, k: usize, total: usize) -> bool {
    let window = k.saturating_sub(1);
    if window == 0 {
        return false; // the empty interval is covered by any set
    }
    if window > total {
        return true;
    }
    'outer: for start in 0..=(total - window) {
        for offset in 0..window {
            if !s.contains((start + offset) as u32) {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Hub vertex 0 adjacent to the 5-cycle 1-2-3-4-5.
pub fn wheel6() -> Graph {
    let edges = [
        (0, 1),
        (0, 2),
        (0, 3),
        (0, 4),
        (0, 5),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 5),
        (1, 5),
    ];
    Graph::new(6, &edges).expect("static instance")
}

pub fn path_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParams("path needs at least one vertex".into()));
    }
    let edges: Vec<(u32, u32)> = (1..n as u32).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges)
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParams(
            "cycle needs at least three vertices".into(),
        ));
    }
    let mut edges: Vec<(u32, u32)> = (1..n as u32).map(|i| (i - 1, i)).collect();
    edges.push((0, n as u32 - 1));
    Graph::new(n, &edges)
}

pub fn clique(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParams(
            "clique needs at least one vertex".into(),
        ));
    }
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges)
}

/// Hub vertex 0 adjacent to all of `1..n`.
pub fn star(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParams("star needs at least one vertex".into()));
    }
    let edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (0, v)).collect();
    Graph::new(n, &edges)
}

/// Two adjacent hubs 0 and 1 plus `m` page vertices adjacent to both.
pub fn book(m: usize) -> Result<Graph> {
    if m == 0 {
        return Err(Error::InvalidParams("book needs at least one page".into()));
    }
    let mut edges = vec![(0, 1)];
    for p in 0..m as u32 {
        edges.push((0, p + 2));
        edges.push((1, p + 2));
    }
    Graph::new(m + 2, &edges)
}

pub fn edgeless(n: usize) -> Result<Graph> {
    Graph::new(n, &[])
}

/// Deterministic construction of a named family at the given size.
pub fn named_instance(name: &str, size: usize) -> Result<Graph> {
    match name {
        "wheel6" => {
            if size != 6 {
                return Err(Error::InvalidParams("wheel6 has exactly 6 vertices".into()));
            }
            Ok(wheel6())
        }
        "path" => path_graph(size),
        "cycle" => cycle_graph(size),
        "clique" => clique(size),
        "star" => star(size),
        "book" => book(size),
        "edgeless" => edgeless(size),
        other => Err(Error::InvalidParams(format!("unknown family '{other}'"))),
    }
}

/// Seeded Erdos-Renyi style sampling: each pair becomes an edge with
/// probability `p`, decided in lexicographic pair order.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams(format!(
            "edge probability must lie in [0,1], got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges)
}

/// Relabels vertices by a seeded uniform permutation. Returns the relabeled
/// graph and the permutation `pi`, where `pi[old] = new`.
pub fn permute_graph(g: &Graph, seed: u64) -> (Graph, Vec<u32>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pi: Vec<u32> = (0..g.n() as u32).collect();
    pi.shuffle(&mut rng);
    let edges: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .map(|&(a, b)| (pi[a as usize], pi[b as usize]))
        .collect();
    (
        Graph::new(g.n(), &edges).expect("permutation preserves validity"),
        pi,
    )
}

/// Samples a non-covering deletion set for the band line: the size is drawn
/// uniformly from `[k-1, q]`, members without replacement, resampling until
/// the cover predicate accepts. Returns the set and how many retries it took.
pub fn sample_non_covering_set(
    total: usize,
    k: usize,
    q: usize,
    seed: u64,
    max_retries: usize,
) -> Result<(VertexSet, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = k.saturating_sub(1);
    for retry in 0..max_retries {
        let size = rng.random_range(lo..=q);
        let mut pool: Vec<u32> = (0..total as u32).collect();
        pool.shuffle(&mut rng);
        pool.truncate(size);
        let s = VertexSet::new(pool);
        if covers_no_short_interval(&s, k, total) {
            return Ok((s, retry));
        }
    }
    Err(Error::InvalidParams(format!(
        "no non-covering set found within {max_retries} retries"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_3_3_3_has_27_vertices_and_75_edges() {
        let p = BandParams::new(3, 3, 3).unwrap();
        let g = band_graph(&p);
        assert_eq!(g.n(), 27);
        // Direct count matches the closed form k*N - k(k+1)/2.
        assert_eq!(g.edge_count(), 3 * 27 - 3 * 4 / 2);
        assert_eq!(g.edge_count(), 75);
    }

    #[test]
    fn band_3_3_3_parameters() {
        let p = BandParams::new(3, 3, 3).unwrap();
        let g = band_graph(&p);
        assert_eq!(g.max_degree(), 6);
        assert_eq!(g.kappa_max().unwrap(), 4);
    }

    #[test]
    fn band_minus_drops_exactly_one_edge() {
        let p = BandParams::new(3, 3, 3).unwrap();
        let g = band_graph_minus(&p);
        assert_eq!(g.edge_count(), 74);
        assert!(!g.has_edge(0, 3));
        assert_eq!(g.max_degree(), 6);
        assert_eq!(g.kappa_max().unwrap(), 4);
    }

    #[test]
    fn invalid_band_params_rejected() {
        assert!(BandParams::new(3, 3, 2).is_err());
        assert!(BandParams::new(2, 3, 3).is_err());
        assert!(BandParams::new(3, 4, 3).is_err());
    }

    #[test]
    fn cover_predicate_cases() {
        let total = 9;
        assert!(covers_no_short_interval(
            &VertexSet::new(vec![0, 3, 6]),
            3,
            total
        ));
        assert!(!covers_no_short_interval(
            &VertexSet::new(vec![3, 4]),
            3,
            total
        ));
        assert!(covers_no_short_interval(&VertexSet::empty(), 3, total));
    }

    #[test]
    fn wheel6_shape() {
        let g = wheel6();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 10);
        assert_eq!(g.max_degree(), 5);
        assert_eq!(g.kappa_max().unwrap(), 3);
    }

    #[test]
    fn book_kappa_is_page_count() {
        let g = book(6).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.kappa_pair(0, 1).unwrap(), 6);
        assert_eq!(g.kappa_max().unwrap(), 6);
    }

    #[test]
    fn named_instances() {
        assert_eq!(named_instance("path", 3).unwrap().edge_count(), 2);
        assert_eq!(named_instance("edgeless", 4).unwrap().edge_count(), 0);
        assert!(named_instance("nosuch", 3).is_err());
    }

    #[test]
    fn random_graph_extremes() {
        let g0 = random_graph(5, 0.0, 7).unwrap();
        assert_eq!(g0.edge_count(), 0);
        let g1 = random_graph(5, 1.0, 7).unwrap();
        assert_eq!(g1.edge_count(), 10);
        assert!(random_graph(5, 1.5, 7).is_err());
    }

    #[test]
    fn permutation_is_reproducible() {
        let g = wheel6();
        let (p1, pi1) = permute_graph(&g, 99);
        let (p2, pi2) = permute_graph(&g, 99);
        assert_eq!(p1, p2);
        assert_eq!(pi1, pi2);
        assert_eq!(p1.edge_count(), g.edge_count());
    }
}
