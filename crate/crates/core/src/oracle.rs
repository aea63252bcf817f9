//! Conditional-independence oracles with full query instrumentation.
//!
//! An oracle answers tests `(S, u, v)`: is `u` disconnected from `v` once
//! `S` is deleted? The exact oracle answers from a ground-truth graph; the
//! adversary answers `Connected` to everything. Both count queries the same
//! way: repeated identical tests (with `{u,v}` unordered) are counted once
//! as distinct tests and separately as raw calls, because all learner
//! guarantees are stated over distinct tests.

use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};
use std::collections::{BTreeMap, HashMap, HashSet};

/// A query triple `(S, u, v)`; its size is `|S|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceTest {
    s: VertexSet,
    u: u32,
    v: u32,
}

impl IndependenceTest {
    pub fn new(s: VertexSet, u: u32, v: u32) -> Result<Self> {
        if u == v {
            return Err(Error::InvalidTest(format!("endpoints coincide ({u})")));
        }
        if s.contains(u) || s.contains(v) {
            return Err(Error::InvalidTest(format!(
                "endpoint inside conditioning set {s}"
            )));
        }
        Ok(IndependenceTest { s, u, v })
    }

    pub fn conditioning_set(&self) -> &VertexSet {
        &self.s
    }

    pub fn endpoints(&self) -> (u32, u32) {
        (self.u, self.v)
    }

    pub fn size(&self) -> usize {
        self.s.len()
    }
}

/// The oracle's two-valued answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleAnswer {
    Connected,
    Disconnected,
}

/// Optional hard limits, enforced before a query is evaluated.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_test_size: Option<usize>,
    pub max_test_count: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn size_limit(limit: usize) -> Self {
        Budget {
            max_test_size: Some(limit),
            max_test_count: None,
        }
    }

    pub fn count_limit(limit: u64) -> Self {
        Budget {
            max_test_size: None,
            max_test_count: Some(limit),
        }
    }
}

/// Per-bucket tally: how many distinct tests a caller-declared phase issued
/// and the largest one.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BucketStats {
    pub count: u64,
    pub max_size: usize,
}

/// Query counters. `total_tests` counts distinct tests; `raw_calls` also
/// counts repeats. A distinct test is tallied in the bucket that first
/// issued it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleStats {
    pub total_tests: u64,
    pub raw_calls: u64,
    pub max_size_seen: usize,
    pub per_size_counts: BTreeMap<usize, u64>,
    pub per_bucket_counts: BTreeMap<String, BucketStats>,
}

impl OracleStats {
    pub fn bucket(&self, label: &str) -> BucketStats {
        self.per_bucket_counts
            .get(label)
            .copied()
            .unwrap_or_default()
    }

    /// Largest test size over every bucket except the named one.
    pub fn max_size_outside(&self, label: &str) -> usize {
        self.per_bucket_counts
            .iter()
            .filter(|(name, _)| name.as_str() != label)
            .map(|(_, b)| b.max_size)
            .max()
            .unwrap_or(0)
    }
}

enum OracleKind {
    Exact(Graph),
    Adversary,
}

/// Dedup store for distinct tests. Graphs with at most 64 vertices use a
/// bitmask per conditioning set keyed by the endpoint pair.
enum SeenTests {
    Mask(HashMap<u32, HashSet<u64>>),
    General(HashSet<(u32, u32, Vec<u32>)>),
}

impl SeenTests {
    fn new(universe: usize) -> Self {
        if universe <= 64 {
            SeenTests::Mask(HashMap::new())
        } else {
            SeenTests::General(HashSet::new())
        }
    }

    fn contains(&self, s: &[u32], a: u32, b: u32) -> bool {
        match self {
            SeenTests::Mask(map) => {
                let mask = s.iter().fold(0u64, |m, &v| m | (1u64 << v));
                map.get(&(a << 16 | b))
                    .is_some_and(|set| set.contains(&mask))
            }
            SeenTests::General(set) => set.contains(&(a, b, s.to_vec())),
        }
    }

    fn insert(&mut self, s: &[u32], a: u32, b: u32) {
        match self {
            SeenTests::Mask(map) => {
                let mask = s.iter().fold(0u64, |m, &v| m | (1u64 << v));
                map.entry(a << 16 | b).or_default().insert(mask);
            }
            SeenTests::General(set) => {
                set.insert((a, b, s.to_vec()));
            }
        }
    }
}

/// Single-owner oracle: one learner mutates it at a time.
pub struct Oracle {
    kind: OracleKind,
    universe: usize,
    budget: Budget,
    stats: OracleStats,
    seen: SeenTests,
}

impl Oracle {
    /// Exact oracle whose answers equal ground-truth separation on `g`.
    pub fn exact(g: Graph, budget: Budget) -> Self {
        let universe = g.n();
        Oracle {
            kind: OracleKind::Exact(g),
            universe,
            budget,
            stats: OracleStats::default(),
            seen: SeenTests::new(universe),
        }
    }

    /// Adversary over vertex universe `0..n` answering `Connected` to every
    /// well-formed test.
    pub fn adversary(n: usize) -> Self {
        Oracle {
            kind: OracleKind::Adversary,
            universe: n,
            budget: Budget::unlimited(),
            stats: OracleStats::default(),
            seen: SeenTests::new(n),
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    /// Number of vertices in the oracle's universe. This is all a learner
    /// may know about the hidden graph.
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Issues a test. `s` must be sorted and duplicate-free; `bucket` names
    /// the caller's phase for the per-bucket tallies.
    pub fn query(&mut self, s: &[u32], u: u32, v: u32, bucket: &str) -> Result<OracleAnswer> {
        debug_assert!(s.windows(2).all(|w| w[0] < w[1]));
        if u == v {
            return Err(Error::InvalidTest(format!("endpoints coincide ({u})")));
        }
        for &w in s.iter().chain([u, v].iter()) {
            if w as usize >= self.universe {
                return Err(Error::InvalidVertex {
                    vertex: w,
                    n: self.universe,
                });
            }
        }
        if s.binary_search(&u).is_ok() || s.binary_search(&v).is_ok() {
            return Err(Error::InvalidTest(
                "endpoint inside conditioning set".into(),
            ));
        }
        let size = s.len();
        if let Some(limit) = self.budget.max_test_size {
            if size > limit {
                return Err(Error::BudgetExceededSize { size, limit });
            }
        }
        let (a, b) = (u.min(v), u.max(v));
        if self.seen.contains(s, a, b) {
            self.stats.raw_calls += 1;
            return self.answer(s, u, v);
        }
        if let Some(limit) = self.budget.max_test_count {
            if self.stats.total_tests + 1 > limit {
                return Err(Error::BudgetExceededCount { limit });
            }
        }
        self.seen.insert(s, a, b);
        self.stats.total_tests += 1;
        self.stats.raw_calls += 1;
        self.stats.max_size_seen = self.stats.max_size_seen.max(size);
        *self.stats.per_size_counts.entry(size).or_insert(0) += 1;
        let entry = self
            .stats
            .per_bucket_counts
            .entry(bucket.to_string())
            .or_default();
        entry.count += 1;
        entry.max_size = entry.max_size.max(size);
        self.answer(s, u, v)
    }

    /// `query` for a prebuilt test value.
    pub fn query_test(&mut self, test: &IndependenceTest, bucket: &str) -> Result<OracleAnswer> {
        let (u, v) = test.endpoints();
        self.query(test.conditioning_set(), u, v, bucket)
    }

    fn answer(&self, s: &[u32], u: u32, v: u32) -> Result<OracleAnswer> {
        match &self.kind {
            OracleKind::Adversary => Ok(OracleAnswer::Connected),
            OracleKind::Exact(g) => {
                let fast = if g.n() <= 64 {
                    let mask = s.iter().fold(0u64, |m, &w| m | (1u64 << w));
                    g.separated_by_mask(mask, u, v)
                } else {
                    None
                };
                let separated = match fast {
                    Some(sep) => sep,
                    None => g.is_separated(&VertexSet::from_sorted_slice(s), u, v)?,
                };
                Ok(if separated {
                    OracleAnswer::Disconnected
                } else {
                    OracleAnswer::Connected
                })
            }
        }
    }

    /// Copy of the current counters; does not reset.
    pub fn snapshot_stats(&self) -> OracleStats {
        self.stats.clone()
    }

    pub fn stats(&self) -> &OracleStats {
        &self.stats
    }
}
