//! Learning the structure of a hidden undirected graph from
//! separation-oracle queries.
//!
//! The oracle answers independence tests `(S, u, v)`: is `u` disconnected
//! from `v` once `S` is deleted? On top of the exact, fully instrumented
//! oracle this crate provides:
//!
//! - [`naive::learn_naive`]: iterative deepening over test size; stops at
//!   the maximum pairwise connectivity of the hidden graph and never issues
//!   a larger test.
//! - [`twlearn::learn_decomposition`]: recovers an optimum-width tree
//!   decomposition with tests no larger than the treewidth.
//! - [`twlearn::learn_tw`]: decides every candidate edge with small region
//!   tests plus one combined separator test of size at most twice the
//!   maximum pairwise connectivity.
//! - [`generators`]: band graphs with certified parameters, named families,
//!   seeded random instances.
//! - [`audit`]: ground-truth replay of a decomposition-guided run, checking
//!   the guarantees the learner relies on.

pub mod audit;
mod error;
pub mod generators;
pub mod graph;
pub mod naive;
pub mod oracle;
mod subsets;
pub mod treewidth;
pub mod twlearn;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use naive::{learn_naive, supergraph_at_level, verify_size_lower_bound, LearnFailure, LearnerReport};
pub use oracle::{Budget, IndependenceTest, Oracle, OracleAnswer, OracleStats};
pub use treewidth::{
    exact_treewidth, root_decomposition, validate_decomposition, width_at_most,
    RootedDecomposition, TreeDecomposition,
};
pub use twlearn::{learn_decomposition, learn_tw, GuardSet, PairTrail, TwLearnerReport};
