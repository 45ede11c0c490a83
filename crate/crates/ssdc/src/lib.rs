//! Exact solvers for subset sum under digraph constraints.
//!
//! Items have positive sizes and a capacity bounds the total. A digraph on
//! the items adds one of two closure rules to the plain capacity bound:
//! choosing any in-neighbor of a vertex forces that vertex, or choosing all
//! of a nonempty in-neighborhood forces it. On directed co-graphs and
//! minimal series-parallel digraphs both variants are solved exactly by
//! dynamic programming over the defining expression; explicit digraphs are
//! handled through decomposition, contraction of strong components, or
//! brute force over small component sets.

pub mod bits;
pub mod cli;
pub mod digraph;
pub mod expr;
pub mod gen;
pub mod instance;
pub mod oracle;
pub mod solve;
pub mod ssg;
pub mod ssgw;
pub mod ssp;
