//! Exact computations on mixed graphs: Hermitian adjacency rank, matching
//! invariants, cycle structure, and the rank-formula checkers built on them.

pub mod algebra;
pub mod canon;
pub mod checkers;
pub mod crucial;
pub mod error;
pub mod gaussian;
pub mod graph;
pub mod int;
pub mod matching;
pub mod mg1;
pub mod oracle;
pub mod sachs;

pub use error::{Budgets, Error};
