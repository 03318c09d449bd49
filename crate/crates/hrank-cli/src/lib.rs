//! Corpus generation, verification runs, and report serialization behind
//! the `hrank` binary.

pub mod corpus;
pub mod report;
pub mod verify;
