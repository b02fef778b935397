//! Shared test support: fixtures, a brute-force reference evaluator, the
//! exhaustive formula corpus and proptest generators.
#![allow(dead_code)]

pub mod corpus;
pub mod fixtures;
pub mod gen;
pub mod oracle;
