//! Logic of individuals and variable concepts.
//!
//! A small higher-order language with definite descriptions, evaluated over
//! finite *worlds* (index sets) connected by *evolvents* `f: B -> I`. The
//! individuals of a type `T` at a world `I` form the variable domain
//! `H_T(I)`, a contravariant functor acting by precomposition `h |-> h . f`.
//! Formulas comprehend concepts: materialized extensions that serve as
//! database snapshots (one index) and views (the whole index family).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, scripts and the
//! command line live in the `vcsh` crate.

#![no_std]

extern crate alloc;

pub mod concepts;
pub mod error;
pub mod eval;
pub mod symbol;
pub mod syntax;
pub mod typing;
pub mod workspace;
pub mod worlds;

#[cfg(test)]
mod testkit;

pub use concepts::{Concept, FConcept, IndexedConcept, VariableConcept};
pub use error::{Error, Result};
pub use eval::{Denotation, Environment, Evaluator, SetVal};
pub use symbol::Symbol;
pub use syntax::{Formula, ObjectTerm, SortExpr};
pub use workspace::Workspace;
pub use worlds::{Evolvent, Individual, VariableDomain, World};

/// Default upper bound on the size of any enumerated domain.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;
