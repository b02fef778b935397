use alloc::string::String;
use alloc::vec::Vec;

use crate::symbol::Symbol;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at offset {position}: expected {}, found {found}", expected.join(" | "))]
    Syntax {
        position: usize,
        expected: Vec<&'static str>,
        found: String,
    },

    #[error("cannot compose {outer} after {inner}: {inner} lands in world {inner_target}, {outer} starts from world {outer_source}")]
    CompositionMismatch {
        outer: Symbol,
        inner: Symbol,
        inner_target: Symbol,
        outer_source: Symbol,
    },

    #[error("world mismatch: expected world {expected}, found world {found}")]
    WorldMismatch { expected: Symbol, found: Symbol },

    #[error("enumeration of {what} would produce {cardinality} members (cap {cap})")]
    EnumerationCapExceeded {
        what: String,
        cardinality: u128,
        cap: u64,
    },

    #[error("index {index} is not an index of world {world}")]
    UnknownIndex { world: Symbol, index: Symbol },

    #[error("unbound variable {0}")]
    UnboundVariable(Symbol),

    #[error("unknown constant {0}")]
    UnknownConstant(Symbol),

    #[error("sort mismatch: {0}")]
    SortMismatch(String),

    #[error("world {to} is reachable from world {from} along {routes} evolvents; constants over {to} cannot be read at {from}")]
    UnresolvedWorld { from: Symbol, to: Symbol, routes: usize },

    #[error("improper description: no {var} satisfies the body")]
    NoWitness { var: Symbol },

    #[error("improper description: {count} values of {var} satisfy the body")]
    NonUnique { var: Symbol, count: usize },

    #[error("{namespace} {name} is already declared")]
    NameClash { namespace: &'static str, name: Symbol },

    #[error("unknown {kind} {name}")]
    UnknownReference { kind: &'static str, name: Symbol },

    #[error("invalid declaration of {name}: {reason}")]
    InvalidDeclaration { name: Symbol, reason: String },

    #[error("unknown entity {0}")]
    UnknownEntity(String),
}

impl Error {
    pub(crate) fn sort(msg: impl Into<String>) -> Self {
        Error::SortMismatch(msg.into())
    }

    pub(crate) fn unknown(kind: &'static str, name: &Symbol) -> Self {
        Error::UnknownReference {
            kind,
            name: name.clone(),
        }
    }

    pub(crate) fn invalid(name: &Symbol, reason: impl Into<String>) -> Self {
        Error::InvalidDeclaration {
            name: name.clone(),
            reason: reason.into(),
        }
    }
}
