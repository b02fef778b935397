//! Object language: sorts, object terms and formulas, with a parser, a
//! printer, free variables and capture-avoiding substitution.

mod ast;
mod lexer;
mod parser;
mod print;
mod subst;

pub use ast::{Formula, ObjectTerm, SortExpr};
pub use parser::{parse_formula, parse_formula_with, parse_object, parse_object_with, parse_sort};
pub use subst::{alpha_eq, alpha_eq_object, fresh_name, substitute, substitute_object};

/// True when a free identifier is read as a variable rather than a constant:
/// one letter from `u` to `z`, optionally followed by digits or primes
/// (`x`, `y1`, `z'`). Identifiers bound by a quantifier or description are
/// variables regardless of their spelling.
pub fn is_variable_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some('u'..='z') => chars.all(|c| c.is_ascii_digit() || c == '\''),
        _ => false,
    }
}

/// Words that cannot be used as identifiers.
pub const KEYWORDS: &[&str] = &["false", "forall", "exists", "the", "in"];

pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    let head_ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_');
    head_ok
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && !KEYWORDS.contains(&name)
}
