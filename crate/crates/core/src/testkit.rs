//! Fixtures shared by the unit tests.

use alloc::vec::Vec;

use crate::symbol::Symbol;
use crate::workspace::Workspace;

pub fn syms(v: &[&str]) -> Vec<Symbol> {
    v.iter().map(|x| Symbol::new(x)).collect()
}

pub fn pairs(v: &[(&str, &str)]) -> Vec<(Symbol, Symbol)> {
    v.iter().map(|(a, b)| (Symbol::new(a), Symbol::new(b))).collect()
}

/// `T = {a, b}`, `I = {i1, i2}`, `B = {b1}`, `f: B -> I` with `b1 -> i1`,
/// individuals `h_xy = {i1 -> x, i2 -> y}` and `g = {a -> b, b -> b}`.
pub fn fix1() -> Workspace {
    let mut ws = Workspace::new();
    ws.declare_type("T", syms(&["a", "b"])).unwrap();
    ws.declare_world("I", syms(&["i1", "i2"])).unwrap();
    ws.declare_world("B", syms(&["b1"])).unwrap();
    ws.declare_evolvent("f", "B", "I", pairs(&[("b1", "i1")])).unwrap();
    for (n, x, y) in [("h_aa", "a", "a"), ("h_ab", "a", "b"), ("h_ba", "b", "a"), ("h_bb", "b", "b")] {
        ws.declare_individual(n, "I", "T", pairs(&[("i1", x), ("i2", y)])).unwrap();
    }
    ws.declare_func("g", "T", "T", pairs(&[("a", "b"), ("b", "b")])).unwrap();
    ws
}
