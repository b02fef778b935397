//! Fixtures as plain data, so the library workspace and the reference model
//! are built from the same declarations by independent code.

use vc_core::syntax::{parse_formula_with, parse_sort};
use vc_core::{Symbol, Workspace};

/// name, source, target, graph
pub type Map = (&'static str, &'static str, &'static str, Vec<(&'static str, &'static str)>);

pub struct Decls {
    pub types: Vec<(&'static str, Vec<&'static str>)>,
    pub worlds: Vec<(&'static str, Vec<&'static str>)>,
    pub evolvents: Vec<Map>,
    pub funcs: Vec<Map>,
    pub individuals: Vec<Map>,
    /// name, variable, sort, world, formula
    pub concepts: Vec<(&'static str, &'static str, &'static str, &'static str, &'static str)>,
}

fn h(name: &'static str, x: &'static str, y: &'static str) -> Map {
    (name, "I", "T", vec![("i1", x), ("i2", y)])
}

/// T = {a, b}; I = {i1, i2}; B = {b1}; f: B -> I, b1 -> i1; h_xy; g.
pub fn fix1() -> Decls {
    Decls {
        types: vec![("T", vec!["a", "b"])],
        worlds: vec![("I", vec!["i1", "i2"]), ("B", vec!["b1"])],
        evolvents: vec![("f", "B", "I", vec![("b1", "i1")])],
        funcs: vec![("g", "T", "T", vec![("a", "b"), ("b", "b")])],
        individuals: vec![h("h_aa", "a", "a"), h("h_ab", "a", "b"), h("h_ba", "b", "a"), h("h_bb", "b", "b")],
        concepts: vec![],
    }
}

/// FIX1 with the concept `K := x = h_ab | x = h_ba` used by the corpus.
pub fn fix1_k() -> Decls {
    let mut s = fix1();
    s.concepts.push(("K", "x", "(I -> T)", "I", "x = h_ab | x = h_ba"));
    s
}

/// FIX1 plus `C = {c1, c2}` with `gC: C -> B` (so `f . gC: C -> I`), and
/// `B2 = {b1, b2}` with the non-injective `f2: B2 -> I`.
pub fn extended() -> Decls {
    let mut s = fix1_k();
    s.worlds.push(("C", vec!["c1", "c2"]));
    s.worlds.push(("B2", vec!["b1", "b2"]));
    s.evolvents.push(("gC", "C", "B", vec![("c1", "b1"), ("c2", "b1")]));
    s.evolvents.push(("f2", "B2", "I", vec![("b1", "i1"), ("b2", "i1")]));
    s
}

fn syms(v: &[&str]) -> Vec<Symbol> {
    v.iter().map(|x| Symbol::new(x)).collect()
}

fn pairs(v: &[(&str, &str)]) -> Vec<(Symbol, Symbol)> {
    v.iter().map(|(a, b)| (Symbol::new(a), Symbol::new(b))).collect()
}

pub fn workspace(decls: &Decls) -> Workspace {
    let mut ws = Workspace::new();
    for (n, els) in &decls.types {
        ws.declare_type(*n, syms(els)).unwrap();
    }
    for (n, idx) in &decls.worlds {
        ws.declare_world(*n, syms(idx)).unwrap();
    }
    for (n, s, t, m) in &decls.evolvents {
        ws.declare_evolvent(*n, s, t, pairs(m)).unwrap();
    }
    for (n, d, c, m) in &decls.funcs {
        ws.declare_func(*n, d, c, pairs(m)).unwrap();
    }
    for (n, w, t, m) in &decls.individuals {
        ws.declare_individual(*n, w, t, pairs(m)).unwrap();
    }
    for (n, x, sort, w, text) in &decls.concepts {
        let phi = parse_formula_with(text, &[Symbol::new(x)]).unwrap();
        ws.define_concept(*n, *x, parse_sort(sort).unwrap(), w, phi).unwrap();
    }
    ws
}
