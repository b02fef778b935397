//! Exhaustive formula corpus: every formula of depth at most 3 built from a
//! fixed atom pool with `&`, `|`, `=>` and the quantifier forms below. Depth
//! 3 caps the binder count at 2.

use vc_core::syntax::parse_formula_with;
use vc_core::{Formula, SortExpr, Symbol};

/// Atoms over the variables `x`, `y` (individuals) and `z` (a set of
/// individuals), against the FIX1 constants and the concept `K`.
pub const ATOMS: &[&str] = &["false", "h_ab = h_aa", "x = h_ab", "g(x) = y", "x in K", "x = y", "x in z"];

pub fn atoms() -> Vec<Formula> {
    let vars = [Symbol::new("x"), Symbol::new("y"), Symbol::new("z")];
    ATOMS.iter().map(|a| parse_formula_with(a, &vars).unwrap()).collect()
}

pub fn quantifiers() -> Vec<(bool, &'static str, SortExpr)> {
    let ind = SortExpr::arrow("I", SortExpr::base("T"));
    vec![
        (true, "x", ind.clone()),
        (false, "x", ind.clone()),
        (true, "y", ind.clone()),
        (false, "y", ind.clone()),
        (true, "z", SortExpr::power(ind.clone())),
        (false, "z", SortExpr::power(ind)),
    ]
}

/// Formulas one level deeper than the layer `all[start..]`.
fn grow(all: &[Formula], start: usize, quantifiers: &[(bool, &str, SortExpr)]) -> Vec<Formula> {
    let mut out = Vec::new();
    for (a, l) in all.iter().enumerate() {
        for (b, r) in all.iter().enumerate() {
            // At least one operand from the newest layer, so every formula
            // is produced exactly once.
            if a < start && b < start {
                continue;
            }
            out.push(Formula::and(l.clone(), r.clone()));
            out.push(Formula::or(l.clone(), r.clone()));
            out.push(Formula::implies(l.clone(), r.clone()));
        }
    }
    for f in &all[start..] {
        for (universal, v, s) in quantifiers {
            let s = s.clone();
            out.push(if *universal { Formula::forall(v, s, f.clone()) } else { Formula::exists(v, s, f.clone()) });
        }
    }
    out
}

/// All formulas of depth at most `depth`.
pub fn all(depth: usize) -> Vec<Formula> {
    build(atoms(), &quantifiers(), depth)
}

fn build(atoms: Vec<Formula>, quantifiers: &[(bool, &str, SortExpr)], depth: usize) -> Vec<Formula> {
    let mut everything = atoms;
    let mut start = 0;
    for _ in 1..depth {
        let next = grow(&everything, start, quantifiers);
        start = everything.len();
        everything.extend(next);
    }
    everything
}

/// Corpus formulas whose free variables are individuals (`z` bound).
pub fn corpus(depth: usize) -> Vec<Formula> {
    let z = Symbol::new("z");
    all(depth).into_iter().filter(|f| !f.free_vars().contains(&z)).collect()
}

/// Atoms over an element-valued `x` and a bound element `y`, for the
/// substitution lemma.
pub const ELEMENT_ATOMS: &[&str] = &["false", "x = a", "g(x) = x", "x = y", "g(y) = b"];

/// Formulas of depth at most `depth` over [`ELEMENT_ATOMS`] with `y : T`
/// binders, keeping those whose only free variable is `x`.
pub fn element_corpus(depth: usize) -> Vec<Formula> {
    let vars = [Symbol::new("x"), Symbol::new("y")];
    let atoms = ELEMENT_ATOMS.iter().map(|a| parse_formula_with(a, &vars).unwrap()).collect();
    let t = SortExpr::base("T");
    let qs = [(true, "y", t.clone()), (false, "y", t)];
    let y = Symbol::new("y");
    build(atoms, &qs, depth).into_iter().filter(|f| !f.free_vars().contains(&y)).collect()
}
