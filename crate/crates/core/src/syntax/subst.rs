use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::ast::{Formula, ObjectTerm};
use crate::symbol::Symbol;

pub(crate) fn collect_object(t: &ObjectTerm, bound: &mut Vec<Symbol>, out: &mut BTreeSet<Symbol>) {
    match t {
        ObjectTerm::Var(v) => {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        }
        ObjectTerm::Const(_) => {}
        ObjectTerm::FuncApp(_, a) => collect_object(a, bound, out),
        ObjectTerm::Pair(l, r) | ObjectTerm::Apply(l, r) => {
            collect_object(l, bound, out);
            collect_object(r, bound, out);
        }
        ObjectTerm::Description(v, _, body) => {
            bound.push(v.clone());
            collect_formula(body, bound, out);
            bound.pop();
        }
    }
}

pub(crate) fn collect_formula(f: &Formula, bound: &mut Vec<Symbol>, out: &mut BTreeSet<Symbol>) {
    match f {
        Formula::Falsum => {}
        Formula::Equation(l, r) | Formula::Membership(l, r) => {
            collect_object(l, bound, out);
            collect_object(r, bound, out);
        }
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            collect_formula(l, bound, out);
            collect_formula(r, bound, out);
        }
        Formula::Forall(v, _, body) | Formula::Exists(v, _, body) => {
            bound.push(v.clone());
            collect_formula(body, bound, out);
            bound.pop();
        }
    }
}

fn names_object(t: &ObjectTerm, out: &mut BTreeSet<Symbol>) {
    match t {
        ObjectTerm::Var(v) => {
            out.insert(v.clone());
        }
        ObjectTerm::Const(_) => {}
        ObjectTerm::FuncApp(_, a) => names_object(a, out),
        ObjectTerm::Pair(l, r) | ObjectTerm::Apply(l, r) => {
            names_object(l, out);
            names_object(r, out);
        }
        ObjectTerm::Description(v, _, body) => {
            out.insert(v.clone());
            names_formula(body, out);
        }
    }
}

fn names_formula(f: &Formula, out: &mut BTreeSet<Symbol>) {
    match f {
        Formula::Falsum => {}
        Formula::Equation(l, r) | Formula::Membership(l, r) => {
            names_object(l, out);
            names_object(r, out);
        }
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            names_formula(l, out);
            names_formula(r, out);
        }
        Formula::Forall(v, _, body) | Formula::Exists(v, _, body) => {
            out.insert(v.clone());
            names_formula(body, out);
        }
    }
}

/// Primes `base` until the result is not in `avoid`.
pub fn fresh_name(base: &Symbol, avoid: &BTreeSet<Symbol>) -> Symbol {
    let mut name = String::from(base.as_str());
    loop {
        name.push('\'');
        let candidate = Symbol::new(&name);
        if !avoid.contains(&candidate) {
            return candidate;
        }
    }
}

/// Capture-avoiding substitution `[replacement/var] f`.
pub fn substitute(f: &Formula, var: &Symbol, replacement: &ObjectTerm) -> Formula {
    let fv = replacement.free_vars();
    subst_formula(f, var, replacement, &fv)
}

pub fn substitute_object(t: &ObjectTerm, var: &Symbol, replacement: &ObjectTerm) -> ObjectTerm {
    let fv = replacement.free_vars();
    subst_object(t, var, replacement, &fv)
}

/// Renames the binder `v` of `body` away from `fv` when substituting would
/// capture one of the replacement's free variables.
fn open_binder(
    v: &Symbol,
    body: &Formula,
    var: &Symbol,
    fv: &BTreeSet<Symbol>,
) -> (Symbol, Formula) {
    if !fv.contains(v) {
        return (v.clone(), body.clone());
    }
    let mut avoid = fv.clone();
    names_formula(body, &mut avoid);
    avoid.insert(var.clone());
    let fresh = fresh_name(v, &avoid);
    let renamed = substitute(body, v, &ObjectTerm::Var(fresh.clone()));
    (fresh, renamed)
}

fn subst_formula(f: &Formula, var: &Symbol, rep: &ObjectTerm, fv: &BTreeSet<Symbol>) -> Formula {
    match f {
        Formula::Falsum => Formula::Falsum,
        Formula::Equation(l, r) => {
            Formula::Equation(subst_object(l, var, rep, fv), subst_object(r, var, rep, fv))
        }
        Formula::Membership(l, r) => {
            Formula::Membership(subst_object(l, var, rep, fv), subst_object(r, var, rep, fv))
        }
        Formula::And(l, r) => Formula::and(subst_formula(l, var, rep, fv), subst_formula(r, var, rep, fv)),
        Formula::Or(l, r) => Formula::or(subst_formula(l, var, rep, fv), subst_formula(r, var, rep, fv)),
        Formula::Implies(l, r) => {
            Formula::implies(subst_formula(l, var, rep, fv), subst_formula(r, var, rep, fv))
        }
        Formula::Forall(v, s, body) | Formula::Exists(v, s, body) => {
            if v == var || !body.free_vars().contains(var) {
                return f.clone();
            }
            let (v2, body2) = open_binder(v, body, var, fv);
            let body3 = Box::new(subst_formula(&body2, var, rep, fv));
            match f {
                Formula::Forall(..) => Formula::Forall(v2, s.clone(), body3),
                _ => Formula::Exists(v2, s.clone(), body3),
            }
        }
    }
}

fn subst_object(t: &ObjectTerm, var: &Symbol, rep: &ObjectTerm, fv: &BTreeSet<Symbol>) -> ObjectTerm {
    match t {
        ObjectTerm::Var(v) if v == var => rep.clone(),
        ObjectTerm::Var(_) | ObjectTerm::Const(_) => t.clone(),
        ObjectTerm::FuncApp(g, a) => ObjectTerm::FuncApp(g.clone(), Box::new(subst_object(a, var, rep, fv))),
        ObjectTerm::Pair(l, r) => ObjectTerm::pair(subst_object(l, var, rep, fv), subst_object(r, var, rep, fv)),
        ObjectTerm::Apply(l, r) => ObjectTerm::apply(subst_object(l, var, rep, fv), subst_object(r, var, rep, fv)),
        ObjectTerm::Description(v, s, body) => {
            if v == var || !body.free_vars().contains(var) {
                return t.clone();
            }
            let (v2, body2) = open_binder(v, body, var, fv);
            ObjectTerm::Description(v2, s.clone(), Box::new(subst_formula(&body2, var, rep, fv)))
        }
    }
}

/// Renames every binder whose name lies in `avoid`, so bound names end up
/// distinct from the free ones.
pub(crate) fn freshen_formula(f: &Formula, avoid: &BTreeSet<Symbol>) -> Formula {
    match f {
        Formula::Falsum => Formula::Falsum,
        Formula::Equation(l, r) => Formula::Equation(freshen_object(l, avoid), freshen_object(r, avoid)),
        Formula::Membership(l, r) => Formula::Membership(freshen_object(l, avoid), freshen_object(r, avoid)),
        Formula::And(l, r) => Formula::and(freshen_formula(l, avoid), freshen_formula(r, avoid)),
        Formula::Or(l, r) => Formula::or(freshen_formula(l, avoid), freshen_formula(r, avoid)),
        Formula::Implies(l, r) => Formula::implies(freshen_formula(l, avoid), freshen_formula(r, avoid)),
        Formula::Forall(v, s, body) | Formula::Exists(v, s, body) => {
            let (v2, body2) = rename_if_clashing(v, body, avoid);
            let body3 = Box::new(freshen_formula(&body2, avoid));
            match f {
                Formula::Forall(..) => Formula::Forall(v2, s.clone(), body3),
                _ => Formula::Exists(v2, s.clone(), body3),
            }
        }
    }
}

pub(crate) fn freshen_object(t: &ObjectTerm, avoid: &BTreeSet<Symbol>) -> ObjectTerm {
    match t {
        ObjectTerm::Var(_) | ObjectTerm::Const(_) => t.clone(),
        ObjectTerm::FuncApp(g, a) => ObjectTerm::FuncApp(g.clone(), Box::new(freshen_object(a, avoid))),
        ObjectTerm::Pair(l, r) => ObjectTerm::pair(freshen_object(l, avoid), freshen_object(r, avoid)),
        ObjectTerm::Apply(l, r) => ObjectTerm::apply(freshen_object(l, avoid), freshen_object(r, avoid)),
        ObjectTerm::Description(v, s, body) => {
            let (v2, body2) = rename_if_clashing(v, body, avoid);
            ObjectTerm::Description(v2, s.clone(), Box::new(freshen_formula(&body2, avoid)))
        }
    }
}

fn rename_if_clashing(v: &Symbol, body: &Formula, avoid: &BTreeSet<Symbol>) -> (Symbol, Formula) {
    if !avoid.contains(v) {
        return (v.clone(), body.clone());
    }
    let mut taken = avoid.clone();
    names_formula(body, &mut taken);
    let fresh = fresh_name(v, &taken);
    let renamed = substitute(body, v, &ObjectTerm::Var(fresh.clone()));
    (fresh, renamed)
}

/// Structural equality up to renaming of bound variables.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    formula_eq(a, b, &mut Vec::new())
}

pub fn alpha_eq_object(a: &ObjectTerm, b: &ObjectTerm) -> bool {
    object_eq(a, b, &mut Vec::new())
}

fn lookup(stack: &[(Symbol, Symbol)], v: &Symbol, left: bool) -> Option<usize> {
    stack
        .iter()
        .rposition(|(l, r)| if left { l == v } else { r == v })
}

fn object_eq(a: &ObjectTerm, b: &ObjectTerm, stack: &mut Vec<(Symbol, Symbol)>) -> bool {
    match (a, b) {
        (ObjectTerm::Var(x), ObjectTerm::Var(y)) => {
            match (lookup(stack, x, true), lookup(stack, y, false)) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            }
        }
        (ObjectTerm::Const(x), ObjectTerm::Const(y)) => x == y,
        (ObjectTerm::FuncApp(g, x), ObjectTerm::FuncApp(h, y)) => g == h && object_eq(x, y, stack),
        (ObjectTerm::Pair(a1, a2), ObjectTerm::Pair(b1, b2))
        | (ObjectTerm::Apply(a1, a2), ObjectTerm::Apply(b1, b2)) => {
            object_eq(a1, b1, stack) && object_eq(a2, b2, stack)
        }
        (ObjectTerm::Description(x, s, f), ObjectTerm::Description(y, t, g)) => {
            s == t && {
                stack.push((x.clone(), y.clone()));
                let r = formula_eq(f, g, stack);
                stack.pop();
                r
            }
        }
        _ => false,
    }
}

fn formula_eq(a: &Formula, b: &Formula, stack: &mut Vec<(Symbol, Symbol)>) -> bool {
    match (a, b) {
        (Formula::Falsum, Formula::Falsum) => true,
        (Formula::Equation(a1, a2), Formula::Equation(b1, b2))
        | (Formula::Membership(a1, a2), Formula::Membership(b1, b2)) => {
            object_eq(a1, b1, stack) && object_eq(a2, b2, stack)
        }
        (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::Implies(a1, a2), Formula::Implies(b1, b2)) => {
            formula_eq(a1, b1, stack) && formula_eq(a2, b2, stack)
        }
        (Formula::Forall(x, s, f), Formula::Forall(y, t, g))
        | (Formula::Exists(x, s, f), Formula::Exists(y, t, g)) => {
            s == t && {
                stack.push((x.clone(), y.clone()));
                let r = formula_eq(f, g, stack);
                stack.pop();
                r
            }
        }
        _ => false,
    }
}
