//! proptest strategies for sorts, object terms and formulas.
//!
//! Name pools are disjoint so that printing cannot change how a name reads
//! back: free variables are spelled like variables, constants and function
//! names are not, and binders draw from their own pool.

use proptest::prelude::*;
use vc_core::{Formula, ObjectTerm, SortExpr, Symbol};

pub const FREE_VARS: &[&str] = &["x", "y", "z", "u1"];
pub const BINDERS: &[&str] = &["x", "y", "h", "k", "v'"];
pub const CONSTS: &[&str] = &["h_ab", "K", "a", "i2"];
pub const FUNCS: &[&str] = &["g", "succ"];

fn pick(pool: &'static [&'static str]) -> impl Strategy<Value = Symbol> {
    prop::sample::select(pool).prop_map(Symbol::new)
}

pub fn sort() -> impl Strategy<Value = SortExpr> {
    let leaf = prop_oneof![Just(SortExpr::base("T")), Just(SortExpr::base("I"))];
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(SortExpr::power),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| SortExpr::product(l, r)),
            (prop::sample::select(&["I", "B"][..]), inner).prop_map(|(w, s)| SortExpr::arrow(w, s)),
        ]
    })
}

fn leaf_object() -> impl Strategy<Value = ObjectTerm> {
    prop_oneof![pick(FREE_VARS).prop_map(ObjectTerm::Var), pick(BINDERS).prop_map(ObjectTerm::Var), pick(CONSTS).prop_map(ObjectTerm::Const)]
}

fn leaf_formula() -> impl Strategy<Value = Formula> {
    prop_oneof![
        1 => Just(Formula::Falsum),
        3 => (leaf_object(), leaf_object()).prop_map(|(l, r)| Formula::eq(l, r)),
        2 => (leaf_object(), leaf_object()).prop_map(|(l, r)| Formula::member(l, r)),
    ]
}

/// Formulas of nesting depth at most 5, objects and formulas interleaved.
pub fn formula() -> impl Strategy<Value = Formula> {
    raw_formula().prop_map(|f| close_formula(&f, &mut Vec::new()))
}

fn raw_formula() -> impl Strategy<Value = Formula> {
    leaf_formula().prop_recursive(5, 48, 2, |inner| {
        let object = object_over(inner.clone());
        prop_oneof![
            (object.clone(), object.clone()).prop_map(|(l, r)| Formula::eq(l, r)),
            (object.clone(), object).prop_map(|(l, r)| Formula::member(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::implies(l, r)),
            (pick(BINDERS), sort(), inner.clone()).prop_map(|(v, s, b)| Formula::Forall(v, s, Box::new(b))),
            (pick(BINDERS), sort(), inner).prop_map(|(v, s, b)| Formula::Exists(v, s, Box::new(b))),
        ]
    })
}

fn object_over(formula: BoxedStrategy<Formula>) -> impl Strategy<Value = ObjectTerm> + Clone {
    let leaf = leaf_object().boxed();
    prop_oneof![
        3 => leaf.clone(),
        1 => (pick(FUNCS), leaf.clone()).prop_map(|(g, a)| ObjectTerm::FuncApp(g, Box::new(a))),
        1 => (leaf.clone(), leaf.clone()).prop_map(|(l, r)| ObjectTerm::pair(l, r)),
        1 => (leaf.clone(), leaf.clone()).prop_map(|(l, r)| ObjectTerm::apply(l, r)),
        1 => (pick(BINDERS), sort(), formula).prop_map(|(v, s, b)| ObjectTerm::Description(v, s, Box::new(b))),
    ]
    .boxed()
}

/// Object terms with nested structure.
pub fn object() -> impl Strategy<Value = ObjectTerm> {
    raw_object().prop_map(|t| close_object(&t, &mut Vec::new()))
}

fn raw_object() -> impl Strategy<Value = ObjectTerm> {
    leaf_object().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (pick(FUNCS), inner.clone()).prop_map(|(g, a)| ObjectTerm::FuncApp(g, Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| ObjectTerm::pair(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| ObjectTerm::apply(l, r)),
            (pick(BINDERS), sort(), leaf_formula()).prop_map(|(v, s, b)| ObjectTerm::Description(v, s, Box::new(b))),
        ]
    })
}

/// A binder-pool name used outside any binder would read back as a constant;
/// make it one.
fn close_object(t: &ObjectTerm, scope: &mut Vec<Symbol>) -> ObjectTerm {
    match t {
        ObjectTerm::Var(v) if !scope.contains(v) && !vc_core::syntax::is_variable_name(v.as_str()) => {
            ObjectTerm::Const(v.clone())
        }
        ObjectTerm::Var(_) | ObjectTerm::Const(_) => t.clone(),
        ObjectTerm::FuncApp(g, a) => ObjectTerm::FuncApp(g.clone(), Box::new(close_object(a, scope))),
        ObjectTerm::Pair(l, r) => ObjectTerm::pair(close_object(l, scope), close_object(r, scope)),
        ObjectTerm::Apply(l, r) => ObjectTerm::apply(close_object(l, scope), close_object(r, scope)),
        ObjectTerm::Description(v, s, b) => {
            scope.push(v.clone());
            let body = close_formula(b, scope);
            scope.pop();
            ObjectTerm::Description(v.clone(), s.clone(), Box::new(body))
        }
    }
}

fn close_formula(f: &Formula, scope: &mut Vec<Symbol>) -> Formula {
    match f {
        Formula::Falsum => Formula::Falsum,
        Formula::Equation(l, r) => Formula::eq(close_object(l, scope), close_object(r, scope)),
        Formula::Membership(l, r) => Formula::member(close_object(l, scope), close_object(r, scope)),
        Formula::And(l, r) => Formula::and(close_formula(l, scope), close_formula(r, scope)),
        Formula::Or(l, r) => Formula::or(close_formula(l, scope), close_formula(r, scope)),
        Formula::Implies(l, r) => Formula::implies(close_formula(l, scope), close_formula(r, scope)),
        Formula::Forall(v, s, b) | Formula::Exists(v, s, b) => {
            scope.push(v.clone());
            let body = Box::new(close_formula(b, scope));
            scope.pop();
            match f {
                Formula::Forall(..) => Formula::Forall(v.clone(), s.clone(), body),
                _ => Formula::Exists(v.clone(), s.clone(), body),
            }
        }
    }
}
