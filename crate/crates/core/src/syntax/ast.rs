use alloc::boxed::Box;
use alloc::collections::BTreeSet;

use crate::symbol::Symbol;

/// Sorts annotate binders and give every quantifier a finite range.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SortExpr {
    /// A declared type (its carrier) or a declared world (its indexes).
    Base(Symbol),
    /// `[S]`, subsets of `S`.
    Power(Box<SortExpr>),
    /// `S1 * S2`.
    Product(Box<SortExpr>, Box<SortExpr>),
    /// `(W -> S)`, the individuals of the variable domain `H_S`.
    Arrow(Symbol, Box<SortExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObjectTerm {
    Var(Symbol),
    Const(Symbol),
    /// `g(t)` for a declared unary function constant `g`.
    FuncApp(Symbol, Box<ObjectTerm>),
    Pair(Box<ObjectTerm>, Box<ObjectTerm>),
    Apply(Box<ObjectTerm>, Box<ObjectTerm>),
    /// `the y : S . body`.
    Description(Symbol, SortExpr, Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Falsum,
    Equation(ObjectTerm, ObjectTerm),
    /// `elem in set`.
    Membership(ObjectTerm, ObjectTerm),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(Symbol, SortExpr, Box<Formula>),
    Exists(Symbol, SortExpr, Box<Formula>),
}

impl SortExpr {
    pub fn base(name: &str) -> Self {
        SortExpr::Base(Symbol::new(name))
    }

    pub fn power(inner: SortExpr) -> Self {
        SortExpr::Power(Box::new(inner))
    }

    pub fn product(left: SortExpr, right: SortExpr) -> Self {
        SortExpr::Product(Box::new(left), Box::new(right))
    }

    pub fn arrow(world: &str, codomain: SortExpr) -> Self {
        SortExpr::Arrow(Symbol::new(world), Box::new(codomain))
    }

    /// Nesting depth of power sorts.
    pub fn power_depth(&self) -> usize {
        match self {
            SortExpr::Base(_) => 0,
            SortExpr::Power(inner) => 1 + inner.power_depth(),
            SortExpr::Product(l, r) => l.power_depth().max(r.power_depth()),
            SortExpr::Arrow(_, cod) => cod.power_depth(),
        }
    }
}

impl ObjectTerm {
    pub fn var(name: &str) -> Self {
        ObjectTerm::Var(Symbol::new(name))
    }

    pub fn constant(name: &str) -> Self {
        ObjectTerm::Const(Symbol::new(name))
    }

    pub fn func(name: &str, arg: ObjectTerm) -> Self {
        ObjectTerm::FuncApp(Symbol::new(name), Box::new(arg))
    }

    pub fn pair(left: ObjectTerm, right: ObjectTerm) -> Self {
        ObjectTerm::Pair(Box::new(left), Box::new(right))
    }

    pub fn apply(fun: ObjectTerm, arg: ObjectTerm) -> Self {
        ObjectTerm::Apply(Box::new(fun), Box::new(arg))
    }

    pub fn description(var: &str, sort: SortExpr, body: Formula) -> Self {
        ObjectTerm::Description(Symbol::new(var), sort, Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        super::subst::collect_object(self, &mut alloc::vec::Vec::new(), &mut out);
        out
    }
}

impl Formula {
    pub fn eq(left: ObjectTerm, right: ObjectTerm) -> Self {
        Formula::Equation(left, right)
    }

    pub fn member(elem: ObjectTerm, set: ObjectTerm) -> Self {
        Formula::Membership(elem, set)
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    /// `l <-> r`, sugar for `(l => r) & (r => l)`.
    pub fn iff(l: Formula, r: Formula) -> Self {
        Formula::and(Formula::implies(l.clone(), r.clone()), Formula::implies(r, l))
    }

    pub fn forall(var: &str, sort: SortExpr, body: Formula) -> Self {
        Formula::Forall(Symbol::new(var), sort, Box::new(body))
    }

    pub fn exists(var: &str, sort: SortExpr, body: Formula) -> Self {
        Formula::Exists(Symbol::new(var), sort, Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        super::subst::collect_formula(self, &mut alloc::vec::Vec::new(), &mut out);
        out
    }

    /// Number of formula nodes on the longest root-to-leaf path; atomic
    /// formulas have depth 1. Object terms inside atoms do not count.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Falsum | Formula::Equation(..) | Formula::Membership(..) => 1,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                1 + l.depth().max(r.depth())
            }
            Formula::Forall(_, _, b) | Formula::Exists(_, _, b) => 1 + b.depth(),
        }
    }

    /// Number of quantifier binders (descriptions inside atoms excluded).
    pub fn binder_count(&self) -> usize {
        match self {
            Formula::Falsum | Formula::Equation(..) | Formula::Membership(..) => 0,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.binder_count() + r.binder_count()
            }
            Formula::Forall(_, _, b) | Formula::Exists(_, _, b) => 1 + b.binder_count(),
        }
    }
}
