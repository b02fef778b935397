//! Comprehension and the concept species built from it.
//!
//! * [`Concept`]: `C(I) = { h in H_T(I) | phi(h) holds at I }`, intension and
//!   materialized extension.
//! * [`IndexedConcept`]: `C'({i}) = { h(i) | h in C(I) }`, a snapshot at one
//!   index, an element of the power sort `[T]`.
//! * [`VariableConcept`]: the family `{ C({i}) }` over all indexes, a view;
//!   equivalently a subset of `I x T`.
//! * [`FConcept`]: `C_f(B) = { h . f | phi holds under the f-shifted
//!   valuation }` for an evolvent `f: B -> I`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::eval::{Denotation, Evaluator, Stage};
use crate::symbol::Symbol;
use crate::syntax::{Formula, ObjectTerm, SortExpr};
use crate::workspace::Workspace;
use crate::worlds::{shift_individual, Evolvent, Individual};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Concept {
    pub var: Symbol,
    pub sort: SortExpr,
    pub intension: Formula,
    pub world: Symbol,
    /// Set when the concept was comprehended under the shifted valuation
    /// along this evolvent (whose source is `world`).
    pub along: Option<Evolvent>,
    /// Satisfiers in enumeration order.
    pub extension: Vec<Individual>,
}

impl Concept {
    pub fn contains(&self, h: &Individual) -> bool {
        self.extension.contains(h)
    }

    /// The carrier type of the concept's individuals.
    pub fn carrier(&self) -> Option<&Symbol> {
        match &self.sort {
            SortExpr::Arrow(_, cod) => match &**cod {
                SortExpr::Base(t) => Some(t),
                _ => None,
            },
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedConcept {
    pub index: Symbol,
    pub elements: BTreeSet<Symbol>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableConcept {
    pub world: Symbol,
    /// One entry per index, in the world's index order.
    pub family: Vec<IndexedConcept>,
}

impl VariableConcept {
    /// The subset of `I x T` it determines: one `[i, e]` row per pair.
    pub fn rows(&self) -> Vec<(Symbol, Symbol)> {
        self.family
            .iter()
            .flat_map(|ic| ic.elements.iter().map(move |e| (ic.index.clone(), e.clone())))
            .collect()
    }

    pub fn at(&self, i: &str) -> Option<&IndexedConcept> {
        self.family.iter().find(|ic| ic.index == i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FConcept {
    pub evolvent: Evolvent,
    pub base: Concept,
    pub extension: Vec<Individual>,
}

fn check_concept_sort(sort: &SortExpr) -> Result<()> {
    match sort {
        SortExpr::Arrow(_, cod) if matches!(**cod, SortExpr::Base(_)) => Ok(()),
        other => Err(Error::sort(format!(
            "concepts range over individuals (W -> T), found {other}"
        ))),
    }
}

fn check_free_vars(phi: &Formula, x: &Symbol) -> Result<()> {
    match phi.free_vars().into_iter().find(|v| v != x) {
        Some(v) => Err(Error::UnboundVariable(v)),
        None => Ok(()),
    }
}

fn satisfiers(
    ev: &Evaluator<'_>,
    phi: &Formula,
    x: &Symbol,
    sort: &SortExpr,
    stage: &Stage,
) -> Result<Vec<Individual>> {
    let mut out = Vec::new();
    for cand in ev.domain_at(sort, stage)?.iter() {
        let mut scope = alloc::vec![(x.clone(), cand.clone())];
        if ev.holds(phi, stage, &mut scope)? {
            if let Denotation::Individual(h) = cand {
                out.push(h.clone());
            }
        }
    }
    Ok(out)
}

/// `C(w) = { h | phi(h) holds at w }`.
pub fn comprehend(ws: &Workspace, phi: &Formula, x: &Symbol, sort: &SortExpr, world: &Symbol) -> Result<Concept> {
    check_concept_sort(sort)?;
    check_free_vars(phi, x)?;
    let ev = Evaluator::new(ws);
    let stage = ev.stage_at(world)?;
    let extension = satisfiers(&ev, phi, x, sort, &stage)?;
    Ok(Concept {
        var: x.clone(),
        sort: sort.clone(),
        intension: phi.clone(),
        world: world.clone(),
        along: None,
        extension,
    })
}

/// `C(B)` under the valuation shifted along `f: B -> I`: every `h' in H_T(B)`
/// satisfying `phi`, not only the shifted ones.
pub fn comprehend_along(ws: &Workspace, phi: &Formula, x: &Symbol, sort: &SortExpr, f: &Evolvent) -> Result<Concept> {
    check_concept_sort(sort)?;
    check_free_vars(phi, x)?;
    let ev = Evaluator::new(ws);
    let stage = ev.stage_along(f)?;
    let extension = satisfiers(&ev, phi, x, sort, &stage)?;
    Ok(Concept {
        var: x.clone(),
        sort: sort.clone(),
        intension: phi.clone(),
        world: f.source.clone(),
        along: Some(f.clone()),
        extension,
    })
}

/// `C'({i}) = { h(i) | h in C }`.
pub fn instantiate(ws: &Workspace, c: &Concept, i: &Symbol) -> Result<IndexedConcept> {
    let w = ws.world(&c.world)?;
    if !w.contains(i) {
        return Err(Error::UnknownIndex {
            world: w.name.clone(),
            index: i.clone(),
        });
    }
    let elements = c.extension.iter().filter_map(|h| h.at(i).cloned()).collect();
    Ok(IndexedConcept {
        index: i.clone(),
        elements,
    })
}

pub fn variable_concept(ws: &Workspace, c: &Concept) -> Result<VariableConcept> {
    let w = ws.world(&c.world)?;
    let family = w
        .indexes
        .iter()
        .map(|i| instantiate(ws, c, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(VariableConcept {
        world: w.name.clone(),
        family,
    })
}

/// `C_f(B) = { h . f | h in H_T(I), ||phi(h)||_f }` for `f: B -> I`.
pub fn f_concept(ws: &Workspace, phi: &Formula, x: &Symbol, sort: &SortExpr, f: &Evolvent) -> Result<FConcept> {
    let base = comprehend(ws, phi, x, sort, &f.target)?;
    let ev = Evaluator::new(ws);
    let home = ev.stage_at(&f.target)?;
    let shifted = ev.stage_along(f)?;
    let mut extension: Vec<Individual> = Vec::new();
    for cand in ev.domain_at(sort, &home)?.iter() {
        let Denotation::Individual(h) = cand else { continue };
        let moved = shift_individual(h, f)?;
        let mut scope = alloc::vec![(x.clone(), Denotation::Individual(moved.clone()))];
        if ev.holds(phi, &shifted, &mut scope)? && !extension.contains(&moved) {
            extension.push(moved);
        }
    }
    Ok(FConcept {
        evolvent: f.clone(),
        base,
        extension,
    })
}

/// Resolves a definite description `the y : S . phi` at `world`: the unique
/// value of `S` satisfying `phi`. Power-sort descriptions of the form
/// `the y : [S] . forall h : S . (phi(h) <-> y(h))` resolve to the
/// comprehended set.
pub fn resolve_description(ws: &Workspace, d: &ObjectTerm, world: &Symbol) -> Result<Denotation> {
    if !matches!(d, ObjectTerm::Description(..)) {
        return Err(Error::sort(format!("{d} is not a description")));
    }
    let ev = Evaluator::new(ws);
    let stage = ev.stage_at(world)?;
    ev.object(d, &stage, &mut Vec::new())
}
