//! The evaluation map: denotations of objects and truth of formulas at a
//! world, together with the shifted valuation along an evolvent.
//!
//! Evaluation always happens at a *stage*: a current world `w` together with
//! the evolvent `w -> base` that led there from the world where evaluation
//! started. Individual constants are read at the base world and then
//! precomposed with that evolvent, so a constant is shifted exactly once no
//! matter how many implications or universal quantifiers were crossed.
//!
//! Implication and universal quantification range over every closure
//! evolvent into the current world (identity included); existential
//! quantification stays at the current world.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::concepts::Concept;
use crate::error::{Error, Result};
use crate::symbol::Symbol;
use crate::syntax::{Formula, ObjectTerm, SortExpr};
use crate::workspace::Workspace;
use crate::worlds::{
    compose_evolvents, domain_cardinality, enumerate_tables, identity_evolvent, shift_individual,
    Evolvent, Individual,
};

/// A morphism into a fixed world, named only by its source and map.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StageKey {
    pub source: Symbol,
    pub map: BTreeMap<Symbol, Symbol>,
}

impl StageKey {
    pub fn of(e: &Evolvent) -> Self {
        StageKey {
            source: e.source.clone(),
            map: e.map.clone(),
        }
    }

    fn is_identity_on(&self, w: &Symbol) -> bool {
        self.source == *w && self.map.iter().all(|(a, b)| a == b)
    }
}

/// Value of a power sort at world `world`.
///
/// Besides its members at `world`, a set carries its members at every stage
/// `g: B -> world` of the evolvent closure, and those parts are compatible:
/// shifting a member of the part at `g` along `k: C -> B` lands in the part at
/// `g . k`. Shifting the set along `f` re-indexes the parts, so membership
/// persists along evolvents and definite descriptions over power sorts pick
/// out exactly the comprehended concept.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetVal {
    pub world: Symbol,
    pub parts: BTreeMap<StageKey, BTreeSet<Denotation>>,
}

static EMPTY: BTreeSet<Denotation> = BTreeSet::new();

impl SetVal {
    /// Members at the set's own world.
    pub fn members(&self) -> &BTreeSet<Denotation> {
        self.parts
            .iter()
            .find(|(k, _)| k.is_identity_on(&self.world))
            .map(|(_, v)| v)
            .unwrap_or(&EMPTY)
    }

    pub fn contains(&self, d: &Denotation) -> bool {
        self.members().contains(d)
    }

    pub fn part(&self, stage: &Evolvent) -> Option<&BTreeSet<Denotation>> {
        self.parts.get(&StageKey::of(stage))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Denotation {
    /// A carrier element or a world index.
    Element(Symbol),
    Individual(Individual),
    Pair(Box<Denotation>, Box<Denotation>),
    Set(SetVal),
    Truth(bool),
}

impl Denotation {
    pub fn element(name: &str) -> Self {
        Denotation::Element(Symbol::new(name))
    }

    pub fn pair(l: Denotation, r: Denotation) -> Self {
        Denotation::Pair(Box::new(l), Box::new(r))
    }

    pub fn as_individual(&self) -> Option<&Individual> {
        match self {
            Denotation::Individual(h) => Some(h),
            _ => None,
        }
    }

    pub fn as_set(&self) -> Option<&SetVal> {
        match self {
            Denotation::Set(s) => Some(s),
            _ => None,
        }
    }

    fn check_world(&self, w: &Symbol) -> Result<()> {
        match self {
            Denotation::Individual(h) if h.world != *w => Err(Error::WorldMismatch {
                expected: w.clone(),
                found: h.world.clone(),
            }),
            Denotation::Set(s) if s.world != *w => Err(Error::WorldMismatch {
                expected: w.clone(),
                found: s.world.clone(),
            }),
            Denotation::Pair(l, r) => {
                l.check_world(w)?;
                r.check_world(w)
            }
            _ => Ok(()),
        }
    }
}

/// Shows sets by their members at their own world.
impl fmt::Display for Denotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Denotation::Element(e) => write!(f, "{e}"),
            Denotation::Individual(h) => write!(f, "{h}"),
            Denotation::Pair(l, r) => write!(f, "[{l}, {r}]"),
            Denotation::Set(s) => {
                write!(f, "{{")?;
                for (n, m) in s.members().iter().enumerate() {
                    if n > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{m}")?;
                }
                write!(f, "}}")
            }
            Denotation::Truth(b) => write!(f, "{b}"),
        }
    }
}

/// Variable bindings at a world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Environment {
    pub world: Symbol,
    pub bindings: BTreeMap<Symbol, Denotation>,
}

impl Environment {
    pub fn new(world: impl Into<Symbol>) -> Self {
        Environment {
            world: world.into(),
            bindings: BTreeMap::new(),
        }
    }

    pub fn bind(mut self, var: impl Into<Symbol>, value: Denotation) -> Self {
        self.bindings.insert(var.into(), value);
        self
    }

    fn validate(&self) -> Result<()> {
        self.bindings.values().try_for_each(|d| d.check_world(&self.world))
    }

    fn to_scope(&self) -> Scope {
        self.bindings.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }
}

type Scope = Vec<(Symbol, Denotation)>;

/// Current world plus the evolvent `current -> base`.
#[derive(Debug, Clone)]
pub(crate) struct Stage {
    pub base: Symbol,
    pub morph: Evolvent,
}

impl Stage {
    pub fn world(&self) -> &Symbol {
        &self.morph.source
    }

    fn then(&self, f: &Evolvent) -> Result<Stage> {
        if f.is_identity() {
            return Ok(self.clone());
        }
        Ok(Stage {
            base: self.base.clone(),
            morph: compose_evolvents(f, &self.morph)?,
        })
    }
}

type DomainKey = (SortExpr, Symbol, Symbol);

pub struct Evaluator<'a> {
    ws: &'a Workspace,
    cap: u64,
    /// Domains by (sort, base world, current world).
    domains: RefCell<BTreeMap<DomainKey, Rc<[Denotation]>>>,
    /// Constants by (name, base world, stage morphism).
    constants: RefCell<BTreeMap<(Symbol, Symbol, StageKey), Denotation>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(ws: &'a Workspace) -> Self {
        Evaluator {
            ws,
            cap: ws.cap(),
            domains: RefCell::new(BTreeMap::new()),
            constants: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self.domains.borrow_mut().clear();
        self.constants.borrow_mut().clear();
        self
    }

    pub fn workspace(&self) -> &'a Workspace {
        self.ws
    }

    pub(crate) fn stage_at(&self, world: &str) -> Result<Stage> {
        let w = self.ws.world(world)?;
        Ok(Stage {
            base: w.name.clone(),
            morph: identity_evolvent(w),
        })
    }

    pub(crate) fn stage_along(&self, f: &Evolvent) -> Result<Stage> {
        self.ws.world(&f.source)?;
        self.ws.world(&f.target)?;
        Ok(Stage {
            base: f.target.clone(),
            morph: f.clone(),
        })
    }

    fn entry(&self, world: &str, env: &Environment) -> Result<Stage> {
        let stage = self.stage_at(world)?;
        if env.world != *stage.world() {
            return Err(Error::WorldMismatch {
                expected: stage.world().clone(),
                found: env.world.clone(),
            });
        }
        env.validate()?;
        Ok(stage)
    }

    pub fn eval_formula(&self, phi: &Formula, world: &str, env: &Environment) -> Result<bool> {
        let stage = self.entry(world, env)?;
        self.holds(phi, &stage, &mut env.to_scope())
    }

    pub fn eval_object(&self, t: &ObjectTerm, world: &str, env: &Environment) -> Result<Denotation> {
        let stage = self.entry(world, env)?;
        self.object(t, &stage, &mut env.to_scope())
    }

    /// `||phi||_f` at the source of `f: B -> I`, for an environment over `I`.
    pub fn eval_shifted(&self, phi: &Formula, f: &Evolvent, env: &Environment) -> Result<bool> {
        if env.world != f.target {
            return Err(Error::WorldMismatch {
                expected: f.target.clone(),
                found: env.world.clone(),
            });
        }
        env.validate()?;
        let stage = self.stage_along(f)?;
        let mut scope = self.shift_scope(&env.to_scope(), f)?;
        self.holds(phi, &stage, &mut scope)
    }

    /// `||(\x. phi) h||_i = [h(i)/x] ||phi||_i`: evaluates `phi` at `world`
    /// with `x` bound to the element `h(i)`.
    pub fn apply_lambda_subst(
        &self,
        phi: &Formula,
        x: &Symbol,
        h: &Individual,
        i: &Symbol,
        world: &str,
        env: &Environment,
    ) -> Result<bool> {
        let w = self.ws.world(world)?;
        if h.world != w.name {
            return Err(Error::WorldMismatch {
                expected: w.name.clone(),
                found: h.world.clone(),
            });
        }
        if !w.contains(i) {
            return Err(Error::UnknownIndex {
                world: w.name.clone(),
                index: i.clone(),
            });
        }
        let value = h.at(i).ok_or_else(|| Error::UnknownIndex {
            world: h.world.clone(),
            index: i.clone(),
        })?;
        let env = env.clone().bind(x.clone(), Denotation::Element(value.clone()));
        self.eval_formula(phi, world, &env)
    }

    pub fn shift_env(&self, env: &Environment, f: &Evolvent) -> Result<Environment> {
        if env.world != f.target {
            return Err(Error::WorldMismatch {
                expected: f.target.clone(),
                found: env.world.clone(),
            });
        }
        let mut out = Environment::new(f.source.clone());
        for (k, v) in &env.bindings {
            out.bindings.insert(k.clone(), self.shift_denotation(v, f)?);
        }
        Ok(out)
    }

    fn shift_scope(&self, scope: &Scope, f: &Evolvent) -> Result<Scope> {
        if f.is_identity() {
            return Ok(scope.clone());
        }
        scope
            .iter()
            .map(|(k, v)| Ok((k.clone(), self.shift_denotation(v, f)?)))
            .collect()
    }

    /// Restriction of a value along `f: B -> w`.
    pub fn shift_denotation(&self, d: &Denotation, f: &Evolvent) -> Result<Denotation> {
        Ok(match d {
            Denotation::Element(_) | Denotation::Truth(_) => d.clone(),
            Denotation::Individual(h) => Denotation::Individual(shift_individual(h, f)?),
            Denotation::Pair(l, r) => {
                Denotation::pair(self.shift_denotation(l, f)?, self.shift_denotation(r, f)?)
            }
            Denotation::Set(s) => {
                if s.world != f.target {
                    return Err(Error::WorldMismatch {
                        expected: f.target.clone(),
                        found: s.world.clone(),
                    });
                }
                let mut parts = BTreeMap::new();
                for k in self.ws.morphisms_into(&f.source) {
                    let through = compose_evolvents(k, f)?;
                    let part = s.parts.get(&StageKey::of(&through)).ok_or_else(|| {
                        Error::sort(format!(
                            "set over {} has no part for the stage {} -> {}",
                            s.world, through.source, through.target
                        ))
                    })?;
                    parts.insert(StageKey::of(k), part.clone());
                }
                Denotation::Set(SetVal {
                    world: f.source.clone(),
                    parts,
                })
            }
        })
    }

    /// All values of `sort` at `world`, in enumeration order.
    pub fn domain(&self, sort: &SortExpr, world: &str) -> Result<Vec<Denotation>> {
        let stage = self.stage_at(world)?;
        Ok(self.domain_at(sort, &stage)?.to_vec())
    }

    fn cap_check(&self, what: impl FnOnce() -> alloc::string::String, cardinality: u128) -> Result<()> {
        if cardinality > self.cap as u128 {
            return Err(Error::EnumerationCapExceeded {
                what: what(),
                cardinality,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Carrier of a base sort: a type's elements or a world's indexes.
    fn atoms_of(&self, name: &Symbol) -> Result<&'a [Symbol]> {
        if let Some(t) = self.ws.types().get(name) {
            return Ok(&t.elements);
        }
        if let Some(w) = self.ws.worlds().get(name) {
            return Ok(&w.indexes);
        }
        Err(Error::unknown("sort", name))
    }

    pub(crate) fn domain_at(&self, sort: &SortExpr, stage: &Stage) -> Result<Rc<[Denotation]>> {
        let key = (sort.clone(), stage.base.clone(), stage.world().clone());
        if let Some(d) = self.domains.borrow().get(&key) {
            return Ok(d.clone());
        }
        let d: Rc<[Denotation]> = self.compute_domain(sort, stage)?.into();
        self.domains.borrow_mut().insert(key, d.clone());
        Ok(d)
    }

    fn compute_domain(&self, sort: &SortExpr, stage: &Stage) -> Result<Vec<Denotation>> {
        match sort {
            SortExpr::Base(name) => Ok(self
                .atoms_of(name)?
                .iter()
                .map(|a| Denotation::Element(a.clone()))
                .collect()),
            SortExpr::Arrow(w, cod) => {
                let anchor = self.ws.world(w)?;
                if !self.ws.reachable(&stage.base, &anchor.name) {
                    return Err(Error::sort(format!(
                        "sort {sort} is not available at world {}: no evolvent {} -> {}",
                        stage.base, stage.base, anchor.name
                    )));
                }
                let SortExpr::Base(cod_name) = &**cod else {
                    return Err(Error::sort(format!(
                        "individuals must take values in a type or world, found {cod}"
                    )));
                };
                let values = self.atoms_of(cod_name)?;
                let here = self.ws.world(stage.world())?;
                self.cap_check(
                    || format!("{sort} at world {}", here.name),
                    domain_cardinality(values.len(), here.indexes.len()),
                )?;
                Ok(enumerate_tables(&here.indexes, values)
                    .map(|row| Denotation::Individual(Individual::new(here.name.clone(), row)))
                    .collect())
            }
            SortExpr::Product(l, r) => {
                let ls = self.domain_at(l, stage)?;
                let rs = self.domain_at(r, stage)?;
                self.cap_check(
                    || format!("{sort} at world {}", stage.world()),
                    (ls.len() as u128).saturating_mul(rs.len() as u128),
                )?;
                let mut out = Vec::with_capacity(ls.len() * rs.len());
                for a in ls.iter() {
                    for b in rs.iter() {
                        out.push(Denotation::pair(a.clone(), b.clone()));
                    }
                }
                Ok(out)
            }
            SortExpr::Power(inner) => self.power_domain(sort, inner, stage),
        }
    }

    /// Compatible families of subsets over all stages into the current
    /// world, enumerated by backtracking.
    fn power_domain(&self, sort: &SortExpr, inner: &SortExpr, stage: &Stage) -> Result<Vec<Denotation>> {
        let w = stage.world().clone();
        let stages: Vec<&Evolvent> = self.ws.morphisms_into(&w).collect();
        let mut doms: Vec<Rc<[Denotation]>> = Vec::with_capacity(stages.len());
        for g in &stages {
            doms.push(self.domain_at(inner, &stage.then(g)?)?);
        }
        let bits: usize = doms.iter().map(|d| d.len()).sum();
        let space = if bits >= 127 || doms.iter().any(|d| d.len() > 63) {
            u128::MAX
        } else {
            1u128 << bits
        };
        self.cap_check(|| format!("{sort} at world {w}"), space)?;

        let keys: Vec<StageKey> = stages.iter().map(|g| StageKey::of(g)).collect();
        let position = |key: &StageKey| keys.iter().position(|k| k == key);

        // (a, b, image): members of the part at stage a, shifted along some k,
        // must lie in the part at stage b = a . k.
        let mut constraints: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for (a, g) in stages.iter().enumerate() {
            for k in self.ws.morphisms_into(&g.source) {
                if k.is_identity() {
                    continue;
                }
                let gk = compose_evolvents(k, g)?;
                let b = position(&StageKey::of(&gk))
                    .ok_or_else(|| Error::sort(format!("evolvent closure is missing {}", gk.name)))?;
                let mut image = Vec::with_capacity(doms[a].len());
                for d in doms[a].iter() {
                    let shifted = self.shift_denotation(d, k)?;
                    let idx = doms[b].iter().position(|e| *e == shifted).ok_or_else(|| {
                        Error::sort(format!("shift of {d} along {} left the domain", k.name))
                    })?;
                    image.push(idx);
                }
                constraints.push((a, b, image));
            }
        }

        let n = stages.len();
        let mut masks = alloc::vec![0u64; n];
        let mut out = Vec::new();
        self.families(0, &doms, &constraints, &mut masks, &mut |masks| {
            let mut parts = BTreeMap::new();
            for (s, key) in keys.iter().enumerate() {
                let set: BTreeSet<Denotation> = doms[s]
                    .iter()
                    .enumerate()
                    .filter(|(m, _)| masks[s] & (1u64 << m) != 0)
                    .map(|(_, d)| d.clone())
                    .collect();
                parts.insert(key.clone(), set);
            }
            out.push(Denotation::Set(SetVal {
                world: w.clone(),
                parts,
            }));
        });
        Ok(out)
    }

    fn families(
        &self,
        at: usize,
        doms: &[Rc<[Denotation]>],
        constraints: &[(usize, usize, Vec<usize>)],
        masks: &mut Vec<u64>,
        emit: &mut dyn FnMut(&[u64]),
    ) {
        if at == doms.len() {
            emit(masks);
            return;
        }
        let size = doms[at].len();
        for mask in 0..(1u64 << size) {
            masks[at] = mask;
            let ok = constraints
                .iter()
                .filter(|(a, b, _)| (*a).max(*b) == at)
                .all(|(a, b, image)| {
                    image
                        .iter()
                        .enumerate()
                        .all(|(m, &t)| masks[*a] & (1u64 << m) == 0 || masks[*b] & (1u64 << t) != 0)
                });
            if ok {
                self.families(at + 1, doms, constraints, masks, emit);
            }
        }
        masks[at] = 0;
    }

    pub(crate) fn holds(&self, phi: &Formula, stage: &Stage, scope: &mut Scope) -> Result<bool> {
        match phi {
            Formula::Falsum => Ok(false),
            Formula::Equation(l, r) => Ok(self.object(l, stage, scope)? == self.object(r, stage, scope)?),
            Formula::Membership(e, s) => {
                let set = self.object(s, stage, scope)?;
                let elem = self.object(e, stage, scope)?;
                match set {
                    Denotation::Set(sv) => Ok(sv.contains(&elem)),
                    other => Err(Error::sort(format!("{other} is not a set"))),
                }
            }
            Formula::And(l, r) => Ok(self.holds(l, stage, scope)? && self.holds(r, stage, scope)?),
            Formula::Or(l, r) => Ok(self.holds(l, stage, scope)? || self.holds(r, stage, scope)?),
            Formula::Implies(l, r) => {
                for f in self.ws.morphisms_into(stage.world()) {
                    let next = stage.then(f)?;
                    let mut shifted = self.shift_scope(scope, f)?;
                    if self.holds(l, &next, &mut shifted)? && !self.holds(r, &next, &mut shifted)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Forall(x, sort, body) => {
                for f in self.ws.morphisms_into(stage.world()) {
                    let next = stage.then(f)?;
                    let mut shifted = self.shift_scope(scope, f)?;
                    for b in self.domain_at(sort, &next)?.iter() {
                        shifted.push((x.clone(), b.clone()));
                        let ok = self.holds(body, &next, &mut shifted);
                        shifted.pop();
                        if !ok? {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
            Formula::Exists(x, sort, body) => {
                for a in self.domain_at(sort, stage)?.iter() {
                    scope.push((x.clone(), a.clone()));
                    let ok = self.holds(body, stage, scope);
                    scope.pop();
                    if ok? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    pub(crate) fn object(&self, t: &ObjectTerm, stage: &Stage, scope: &mut Scope) -> Result<Denotation> {
        match t {
            ObjectTerm::Var(v) => scope
                .iter()
                .rev()
                .find(|(k, _)| k == v)
                .map(|(_, d)| d.clone())
                .ok_or_else(|| Error::UnboundVariable(v.clone())),
            ObjectTerm::Const(c) => self.constant(c, stage),
            ObjectTerm::FuncApp(g, arg) => {
                let value = self.object(arg, stage, scope)?;
                if let Some(func) = self.ws.func(g) {
                    return apply_func(func, value);
                }
                if self.is_constant(g) {
                    let head = self.constant(g, stage)?;
                    return apply(head, value);
                }
                Err(Error::unknown("function", g))
            }
            ObjectTerm::Pair(l, r) => Ok(Denotation::pair(
                self.object(l, stage, scope)?,
                self.object(r, stage, scope)?,
            )),
            ObjectTerm::Apply(fun, arg) => {
                let head = self.object(fun, stage, scope)?;
                let value = self.object(arg, stage, scope)?;
                apply(head, value)
            }
            ObjectTerm::Description(y, sort, body) => {
                let mut found = Vec::new();
                for cand in self.domain_at(sort, stage)?.iter() {
                    scope.push((y.clone(), cand.clone()));
                    let ok = self.holds(body, stage, scope);
                    scope.pop();
                    if ok? {
                        found.push(cand.clone());
                    }
                }
                match found.len() {
                    0 => Err(Error::NoWitness { var: y.clone() }),
                    1 => Ok(found.pop().unwrap_or(Denotation::Truth(false))),
                    n => Err(Error::NonUnique {
                        var: y.clone(),
                        count: n,
                    }),
                }
            }
        }
    }

    fn is_constant(&self, name: &Symbol) -> bool {
        self.ws.individuals().contains(name)
            || self.ws.concepts().contains(name)
            || self.ws.is_atom_name(name)
    }

    fn constant(&self, name: &Symbol, stage: &Stage) -> Result<Denotation> {
        let key = (name.clone(), stage.base.clone(), StageKey::of(&stage.morph));
        if let Some(d) = self.constants.borrow().get(&key) {
            return Ok(d.clone());
        }
        let d = self.read_constant(name, stage)?;
        self.constants.borrow_mut().insert(key, d.clone());
        Ok(d)
    }

    fn read_constant(&self, name: &Symbol, stage: &Stage) -> Result<Denotation> {
        if let Some(decl) = self.ws.individuals().get(name) {
            let route = self.ws.route(&stage.base, &decl.value.world)?;
            let through = compose_evolvents(&stage.morph, &route)?;
            return Ok(Denotation::Individual(shift_individual(&decl.value, &through)?));
        }
        if let Some(decl) = self.ws.concepts().get(name) {
            let route = self.ws.route(&stage.base, &decl.concept.world)?;
            let through = compose_evolvents(&stage.morph, &route)?;
            return self.concept_value(&decl.concept, &through);
        }
        if self.ws.is_atom_name(name) {
            return Ok(Denotation::Element(name.clone()));
        }
        Err(Error::UnknownConstant(name.clone()))
    }

    /// A concept read through `m: w -> concept.world`, as a set over `w`.
    pub(crate) fn concept_value(&self, c: &Concept, m: &Evolvent) -> Result<Denotation> {
        let mut parts = BTreeMap::new();
        for g in self.ws.morphisms_into(&m.source) {
            let through = compose_evolvents(g, m)?;
            parts.insert(StageKey::of(g), self.concept_part(c, &through)?);
        }
        Ok(Denotation::Set(SetVal {
            world: m.source.clone(),
            parts,
        }))
    }

    /// Satisfiers of the concept's intension at the stage `n: B -> concept.world`.
    fn concept_part(&self, c: &Concept, n: &Evolvent) -> Result<BTreeSet<Denotation>> {
        if n.is_identity() && c.along.is_none() {
            return Ok(c.extension.iter().cloned().map(Denotation::Individual).collect());
        }
        let stage = Stage {
            base: c.world.clone(),
            morph: n.clone(),
        };
        let mut out = BTreeSet::new();
        for cand in self.domain_at(&c.sort, &stage)?.iter() {
            let mut scope = alloc::vec![(c.var.clone(), cand.clone())];
            if self.holds(&c.intension, &stage, &mut scope)? {
                out.insert(cand.clone());
            }
        }
        Ok(out)
    }
}

fn apply(head: Denotation, arg: Denotation) -> Result<Denotation> {
    match (head, arg) {
        (Denotation::Individual(h), Denotation::Element(i)) => match h.at(&i) {
            Some(e) => Ok(Denotation::Element(e.clone())),
            None => Err(Error::UnknownIndex { world: h.world, index: i }),
        },
        (Denotation::Set(s), arg) => Ok(Denotation::Truth(s.contains(&arg))),
        (head, arg) => Err(Error::sort(format!("cannot apply {head} to {arg}"))),
    }
}

fn apply_func(func: &crate::workspace::FuncDecl, value: Denotation) -> Result<Denotation> {
    let image = |e: &Symbol| {
        func.map.get(e).cloned().ok_or_else(|| {
            Error::sort(format!("{e} is not in the domain {} of {}", func.domain, func.name))
        })
    };
    match value {
        Denotation::Element(e) => Ok(Denotation::Element(image(&e)?)),
        Denotation::Individual(h) => {
            let mut table = BTreeMap::new();
            for (i, e) in &h.table {
                table.insert(i.clone(), image(e)?);
            }
            Ok(Denotation::Individual(Individual { world: h.world, table }))
        }
        other => Err(Error::sort(format!("cannot apply function {} to {other}", func.name))),
    }
}
