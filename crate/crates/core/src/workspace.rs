//! In-memory registry of declared types, worlds, evolvents, functions,
//! individual constants and concepts.
//!
//! Every declaration is all-or-nothing: on error the workspace is unchanged.
//! The evolvent set is kept closed under identities and composition, and
//! stored concept extensions are re-materialized whenever that set changes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::concepts::{self, Concept};
use crate::error::{Error, Result};
use crate::symbol::Symbol;
use crate::syntax::{Formula, SortExpr};
use crate::worlds::{compose_evolvents, identity_evolvent, BaseType, Evolvent, Individual, World};
use crate::DEFAULT_ENUMERATION_CAP;

/// Insertion-ordered name -> item map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Registry<T> {
    items: Vec<(Symbol, T)>,
    index: BTreeMap<Symbol, usize>,
}

impl<T> Default for Registry<T> {
    fn default() -> Self {
        Registry {
            items: Vec::new(),
            index: BTreeMap::new(),
        }
    }
}

impl<T> Registry<T> {
    pub fn get(&self, name: &str) -> Option<&T> {
        self.index.get(name).map(|&i| &self.items[i].1)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &T)> {
        self.items.iter().map(|(k, v)| (k, v))
    }

    pub fn values(&self) -> impl Iterator<Item = &T> {
        self.items.iter().map(|(_, v)| v)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    fn insert(&mut self, name: Symbol, item: T) {
        if let Some(&i) = self.index.get(&name) {
            self.items[i].1 = item;
        } else {
            self.index.insert(name.clone(), self.items.len());
            self.items.push((name, item));
        }
    }

    fn get_mut(&mut self, name: &str) -> Option<&mut T> {
        let i = *self.index.get(name)?;
        Some(&mut self.items[i].1)
    }
}

/// A unary function constant between carriers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuncDecl {
    pub name: Symbol,
    pub domain: Symbol,
    pub codomain: Symbol,
    pub map: BTreeMap<Symbol, Symbol>,
}

/// A named individual `h : W -> T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndividualDecl {
    pub name: Symbol,
    pub ty: Symbol,
    pub value: Individual,
}

/// A named concept together with the declaration that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptDecl {
    pub name: Symbol,
    pub concept: Concept,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workspace {
    types: Registry<BaseType>,
    worlds: Registry<World>,
    evolvents: Registry<Evolvent>,
    funcs: Registry<FuncDecl>,
    individuals: Registry<IndividualDecl>,
    concepts: Registry<ConceptDecl>,
    closure: Vec<Evolvent>,
    cap: u64,
}

impl Default for Workspace {
    fn default() -> Self {
        Workspace::new()
    }
}

impl Workspace {
    pub fn new() -> Self {
        Workspace {
            types: Registry::default(),
            worlds: Registry::default(),
            evolvents: Registry::default(),
            funcs: Registry::default(),
            individuals: Registry::default(),
            concepts: Registry::default(),
            closure: Vec::new(),
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn types(&self) -> &Registry<BaseType> {
        &self.types
    }

    pub fn worlds(&self) -> &Registry<World> {
        &self.worlds
    }

    /// Declared evolvents only; see [`Workspace::closure`] for the full set.
    pub fn evolvents(&self) -> &Registry<Evolvent> {
        &self.evolvents
    }

    pub fn funcs(&self) -> &Registry<FuncDecl> {
        &self.funcs
    }

    pub fn individuals(&self) -> &Registry<IndividualDecl> {
        &self.individuals
    }

    pub fn concepts(&self) -> &Registry<ConceptDecl> {
        &self.concepts
    }

    /// Identities, declared evolvents and all composites, one entry per
    /// distinct morphism.
    pub fn closure(&self) -> &[Evolvent] {
        &self.closure
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
            && self.worlds.is_empty()
            && self.evolvents.is_empty()
            && self.funcs.is_empty()
            && self.individuals.is_empty()
            && self.concepts.is_empty()
    }

    pub fn world(&self, name: &str) -> Result<&World> {
        self.worlds.get(name).ok_or_else(|| Error::unknown("world", &Symbol::new(name)))
    }

    pub fn base_type(&self, name: &str) -> Result<&BaseType> {
        self.types.get(name).ok_or_else(|| Error::unknown("type", &Symbol::new(name)))
    }

    pub fn individual(&self, name: &str) -> Result<&IndividualDecl> {
        self.individuals
            .get(name)
            .ok_or_else(|| Error::unknown("individual", &Symbol::new(name)))
    }

    pub fn concept(&self, name: &str) -> Result<&Concept> {
        self.concepts
            .get(name)
            .map(|c| &c.concept)
            .ok_or_else(|| Error::unknown("concept", &Symbol::new(name)))
    }

    pub fn func(&self, name: &str) -> Option<&FuncDecl> {
        self.funcs.get(name)
    }

    /// Morphisms of the closure landing in `w`.
    pub fn morphisms_into<'a>(&'a self, w: &'a Symbol) -> impl Iterator<Item = &'a Evolvent> + 'a {
        self.closure.iter().filter(move |e| e.target == *w)
    }

    /// The morphism used to read constants declared over `to` at world
    /// `from`: the identity when the worlds agree, otherwise the unique
    /// closure morphism `from -> to`.
    pub fn route(&self, from: &Symbol, to: &Symbol) -> Result<Evolvent> {
        if from == to {
            return Ok(identity_evolvent(self.world(from)?));
        }
        let routes: Vec<&Evolvent> = self
            .closure
            .iter()
            .filter(|e| e.source == *from && e.target == *to)
            .collect();
        match routes.as_slice() {
            [only] => Ok((*only).clone()),
            _ => Err(Error::UnresolvedWorld {
                from: from.clone(),
                to: to.clone(),
                routes: routes.len(),
            }),
        }
    }

    /// True when some closure morphism `from -> to` exists.
    pub fn reachable(&self, from: &Symbol, to: &Symbol) -> bool {
        from == to || self.closure.iter().any(|e| e.source == *from && e.target == *to)
    }

    /// Resolves `f`, `id_W`, or a composite path `f.g.h` (read `f . g . h`).
    pub fn resolve_evolvent(&self, path: &str) -> Result<Evolvent> {
        let mut acc: Option<Evolvent> = None;
        for part in path.split('.').rev() {
            let step = self.named_evolvent(part)?;
            acc = Some(match acc {
                None => step,
                Some(inner) => compose_evolvents(&inner, &step)?,
            });
        }
        let mut e = acc.ok_or_else(|| Error::unknown("evolvent", &Symbol::new(path)))?;
        e.name = Symbol::new(path);
        Ok(e)
    }

    fn named_evolvent(&self, name: &str) -> Result<Evolvent> {
        if let Some(e) = self.evolvents.get(name) {
            return Ok(e.clone());
        }
        if let Some(w) = name.strip_prefix("id_").and_then(|w| self.worlds.get(w)) {
            return Ok(identity_evolvent(w));
        }
        Err(Error::unknown("evolvent", &Symbol::new(name)))
    }

    /// True when `name` is a carrier element or a world index.
    pub fn is_atom_name(&self, name: &str) -> bool {
        self.types.values().any(|t| t.elements.iter().any(|e| e == name))
            || self.worlds.values().any(|w| w.indexes.iter().any(|i| i == name))
    }

    fn check_constant_name(&self, name: &Symbol) -> Result<()> {
        if self.individuals.contains(name) || self.concepts.contains(name) {
            return Err(Error::NameClash {
                namespace: "constant",
                name: name.clone(),
            });
        }
        if self.is_atom_name(name) {
            return Err(Error::NameClash {
                namespace: "element or index",
                name: name.clone(),
            });
        }
        Ok(())
    }

    fn check_atoms(&self, atoms: &[Symbol]) -> Result<()> {
        for a in atoms {
            if self.individuals.contains(a) || self.concepts.contains(a) {
                return Err(Error::NameClash {
                    namespace: "constant",
                    name: a.clone(),
                });
            }
        }
        Ok(())
    }

    fn check_sort_name(&self, name: &Symbol) -> Result<()> {
        if self.types.contains(name) {
            return Err(Error::NameClash { namespace: "type", name: name.clone() });
        }
        if self.worlds.contains(name) {
            return Err(Error::NameClash { namespace: "world", name: name.clone() });
        }
        Ok(())
    }

    pub fn declare_type(&mut self, name: impl Into<Symbol>, elements: Vec<Symbol>) -> Result<()> {
        let name = name.into();
        self.check_sort_name(&name)?;
        let t = BaseType::from_symbols(name.clone(), elements)?;
        self.check_atoms(&t.elements)?;
        self.types.insert(name, t);
        Ok(())
    }

    pub fn declare_world(&mut self, name: impl Into<Symbol>, indexes: Vec<Symbol>) -> Result<()> {
        let name = name.into();
        self.check_sort_name(&name)?;
        let w = World::from_symbols(name.clone(), indexes)?;
        self.check_atoms(&w.indexes)?;
        self.closure.push(identity_evolvent(&w));
        self.worlds.insert(name, w);
        Ok(())
    }

    pub fn declare_evolvent(
        &mut self,
        name: impl Into<Symbol>,
        source: &str,
        target: &str,
        map: Vec<(Symbol, Symbol)>,
    ) -> Result<()> {
        let name = name.into();
        if self.evolvents.contains(&name) {
            return Err(Error::NameClash { namespace: "evolvent", name });
        }
        if name.as_str().starts_with("id_") {
            return Err(Error::invalid(&name, "names starting with id_ are reserved for identities"));
        }
        let e = Evolvent::new(name.clone(), self.world(source)?, self.world(target)?, map)?;
        let mut next = self.clone();
        next.evolvents.insert(name, e);
        next.closure = next.compute_closure()?;
        next.rematerialize()?;
        *self = next;
        Ok(())
    }

    pub fn declare_func(
        &mut self,
        name: impl Into<Symbol>,
        domain: &str,
        codomain: &str,
        map: Vec<(Symbol, Symbol)>,
    ) -> Result<()> {
        let name = name.into();
        if self.funcs.contains(&name) {
            return Err(Error::NameClash { namespace: "function", name });
        }
        let dom = self.base_type(domain)?;
        let cod = self.base_type(codomain)?;
        let mut table = BTreeMap::new();
        for (x, y) in map {
            if !dom.contains(&x) {
                return Err(Error::invalid(&name, format!("{x} is not an element of type {}", dom.name)));
            }
            if !cod.contains(&y) {
                return Err(Error::invalid(&name, format!("{y} is not an element of type {}", cod.name)));
            }
            if table.insert(x.clone(), y).is_some() {
                return Err(Error::invalid(&name, format!("{x} is mapped twice")));
            }
        }
        if let Some(missing) = dom.elements.iter().find(|e| !table.contains_key(*e)) {
            return Err(Error::invalid(&name, format!("element {missing} has no image")));
        }
        let decl = FuncDecl {
            name: name.clone(),
            domain: dom.name.clone(),
            codomain: cod.name.clone(),
            map: table,
        };
        self.funcs.insert(name, decl);
        Ok(())
    }

    pub fn declare_individual(
        &mut self,
        name: impl Into<Symbol>,
        world: &str,
        ty: &str,
        map: Vec<(Symbol, Symbol)>,
    ) -> Result<()> {
        let name = name.into();
        self.check_constant_name(&name)?;
        let w = self.world(world)?;
        let t = self.base_type(ty)?;
        let mut table = BTreeMap::new();
        for (i, e) in map {
            if !w.contains(&i) {
                return Err(Error::invalid(&name, format!("{i} is not an index of world {}", w.name)));
            }
            if !t.contains(&e) {
                return Err(Error::invalid(&name, format!("{e} is not an element of type {}", t.name)));
            }
            if table.insert(i.clone(), e).is_some() {
                return Err(Error::invalid(&name, format!("index {i} is mapped twice")));
            }
        }
        if let Some(missing) = w.indexes.iter().find(|i| !table.contains_key(*i)) {
            return Err(Error::invalid(&name, format!("index {missing} has no value")));
        }
        let decl = IndividualDecl {
            name: name.clone(),
            ty: t.name.clone(),
            value: Individual {
                world: w.name.clone(),
                table,
            },
        };
        self.individuals.insert(name, decl);
        Ok(())
    }

    /// Comprehends `formula` over `var : sort` at `world` and stores the
    /// resulting concept under `name`.
    pub fn define_concept(
        &mut self,
        name: impl Into<Symbol>,
        var: impl Into<Symbol>,
        sort: SortExpr,
        world: &str,
        formula: Formula,
    ) -> Result<()> {
        let name = name.into();
        self.check_constant_name(&name)?;
        let world = self.world(world)?.name.clone();
        let concept = concepts::comprehend(self, &formula, &var.into(), &sort, &world)?;
        self.concepts.insert(name.clone(), ConceptDecl { name, concept });
        Ok(())
    }

    fn compute_closure(&self) -> Result<Vec<Evolvent>> {
        let mut out: Vec<Evolvent> = self.worlds.values().map(identity_evolvent).collect();
        let mut seen: BTreeSet<(Symbol, Symbol, BTreeMap<Symbol, Symbol>)> = out
            .iter()
            .map(|e| (e.source.clone(), e.target.clone(), e.map.clone()))
            .collect();
        let mut push = |e: Evolvent, out: &mut Vec<Evolvent>| -> bool {
            if seen.insert((e.source.clone(), e.target.clone(), e.map.clone())) {
                out.push(e);
                true
            } else {
                false
            }
        };
        for e in self.evolvents.values() {
            push(e.clone(), &mut out);
        }
        let mut frontier = 0;
        loop {
            let len = out.len();
            if len as u64 > self.cap {
                return Err(Error::EnumerationCapExceeded {
                    what: String::from("evolvent closure"),
                    cardinality: len as u128,
                    cap: self.cap,
                });
            }
            let mut added = Vec::new();
            for a in 0..len {
                for b in 0..len {
                    if a < frontier && b < frontier {
                        continue;
                    }
                    let (g, f) = (&out[a], &out[b]);
                    if g.target == f.source && !g.is_identity() && !f.is_identity() {
                        added.push(compose_evolvents(g, f)?);
                    }
                }
            }
            let mut grew = false;
            for e in added {
                grew |= push(e, &mut out);
            }
            frontier = len;
            if !grew {
                break;
            }
        }
        Ok(out)
    }

    fn rematerialize(&mut self) -> Result<()> {
        let names: Vec<Symbol> = self.concepts.iter().map(|(n, _)| n.clone()).collect();
        for name in names {
            let old = self.concept(&name)?.clone();
            let fresh = concepts::comprehend(self, &old.intension, &old.var, &old.sort, &old.world)?;
            if let Some(slot) = self.concepts.get_mut(&name) {
                slot.concept = fresh;
            }
        }
        Ok(())
    }

    /// Inserts an individual without validation. Only useful for building
    /// deliberately inconsistent workspaces for the typing checker.
    pub fn insert_individual_unchecked(&mut self, decl: IndividualDecl) {
        self.individuals.insert(decl.name.clone(), decl);
    }

    /// Inserts or replaces a concept without re-comprehending it.
    pub fn insert_concept_unchecked(&mut self, name: impl Into<Symbol>, concept: Concept) {
        let name = name.into();
        self.concepts.insert(name.clone(), ConceptDecl { name, concept });
    }

    /// Inserts an evolvent without validating its map; the closure is not
    /// recomputed.
    pub fn insert_evolvent_unchecked(&mut self, e: Evolvent) {
        self.evolvents.insert(e.name.clone(), e);
    }
}
