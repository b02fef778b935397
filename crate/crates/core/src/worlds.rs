//! Worlds, evolvents and variable domains.
//!
//! A world is a finite set of indexes (database configurations). An evolvent
//! `f: B -> I` is a total map from the indexes of `B` to those of `I`, read as
//! events evolving *from* `I` *to* `B`. The individuals `h: I -> T` form the
//! variable domain `H_T(I)`, and `H_T(f)` sends `h` to `h . f`, which makes
//! `H_T` contravariant.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// A declared type symbol with its finite carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseType {
    pub name: Symbol,
    pub elements: Vec<Symbol>,
}

impl BaseType {
    pub fn new(name: impl Into<Symbol>, elements: &[&str]) -> Result<Self> {
        let name = name.into();
        let elements: Vec<Symbol> = elements.iter().map(|e| Symbol::new(e)).collect();
        check_unique(&name, &elements, "element")?;
        Ok(BaseType { name, elements })
    }

    pub fn from_symbols(name: Symbol, elements: Vec<Symbol>) -> Result<Self> {
        check_unique(&name, &elements, "element")?;
        Ok(BaseType { name, elements })
    }

    pub fn contains(&self, e: &Symbol) -> bool {
        self.elements.contains(e)
    }
}

fn check_unique(owner: &Symbol, items: &[Symbol], what: &str) -> Result<()> {
    let mut seen = BTreeSet::new();
    for it in items {
        if !seen.insert(it) {
            return Err(Error::invalid(owner, format!("duplicate {what} {it}")));
        }
    }
    Ok(())
}

/// A finite, ordered set of indexes. May be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct World {
    pub name: Symbol,
    pub indexes: Vec<Symbol>,
}

impl World {
    pub fn new(name: impl Into<Symbol>, indexes: &[&str]) -> Result<Self> {
        Self::from_symbols(name.into(), indexes.iter().map(|i| Symbol::new(i)).collect())
    }

    pub fn from_symbols(name: Symbol, indexes: Vec<Symbol>) -> Result<Self> {
        check_unique(&name, &indexes, "index")?;
        Ok(World { name, indexes })
    }

    pub fn contains(&self, i: &Symbol) -> bool {
        self.indexes.contains(i)
    }
}

/// A morphism `f: source -> target` between worlds.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Evolvent {
    pub name: Symbol,
    pub source: Symbol,
    pub target: Symbol,
    pub map: BTreeMap<Symbol, Symbol>,
}

impl Evolvent {
    /// Builds an evolvent, checking that `map` is total on `source` and lands
    /// in `target`.
    pub fn new(
        name: impl Into<Symbol>,
        source: &World,
        target: &World,
        map: impl IntoIterator<Item = (Symbol, Symbol)>,
    ) -> Result<Self> {
        let name = name.into();
        let mut table = BTreeMap::new();
        for (b, i) in map {
            if !source.contains(&b) {
                return Err(Error::invalid(&name, format!("{b} is not an index of world {}", source.name)));
            }
            if !target.contains(&i) {
                return Err(Error::invalid(&name, format!("{i} is not an index of world {}", target.name)));
            }
            if table.insert(b.clone(), i).is_some() {
                return Err(Error::invalid(&name, format!("index {b} is mapped twice")));
            }
        }
        if let Some(missing) = source.indexes.iter().find(|b| !table.contains_key(*b)) {
            return Err(Error::invalid(&name, format!("index {missing} of world {} has no image", source.name)));
        }
        Ok(Evolvent {
            name,
            source: source.name.clone(),
            target: target.name.clone(),
            map: table,
        })
    }

    pub fn apply(&self, b: &Symbol) -> Option<&Symbol> {
        self.map.get(b)
    }

    /// Same underlying morphism, names ignored.
    pub fn same_morphism(&self, other: &Evolvent) -> bool {
        self.source == other.source && self.target == other.target && self.map == other.map
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.map.iter().all(|(b, i)| b == i)
    }

    /// Indexes of the source that map to `i`.
    pub fn fiber(&self, i: &Symbol) -> Vec<&Symbol> {
        self.map.iter().filter(|(_, t)| *t == i).map(|(b, _)| b).collect()
    }
}

/// The identity evolvent `1_W`, named `id_W`.
pub fn identity_evolvent(w: &World) -> Evolvent {
    Evolvent {
        name: Symbol::from(format!("id_{}", w.name)),
        source: w.name.clone(),
        target: w.name.clone(),
        map: w.indexes.iter().map(|i| (i.clone(), i.clone())).collect(),
    }
}

/// `f . g : C -> I` for `g: C -> B` and `f: B -> I`, named `f.g`.
pub fn compose_evolvents(g: &Evolvent, f: &Evolvent) -> Result<Evolvent> {
    if g.target != f.source {
        return Err(Error::CompositionMismatch {
            outer: f.name.clone(),
            inner: g.name.clone(),
            inner_target: g.target.clone(),
            outer_source: f.source.clone(),
        });
    }
    let mut map = BTreeMap::new();
    for (c, b) in &g.map {
        let i = f.map.get(b).ok_or_else(|| Error::UnknownIndex {
            world: f.source.clone(),
            index: b.clone(),
        })?;
        map.insert(c.clone(), i.clone());
    }
    Ok(Evolvent {
        name: Symbol::from(format!("{}.{}", f.name, g.name)),
        source: g.source.clone(),
        target: f.target.clone(),
        map,
    })
}

/// A total function from the indexes of a world to carrier elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Individual {
    pub world: Symbol,
    pub table: BTreeMap<Symbol, Symbol>,
}

impl Individual {
    pub fn new(world: impl Into<Symbol>, table: impl IntoIterator<Item = (Symbol, Symbol)>) -> Self {
        Individual {
            world: world.into(),
            table: table.into_iter().collect(),
        }
    }

    /// Convenience constructor from string pairs.
    pub fn from_pairs(world: &str, pairs: &[(&str, &str)]) -> Self {
        Individual::new(
            world,
            pairs.iter().map(|(i, e)| (Symbol::new(i), Symbol::new(e))),
        )
    }

    pub fn at(&self, i: &Symbol) -> Option<&Symbol> {
        self.table.get(i)
    }

    /// The graph `{[i, h(i)]}`: the pair reading of the individual.
    pub fn graph(&self) -> Vec<(Symbol, Symbol)> {
        self.table.iter().map(|(i, e)| (i.clone(), e.clone())).collect()
    }

    /// Total on `w` and valued in `carrier`.
    pub fn is_total_on(&self, w: &World) -> bool {
        self.world == w.name
            && w.indexes.iter().all(|i| self.table.contains_key(i))
            && self.table.len() == w.indexes.len()
    }

    pub fn valued_in(&self, carrier: &[Symbol]) -> bool {
        self.table.values().all(|e| carrier.contains(e))
    }

    /// Renders as `{i1 -> a, i2 -> b}` in the given index order.
    pub fn render(&self, order: &[Symbol]) -> String {
        let mut out = String::from("{");
        let mut first = true;
        for i in order {
            if let Some(e) = self.table.get(i) {
                if !first {
                    out.push_str(", ");
                }
                first = false;
                out.push_str(&format!("{i} -> {e}"));
            }
        }
        out.push('}');
        out
    }
}

impl fmt::Display for Individual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (i, e)) in self.table.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i} -> {e}")?;
        }
        write!(f, "}}")
    }
}

/// `H_T(I)`: every total function from the world's indexes to the carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableDomain {
    pub sort: Symbol,
    pub world: Symbol,
    pub members: Vec<Individual>,
}

/// `|carrier|^|indexes|`, saturating.
pub fn domain_cardinality(carrier_len: usize, index_count: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..index_count {
        acc = acc.saturating_mul(carrier_len as u128);
    }
    acc
}

/// All tables `indexes -> values` in lexicographic order: the first index
/// varies slowest, values follow their declaration order.
pub fn enumerate_tables<'a, V: Clone + 'a>(
    indexes: &'a [Symbol],
    values: &'a [V],
) -> impl Iterator<Item = Vec<(Symbol, V)>> + 'a {
    let n = indexes.len();
    let mut digits: Option<Vec<usize>> = if values.is_empty() && n > 0 {
        None
    } else {
        Some(alloc::vec![0; n])
    };
    core::iter::from_fn(move || {
        let current = digits.as_mut()?;
        let row: Vec<(Symbol, V)> = indexes
            .iter()
            .zip(current.iter())
            .map(|(i, &d)| (i.clone(), values[d].clone()))
            .collect();
        let mut pos = n;
        loop {
            if pos == 0 {
                digits = None;
                break;
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < values.len() {
                break;
            }
            current[pos] = 0;
        }
        Some(row)
    })
}

pub fn enumerate_domain(t: &BaseType, w: &World, cap: u64) -> Result<VariableDomain> {
    let cardinality = domain_cardinality(t.elements.len(), w.indexes.len());
    if cardinality > cap as u128 {
        return Err(Error::EnumerationCapExceeded {
            what: format!("H_{}({})", t.name, w.name),
            cardinality,
            cap,
        });
    }
    let members = enumerate_tables(&w.indexes, &t.elements)
        .map(|row| Individual::new(w.name.clone(), row))
        .collect();
    Ok(VariableDomain {
        sort: t.name.clone(),
        world: w.name.clone(),
        members,
    })
}

/// `H_T(f)(h) = h . f`.
pub fn shift_individual(h: &Individual, f: &Evolvent) -> Result<Individual> {
    if h.world != f.target {
        return Err(Error::WorldMismatch {
            expected: f.target.clone(),
            found: h.world.clone(),
        });
    }
    let mut table = BTreeMap::new();
    for (b, i) in &f.map {
        let e = h.table.get(i).ok_or_else(|| Error::UnknownIndex {
            world: h.world.clone(),
            index: i.clone(),
        })?;
        table.insert(b.clone(), e.clone());
    }
    Ok(Individual {
        world: f.source.clone(),
        table,
    })
}

/// True when `h` (over `f`'s source) is constant on every fiber of `f`, i.e.
/// lies in the image of `H_T(f)`.
pub fn in_shift_image(h: &Individual, f: &Evolvent) -> bool {
    let mut seen: BTreeMap<&Symbol, &Symbol> = BTreeMap::new();
    for (b, i) in &f.map {
        let Some(e) = h.table.get(b) else { return false };
        match seen.get(i) {
            Some(prev) if *prev != e => return false,
            _ => {
                seen.insert(i, e);
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    /// `p([i, h(i)]) = i`
    P,
    /// `q([i, h(i)]) = h(i)`
    Q,
}

pub fn project(pair: &(Symbol, Symbol), which: Projection) -> &Symbol {
    match which {
        Projection::P => &pair.0,
        Projection::Q => &pair.1,
    }
}

/// `A_i = { h(i) | h in declared }`, the actual objects at index `i`.
pub fn actual_objects(w: &World, i: &Symbol, declared: &[Individual]) -> Result<BTreeSet<Symbol>> {
    if !w.contains(i) {
        return Err(Error::UnknownIndex {
            world: w.name.clone(),
            index: i.clone(),
        });
    }
    let mut out = BTreeSet::new();
    for h in declared {
        if h.world != w.name {
            return Err(Error::WorldMismatch {
                expected: w.name.clone(),
                found: h.world.clone(),
            });
        }
        if let Some(e) = h.at(i) {
            out.insert(e.clone());
        }
    }
    Ok(out)
}
