//! Reference evaluator, written straight from the evaluation tables with its
//! own data layout: worlds are index lists, individuals are value vectors in
//! index order, morphisms are position maps. Every quantifier and every
//! implication is expanded by enumeration over a separately computed
//! composition closure. Meant for tiny fixtures only.

use std::cell::RefCell;
use std::rc::Rc;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::fixtures::Decls;
use vc_core::syntax::{parse_formula_with, parse_sort};
use vc_core::{Formula, ObjectTerm, SortExpr};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Morph {
    pub src: usize,
    pub tgt: usize,
    /// `map[k]` is the position in `tgt` of the image of index `k` of `src`.
    pub map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum V {
    Atom(String),
    /// world, values in index order
    Ind(usize, Vec<String>),
    Pair(Box<V>, Box<V>),
    /// world, members per closure morphism into the world
    Set(usize, BTreeMap<usize, BTreeSet<V>>),
    Bool(bool),
}

#[derive(Clone, Debug)]
struct Ctx {
    world: usize,
    consts: Vec<(String, V)>,
}

type Memo = HashMap<(String, usize), Rc<Vec<V>>>;

pub struct Model {
    pub types: Vec<(String, Vec<String>)>,
    pub worlds: Vec<(String, Vec<String>)>,
    pub morphs: Vec<Morph>,
    funcs: Vec<(String, BTreeMap<String, String>)>,
    inds: Vec<(String, usize, Vec<String>)>,
    concepts: Vec<(String, String, SortExpr, usize, Formula)>,
    init: Vec<Option<Ctx>>,
    memo: RefCell<Memo>,
}

pub type R<T> = Result<T, String>;

impl Model {
    pub fn new(decls: &Decls) -> Model {
        let types = decls
            .types
            .iter()
            .map(|(n, e)| (n.to_string(), e.iter().map(|s| s.to_string()).collect()))
            .collect();
        let worlds: Vec<(String, Vec<String>)> = decls
            .worlds
            .iter()
            .map(|(n, e)| (n.to_string(), e.iter().map(|s| s.to_string()).collect()))
            .collect();
        let wpos = |n: &str| worlds.iter().position(|(w, _)| w == n).unwrap();
        let mut morphs: Vec<Morph> = (0..worlds.len())
            .map(|w| Morph { src: w, tgt: w, map: (0..worlds[w].1.len()).collect() })
            .collect();
        for (_, s, t, m) in &decls.evolvents {
            let (s, t) = (wpos(s), wpos(t));
            let map = worlds[s]
                .1
                .iter()
                .map(|b| {
                    let img = m.iter().find(|(x, _)| x == b).unwrap().1;
                    worlds[t].1.iter().position(|i| i == img).unwrap()
                })
                .collect();
            let e = Morph { src: s, tgt: t, map };
            if !morphs.contains(&e) {
                morphs.push(e);
            }
        }
        // Naive closure: compose every pair until nothing new appears.
        loop {
            let mut new = Vec::new();
            for a in &morphs {
                for b in &morphs {
                    if a.tgt == b.src {
                        let c = Morph { src: a.src, tgt: b.tgt, map: a.map.iter().map(|&k| b.map[k]).collect() };
                        if !morphs.contains(&c) && !new.contains(&c) {
                            new.push(c);
                        }
                    }
                }
            }
            if new.is_empty() {
                break;
            }
            morphs.extend(new);
        }
        let funcs = decls
            .funcs
            .iter()
            .map(|(n, _, _, m)| (n.to_string(), m.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()))
            .collect();
        let inds = decls
            .individuals
            .iter()
            .map(|(n, w, _, m)| {
                let w = wpos(w);
                let vals = worlds[w].1.iter().map(|i| m.iter().find(|(x, _)| x == i).unwrap().1.to_string()).collect();
                (n.to_string(), w, vals)
            })
            .collect();
        let concepts = decls
            .concepts
            .iter()
            .map(|(n, x, s, w, text)| {
                let phi = parse_formula_with(text, &[vc_core::Symbol::new(x)]).unwrap();
                (n.to_string(), x.to_string(), parse_sort(s).unwrap(), wpos(w), phi)
            })
            .collect();
        let mut m = Model { types, worlds, morphs, funcs, inds, concepts, init: Vec::new(), memo: RefCell::new(HashMap::new()) };
        m.init = (0..m.worlds.len()).map(|w| m.initial(w, m.concepts.len()).ok()).collect();
        m
    }

    pub fn world(&self, name: &str) -> usize {
        self.worlds.iter().position(|(w, _)| w == name).unwrap()
    }

    fn morph_id(&self, m: &Morph) -> usize {
        self.morphs.iter().position(|x| x == m).expect("closure is complete")
    }

    pub fn into(&self, w: usize) -> Vec<usize> {
        (0..self.morphs.len()).filter(|&k| self.morphs[k].tgt == w).collect()
    }

    /// `a` then `b`: first `a: X -> Y`, then `b: Y -> Z`.
    fn then(&self, a: &Morph, b: &Morph) -> Morph {
        Morph { src: a.src, tgt: b.tgt, map: a.map.iter().map(|&k| b.map[k]).collect() }
    }

    fn route(&self, from: usize, to: usize) -> R<Morph> {
        if from == to {
            return Ok(Morph { src: from, tgt: from, map: (0..self.worlds[from].1.len()).collect() });
        }
        let found: Vec<&Morph> = self.morphs.iter().filter(|m| m.src == from && m.tgt == to).collect();
        if found.len() == 1 {
            Ok(found[0].clone())
        } else {
            Err(format!("{} routes", found.len()))
        }
    }

    /// Constants at world `w`, using only the first `upto` concepts.
    fn initial(&self, w: usize, upto: usize) -> R<Ctx> {
        let mut consts = Vec::new();
        for (n, u, vals) in &self.inds {
            let r = self.route(w, *u)?;
            consts.push((n.clone(), self.shift(&V::Ind(*u, vals.clone()), &r)));
        }
        for j in 0..upto {
            let (n, x, sort, u, phi) = &self.concepts[j];
            let r = self.route(w, *u)?;
            let home = self.initial(*u, j)?;
            let mut parts = BTreeMap::new();
            for k in self.into(w) {
                let km = self.then(&self.morphs[k], &r);
                let ctx = self.shift_ctx(&home, &km);
                let mut part = BTreeSet::new();
                for c in self.domain(sort, ctx.world)?.iter() {
                    let mut env = vec![(x.clone(), c.clone())];
                    if self.holds(phi, &ctx, &mut env)? {
                        part.insert(c.clone());
                    }
                }
                parts.insert(k, part);
            }
            consts.push((n.clone(), V::Set(w, parts)));
        }
        Ok(Ctx { world: w, consts })
    }

    pub fn shift(&self, v: &V, m: &Morph) -> V {
        match v {
            V::Atom(_) | V::Bool(_) => v.clone(),
            V::Ind(w, vals) => {
                assert_eq!(*w, m.tgt, "shift of an individual along a foreign morphism");
                V::Ind(m.src, m.map.iter().map(|&k| vals[k].clone()).collect())
            }
            V::Pair(l, r) => V::Pair(Box::new(self.shift(l, m)), Box::new(self.shift(r, m))),
            V::Set(w, parts) => {
                assert_eq!(*w, m.tgt);
                let mut out = BTreeMap::new();
                for k in self.into(m.src) {
                    let through = self.then(&self.morphs[k], m);
                    out.insert(k, parts[&self.morph_id(&through)].clone());
                }
                V::Set(m.src, out)
            }
        }
    }

    fn shift_ctx(&self, ctx: &Ctx, m: &Morph) -> Ctx {
        Ctx { world: m.src, consts: ctx.consts.iter().map(|(n, v)| (n.clone(), self.shift(v, m))).collect() }
    }

    fn atoms(&self, name: &str) -> R<Vec<String>> {
        if let Some((_, e)) = self.types.iter().find(|(n, _)| n == name) {
            return Ok(e.clone());
        }
        if let Some((_, e)) = self.worlds.iter().find(|(n, _)| n == name) {
            return Ok(e.clone());
        }
        Err(format!("unknown sort {name}"))
    }

    fn is_atom(&self, name: &str) -> bool {
        self.types.iter().chain(self.worlds.iter()).any(|(_, e)| e.iter().any(|x| x == name))
    }

    /// Values of `sort` at world `w`.
    pub fn domain(&self, sort: &SortExpr, w: usize) -> R<Rc<Vec<V>>> {
        let key = (sort.to_string(), w);
        if let Some(d) = self.memo.borrow().get(&key) {
            return Ok(d.clone());
        }
        let d = Rc::new(self.enumerate(sort, w)?);
        self.memo.borrow_mut().insert(key, d.clone());
        Ok(d)
    }

    fn enumerate(&self, sort: &SortExpr, w: usize) -> R<Vec<V>> {
        match sort {
            SortExpr::Base(n) => Ok(self.atoms(n.as_str())?.into_iter().map(V::Atom).collect()),
            SortExpr::Arrow(_, cod) => {
                let SortExpr::Base(t) = &**cod else { return Err("codomain".into()) };
                let values = self.atoms(t.as_str())?;
                let n = self.worlds[w].1.len();
                let mut out = vec![Vec::new()];
                for _ in 0..n {
                    let mut next = Vec::new();
                    for prefix in &out {
                        for v in &values {
                            let mut p: Vec<String> = prefix.clone();
                            p.push(v.clone());
                            next.push(p);
                        }
                    }
                    out = next;
                }
                Ok(out.into_iter().map(|vals| V::Ind(w, vals)).collect())
            }
            SortExpr::Product(l, r) => {
                let (ls, rs) = (self.enumerate(l, w)?, self.enumerate(r, w)?);
                Ok(ls.iter().flat_map(|a| rs.iter().map(move |b| V::Pair(Box::new(a.clone()), Box::new(b.clone())))).collect())
            }
            SortExpr::Power(inner) => {
                let stages = self.into(w);
                let doms: Vec<Vec<V>> =
                    stages.iter().map(|&k| self.enumerate(inner, self.morphs[k].src)).collect::<R<_>>()?;
                let bits: usize = doms.iter().map(Vec::len).sum();
                if bits > 20 {
                    return Err("power sort too large for the reference evaluator".into());
                }
                let mut out = Vec::new();
                // Every combination of subsets, then keep the compatible ones.
                for code in 0u64..(1u64 << bits) {
                    let mut parts = BTreeMap::new();
                    let mut off = 0;
                    for (s, &k) in stages.iter().enumerate() {
                        let set: BTreeSet<V> = doms[s]
                            .iter()
                            .enumerate()
                            .filter(|(m, _)| code & (1 << (off + m)) != 0)
                            .map(|(_, v)| v.clone())
                            .collect();
                        off += doms[s].len();
                        parts.insert(k, set);
                    }
                    if self.compatible(&parts) {
                        out.push(V::Set(w, parts));
                    }
                }
                Ok(out)
            }
        }
    }

    fn compatible(&self, parts: &BTreeMap<usize, BTreeSet<V>>) -> bool {
        for (&k, part) in parts {
            for m in self.into(self.morphs[k].src) {
                let mk = self.then(&self.morphs[m], &self.morphs[k]);
                let target = &parts[&self.morph_id(&mk)];
                if part.iter().any(|d| !target.contains(&self.shift(d, &self.morphs[m]))) {
                    return false;
                }
            }
        }
        true
    }

    /// Truth of `phi` at world `w` under `env` (values over `w`).
    pub fn eval(&self, phi: &Formula, w: usize, env: &[(String, V)]) -> R<bool> {
        let ctx = self.init[w].clone().ok_or("constants unavailable at this world")?;
        self.holds(phi, &ctx, &mut env.to_vec())
    }

    /// Truth of `phi` along morphism `m` (environment over its target).
    pub fn eval_along(&self, phi: &Formula, m: &Morph, env: &[(String, V)]) -> R<bool> {
        let ctx = self.init[m.tgt].clone().ok_or("constants unavailable at this world")?;
        let ctx = self.shift_ctx(&ctx, m);
        let mut env: Vec<(String, V)> = env.iter().map(|(n, v)| (n.clone(), self.shift(v, m))).collect();
        self.holds(phi, &ctx, &mut env)
    }

    pub fn object_at(&self, t: &ObjectTerm, w: usize) -> R<V> {
        let ctx = self.init[w].clone().ok_or("constants unavailable at this world")?;
        self.object(t, &ctx, &mut Vec::new())
    }

    fn holds(&self, phi: &Formula, ctx: &Ctx, env: &mut Vec<(String, V)>) -> R<bool> {
        Ok(match phi {
            Formula::Falsum => false,
            Formula::Equation(l, r) => self.object(l, ctx, env)? == self.object(r, ctx, env)?,
            Formula::Membership(e, s) => {
                let e = self.object(e, ctx, env)?;
                match self.object(s, ctx, env)? {
                    V::Set(w, parts) => parts[&self.identity(w)].contains(&e),
                    _ => return Err("membership in a non-set".into()),
                }
            }
            Formula::And(l, r) => {
                let a = self.holds(l, ctx, env)?;
                let b = self.holds(r, ctx, env)?;
                a && b
            }
            Formula::Or(l, r) => {
                let a = self.holds(l, ctx, env)?;
                let b = self.holds(r, ctx, env)?;
                a || b
            }
            Formula::Implies(l, r) => {
                let mut all = true;
                for k in self.into(ctx.world) {
                    let m = &self.morphs[k];
                    let c2 = self.shift_ctx(ctx, m);
                    let mut e2: Vec<(String, V)> = env.iter().map(|(n, v)| (n.clone(), self.shift(v, m))).collect();
                    let a = self.holds(l, &c2, &mut e2)?;
                    let b = self.holds(r, &c2, &mut e2)?;
                    all &= !a || b;
                }
                all
            }
            Formula::Forall(x, s, body) => {
                let mut all = true;
                for k in self.into(ctx.world) {
                    let m = &self.morphs[k];
                    let c2 = self.shift_ctx(ctx, m);
                    let base: Vec<(String, V)> = env.iter().map(|(n, v)| (n.clone(), self.shift(v, m))).collect();
                    for b in self.domain(s, m.src)?.iter() {
                        let mut e2 = base.clone();
                        e2.push((x.to_string(), b.clone()));
                        all &= self.holds(body, &c2, &mut e2)?;
                    }
                }
                all
            }
            Formula::Exists(x, s, body) => {
                let mut any = false;
                for a in self.domain(s, ctx.world)?.iter() {
                    env.push((x.to_string(), a.clone()));
                    let r = self.holds(body, ctx, env);
                    env.pop();
                    any |= r?;
                }
                any
            }
        })
    }

    fn identity(&self, w: usize) -> usize {
        self.morph_id(&Morph { src: w, tgt: w, map: (0..self.worlds[w].1.len()).collect() })
    }

    fn object(&self, t: &ObjectTerm, ctx: &Ctx, env: &mut Vec<(String, V)>) -> R<V> {
        match t {
            ObjectTerm::Var(v) => env
                .iter()
                .rev()
                .find(|(n, _)| n == v.as_str())
                .map(|(_, x)| x.clone())
                .ok_or_else(|| format!("unbound {v}")),
            ObjectTerm::Const(c) => self.constant(c.as_str(), ctx),
            ObjectTerm::FuncApp(g, a) => {
                let arg = self.object(a, ctx, env)?;
                if let Some((_, map)) = self.funcs.iter().find(|(n, _)| n == g.as_str()) {
                    return match arg {
                        V::Atom(e) => Ok(V::Atom(map[&e].clone())),
                        V::Ind(w, vals) => Ok(V::Ind(w, vals.iter().map(|e| map[e].clone()).collect())),
                        _ => Err("function on a non-element".into()),
                    };
                }
                let head = self.constant(g.as_str(), ctx)?;
                self.apply(head, arg)
            }
            ObjectTerm::Pair(l, r) => Ok(V::Pair(Box::new(self.object(l, ctx, env)?), Box::new(self.object(r, ctx, env)?))),
            ObjectTerm::Apply(f, a) => {
                let head = self.object(f, ctx, env)?;
                let arg = self.object(a, ctx, env)?;
                self.apply(head, arg)
            }
            ObjectTerm::Description(y, s, body) => {
                let mut found = Vec::new();
                for c in self.domain(s, ctx.world)?.iter() {
                    env.push((y.to_string(), c.clone()));
                    let r = self.holds(body, ctx, env);
                    env.pop();
                    if r? {
                        found.push(c.clone());
                    }
                }
                if found.len() == 1 {
                    Ok(found.pop().unwrap())
                } else {
                    Err(format!("improper description: {} witnesses", found.len()))
                }
            }
        }
    }

    fn constant(&self, c: &str, ctx: &Ctx) -> R<V> {
        if let Some((_, v)) = ctx.consts.iter().find(|(n, _)| n == c) {
            return Ok(v.clone());
        }
        if self.is_atom(c) {
            return Ok(V::Atom(c.to_string()));
        }
        Err(format!("unknown constant {c}"))
    }

    fn apply(&self, head: V, arg: V) -> R<V> {
        match (head, arg) {
            (V::Ind(w, vals), V::Atom(i)) => {
                let k = self.worlds[w].1.iter().position(|x| *x == i).ok_or("index outside the world")?;
                Ok(V::Atom(vals[k].clone()))
            }
            (V::Set(w, parts), arg) => Ok(V::Bool(parts[&self.identity(w)].contains(&arg))),
            _ => Err("bad application".into()),
        }
    }

    /// The value of an individual as the library represents it.
    pub fn to_denotation(&self, v: &V) -> vc_core::Denotation {
        match v {
            V::Atom(a) => vc_core::Denotation::element(a),
            V::Ind(w, vals) => {
                let world = &self.worlds[*w];
                let table = world.1.iter().zip(vals).map(|(i, e)| (i.as_str().into(), e.as_str().into()));
                vc_core::Denotation::Individual(vc_core::Individual::new(world.0.as_str(), table))
            }
            V::Pair(l, r) => vc_core::Denotation::pair(self.to_denotation(l), self.to_denotation(r)),
            V::Bool(b) => vc_core::Denotation::Truth(*b),
            V::Set(..) => panic!("sets are compared by their members"),
        }
    }

    /// Members of a set at its own world.
    pub fn members(&self, v: &V) -> BTreeSet<V> {
        match v {
            V::Set(w, parts) => parts[&self.identity(*w)].clone(),
            _ => panic!("not a set"),
        }
    }
}
