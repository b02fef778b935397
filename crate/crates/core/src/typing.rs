//! `Type_of` / `Instance_of` judgments and the domain equations relating
//! assignments, individuals, pairs and the concept species.
//!
//! | subject                     | type              | rule                        |
//! |-----------------------------|-------------------|-----------------------------|
//! | index `i` of `I`            | `I`               | `type-of-assignment`, `instance-of` |
//! | value `h(i)`                | `T`               | `type-of-value`             |
//! | pair `[i, h(i)]`            | `I * T`           | `type-of-pair`, `pair-projection` |
//! | individual `h`              | `(I -> T)`        | `totality`, `codomain`      |
//! | concept `C`                 | `[(I -> T)]`      | `type-of-concept`, `concept-coherence` |
//! | member `h` of `C`           | `C`               | `individual-in-concept`     |
//! | indexed concept `C@i`       | `[T]`             | `type-of-indexed-concept`   |
//! | variable concept `view(C)`  | `[I * T]`         | `type-of-variable-concept`  |
//! | row `[i, e]` of `view(C)`   | `I * T`           | `individual-concept`        |
//! | evolvent `f: B -> I`        | `(B -> I)`        | `evolvent-total`            |

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::concepts::{self, Concept};
use crate::error::{Error, Result};
use crate::symbol::Symbol;
use crate::syntax::SortExpr;
use crate::workspace::Workspace;
use crate::worlds::{project, Projection};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entity {
    Index { world: Symbol, index: Symbol },
    Element { ty: Symbol, element: Symbol },
    Individual(Symbol),
    /// `h(i)`
    Value { individual: Symbol, index: Symbol },
    /// `[i, h(i)]`
    Pair { individual: Symbol, index: Symbol },
    Concept(Symbol),
    IndexedConcept { concept: Symbol, index: Symbol },
    VariableConcept(Symbol),
}

impl fmt::Display for Entity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entity::Index { index, .. } => write!(f, "{index}"),
            Entity::Element { element, .. } => write!(f, "{element}"),
            Entity::Individual(h) => write!(f, "{h}"),
            Entity::Value { individual, index } => write!(f, "{individual}({index})"),
            Entity::Pair { individual, index } => write!(f, "[{index}, {individual}({index})]"),
            Entity::Concept(c) => write!(f, "{c}"),
            Entity::IndexedConcept { concept, index } => write!(f, "{concept}@{index}"),
            Entity::VariableConcept(c) => write!(f, "view({c})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypingJudgment {
    pub subject: String,
    pub verdict: SortExpr,
    pub rule: &'static str,
    pub note: Option<&'static str>,
}

const CONCEPT_NOTE: &str =
    "per index, a concept instantiates to a member of [T]; as a whole it is a set of individuals";

fn concept_type(ws: &Workspace, c: &Concept) -> Result<(Symbol, Symbol)> {
    let t = c
        .carrier()
        .cloned()
        .ok_or_else(|| Error::sort(format!("concept sort {} has no carrier type", c.sort)))?;
    let w = ws.world(&c.world)?;
    Ok((w.name.clone(), t))
}

fn arrow(w: &Symbol, t: &Symbol) -> SortExpr {
    SortExpr::Arrow(w.clone(), alloc::boxed::Box::new(SortExpr::Base(t.clone())))
}

fn product(w: &Symbol, t: &Symbol) -> SortExpr {
    SortExpr::product(SortExpr::Base(w.clone()), SortExpr::Base(t.clone()))
}

/// The judgment the table assigns to a registered entity.
pub fn type_of(ws: &Workspace, entity: &Entity) -> Result<TypingJudgment> {
    let unknown = || Error::UnknownEntity(format!("{entity}"));
    let judgment = |verdict, rule| TypingJudgment {
        subject: format!("{entity}"),
        verdict,
        rule,
        note: None,
    };
    match entity {
        Entity::Index { world, index } => {
            let w = ws.worlds().get(world).ok_or_else(unknown)?;
            if !w.contains(index) {
                return Err(unknown());
            }
            Ok(judgment(SortExpr::Base(w.name.clone()), "type-of-assignment"))
        }
        Entity::Element { ty, element } => {
            let t = ws.types().get(ty).ok_or_else(unknown)?;
            if !t.contains(element) {
                return Err(unknown());
            }
            Ok(judgment(SortExpr::Base(t.name.clone()), "type-of-element"))
        }
        Entity::Individual(h) => {
            let d = ws.individuals().get(h).ok_or_else(unknown)?;
            Ok(judgment(arrow(&d.value.world, &d.ty), "type-of-individual"))
        }
        Entity::Value { individual, index } => {
            let d = ws.individuals().get(individual).ok_or_else(unknown)?;
            d.value.at(index).ok_or_else(unknown)?;
            Ok(judgment(SortExpr::Base(d.ty.clone()), "type-of-value"))
        }
        Entity::Pair { individual, index } => {
            let d = ws.individuals().get(individual).ok_or_else(unknown)?;
            d.value.at(index).ok_or_else(unknown)?;
            Ok(judgment(product(&d.value.world, &d.ty), "type-of-pair"))
        }
        Entity::Concept(c) => {
            let c = &ws.concepts().get(c).ok_or_else(unknown)?.concept;
            let (w, t) = concept_type(ws, c)?;
            let mut j = judgment(SortExpr::power(arrow(&w, &t)), "type-of-concept");
            j.note = Some(CONCEPT_NOTE);
            Ok(j)
        }
        Entity::IndexedConcept { concept, index } => {
            let c = &ws.concepts().get(concept).ok_or_else(unknown)?.concept;
            let (w, t) = concept_type(ws, c)?;
            if !ws.world(&w)?.contains(index) {
                return Err(unknown());
            }
            Ok(judgment(SortExpr::power(SortExpr::Base(t)), "type-of-indexed-concept"))
        }
        Entity::VariableConcept(concept) => {
            let c = &ws.concepts().get(concept).ok_or_else(unknown)?.concept;
            let (w, t) = concept_type(ws, c)?;
            Ok(judgment(SortExpr::power(product(&w, &t)), "type-of-variable-concept"))
        }
    }
}

/// `Instance_of(i) = I`.
pub fn instance_of(ws: &Workspace, world: &Symbol, index: &Symbol) -> Result<TypingJudgment> {
    let mut j = type_of(
        ws,
        &Entity::Index {
            world: world.clone(),
            index: index.clone(),
        },
    )?;
    j.rule = "instance-of";
    Ok(j)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportLine {
    pub subject: String,
    pub verdict: String,
    pub rule: &'static str,
    pub pass: bool,
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "JUDGMENT {} : {} [{}] {}",
            self.subject,
            self.verdict,
            self.rule,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TypingReport {
    pub lines: Vec<ReportLine>,
}

impl TypingReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportLine> {
        self.lines.iter().filter(|l| !l.pass)
    }

    fn push(&mut self, subject: impl fmt::Display, verdict: impl fmt::Display, rule: &'static str, pass: bool) {
        self.lines.push(ReportLine {
            subject: format!("{subject}"),
            verdict: format!("{verdict}"),
            rule,
            pass,
        });
    }
}

impl fmt::Display for TypingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Checks every registered entity against the judgment table. Failures are
/// report lines, never errors.
pub fn check_workspace(ws: &Workspace) -> TypingReport {
    let mut report = TypingReport::default();

    for w in ws.worlds().values() {
        for i in &w.indexes {
            report.push(i, &w.name, "type-of-assignment", true);
            report.push(i, &w.name, "instance-of", true);
        }
    }

    for (name, e) in ws.evolvents().iter() {
        let verdict = format!("({} -> {})", e.source, e.target);
        let pass = match (ws.worlds().get(&e.source), ws.worlds().get(&e.target)) {
            (Some(src), Some(tgt)) => {
                src.indexes.iter().all(|b| e.map.get(b).is_some_and(|i| tgt.contains(i)))
                    && e.map.len() == src.indexes.len()
            }
            _ => false,
        };
        report.push(name, verdict, "evolvent-total", pass);
    }

    for (name, d) in ws.individuals().iter() {
        let verdict = arrow(&d.value.world, &d.ty);
        let world = ws.worlds().get(&d.value.world);
        let carrier = ws.types().get(&d.ty);
        let total = world.is_some_and(|w| d.value.is_total_on(w));
        let valued = carrier.is_some_and(|t| d.value.valued_in(&t.elements));
        report.push(name, &verdict, "totality", total);
        report.push(name, &verdict, "codomain", valued);
        if let Some(w) = world {
            for i in &w.indexes {
                let value = d.value.at(i);
                let in_type = value.is_some_and(|e| carrier.is_some_and(|t| t.contains(e)));
                report.push(format!("{name}({i})"), &d.ty, "type-of-value", in_type);
                report.push(
                    format!("[{i}, {name}({i})]"),
                    product(&w.name, &d.ty),
                    "type-of-pair",
                    in_type,
                );
                let recovered = value.is_some_and(|e| {
                    let pair = (i.clone(), e.clone());
                    project(&pair, Projection::P) == i && project(&pair, Projection::Q) == e
                });
                report.push(
                    format!("[{i}, {name}({i})]"),
                    product(&w.name, &d.ty),
                    "pair-projection",
                    recovered,
                );
            }
        }
    }

    for (name, decl) in ws.concepts().iter() {
        check_concept(ws, name, &decl.concept, &mut report);
    }
    report
}

fn check_concept(ws: &Workspace, name: &Symbol, c: &Concept, report: &mut TypingReport) {
    let Ok((w, t)) = concept_type(ws, c) else {
        report.push(name, &c.sort, "type-of-concept", false);
        return;
    };
    let world = ws.worlds().get(&w);
    let carrier = ws.types().get(&t);
    let well_typed = c.extension.iter().all(|h| {
        world.is_some_and(|w| h.is_total_on(w)) && carrier.is_some_and(|t| h.valued_in(&t.elements))
    });
    report.push(name, SortExpr::power(arrow(&w, &t)), "type-of-concept", well_typed);

    let coherent = concepts::comprehend(ws, &c.intension, &c.var, &c.sort, &c.world)
        .map(|fresh| fresh.extension == c.extension)
        .unwrap_or(false);
    report.push(name, SortExpr::power(arrow(&w, &t)), "concept-coherence", coherent);

    let ev = crate::eval::Evaluator::new(ws);
    for h in &c.extension {
        let env = crate::eval::Environment::new(c.world.clone())
            .bind(c.var.clone(), crate::eval::Denotation::Individual(h.clone()));
        let member = ev.eval_formula(&c.intension, &c.world, &env).unwrap_or(false);
        report.push(h, name, "individual-in-concept", member);
    }

    let Some(world) = world else { return };
    let mut rows_ok = true;
    for i in &world.indexes {
        let elements: Vec<&Symbol> = c.extension.iter().filter_map(|h| h.at(i)).collect();
        let ok = elements.iter().all(|e| carrier.is_some_and(|t| t.contains(e)));
        report.push(
            format!("{name}@{i}"),
            SortExpr::power(SortExpr::Base(t.clone())),
            "type-of-indexed-concept",
            ok,
        );
        rows_ok &= ok;
    }
    if let Ok(vc) = concepts::variable_concept(ws, c) {
        for (i, e) in vc.rows() {
            let ok = world.contains(&i) && carrier.is_some_and(|t| t.contains(&e));
            report.push(format!("[{i}, {e}]"), product(&w, &t), "individual-concept", ok);
            rows_ok &= ok;
        }
    }
    report.push(
        format!("view({name})"),
        SortExpr::power(product(&w, &t)),
        "type-of-variable-concept",
        rows_ok,
    );
}
