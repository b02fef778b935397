//! The command language. Declarations share their syntax with the workspace
//! file format; everything else is a query.

use std::path::PathBuf;

use vc_core::syntax::{is_identifier, parse_formula, parse_formula_with, parse_object, parse_sort};
use vc_core::{Formula, ObjectTerm, SortExpr, Symbol};

use crate::error::{Result, ShellError};

pub type Mapping = Vec<(Symbol, Symbol)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    DeclareType {
        name: Symbol,
        elements: Vec<Symbol>,
    },
    DeclareWorld {
        name: Symbol,
        indexes: Vec<Symbol>,
    },
    DeclareEvolvent {
        name: Symbol,
        source: Symbol,
        target: Symbol,
        map: Mapping,
    },
    DeclareFunc {
        name: Symbol,
        domain: Symbol,
        codomain: Symbol,
        map: Mapping,
    },
    DeclareIndividual {
        name: Symbol,
        world: Symbol,
        ty: Symbol,
        map: Mapping,
    },
    DefineConcept {
        name: Symbol,
        var: Symbol,
        sort: SortExpr,
        world: Symbol,
        formula: Formula,
    },
    /// `eval at W : phi`
    Eval { world: Symbol, formula: Formula },
    /// `eval along f : phi`, evaluated at the source of `f` under the
    /// shifted valuation.
    EvalShifted { path: String, formula: Formula },
    Materialize { concept: Symbol, target: Target },
    Instantiate { concept: Symbol, index: Symbol },
    Shift { individual: Symbol, path: String },
    Describe { world: Symbol, object: ObjectTerm },
    TypeCheck,
    Save(PathBuf),
    Load(PathBuf),
    List,
}

/// Where a concept is materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    /// The world the concept was comprehended at.
    Home,
    /// Another world, reached from the home world by its unique route.
    At(Symbol),
    /// Along an explicit evolvent path into the home world.
    Along(String),
}

impl Command {
    pub fn is_declaration(&self) -> bool {
        matches!(
            self,
            Command::DeclareType { .. }
                | Command::DeclareWorld { .. }
                | Command::DeclareEvolvent { .. }
                | Command::DeclareFunc { .. }
                | Command::DeclareIndividual { .. }
                | Command::DefineConcept { .. }
        )
    }
}

/// Parses one line. Blank lines and `#` comments yield `None`.
pub fn parse_command(line: &str) -> Result<Option<Command>> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let (word, rest) = match line.split_once(char::is_whitespace) {
        Some((w, r)) => (w, r.trim()),
        None => (line, ""),
    };
    let cmd = match word {
        "type" => {
            let (name, body) = split(rest, "=", "type T = { a, b }")?;
            Command::DeclareType {
                name: ident(name)?,
                elements: list(body)?,
            }
        }
        "world" => {
            let (name, body) = split(rest, "=", "world I = { i1, i2 }")?;
            Command::DeclareWorld {
                name: ident(name)?,
                indexes: list(body)?,
            }
        }
        "evolvent" => {
            let (name, source, target, map) = signature(rest, "evolvent f : B -> I = { b1 -> i1 }")?;
            Command::DeclareEvolvent { name, source, target, map }
        }
        "func" => {
            let (name, domain, codomain, map) = signature(rest, "func g : T -> T = { a -> b }")?;
            Command::DeclareFunc { name, domain, codomain, map }
        }
        "individual" => {
            let (name, world, ty, map) = signature(rest, "individual h : I -> T = { i1 -> a }")?;
            Command::DeclareIndividual { name, world, ty, map }
        }
        "concept" => concept(rest)?,
        "eval" => {
            let (head, body) = split(rest, ":", "eval at W : formula")?;
            match words(head).as_slice() {
                ["at", w] => Command::Eval {
                    world: ident(w)?,
                    formula: parse_formula(body)?,
                },
                ["along", f] => Command::EvalShifted {
                    path: path(f)?,
                    formula: parse_formula(body)?,
                },
                _ => return Err(usage("eval at W : formula | eval along f : formula")),
            }
        }
        "materialize" => {
            let target = match words(rest).as_slice() {
                [c] => (c.to_string(), Target::Home),
                [c, "at", w] => (c.to_string(), Target::At(ident(w)?)),
                [c, "along", f] => (c.to_string(), Target::Along(path(f)?)),
                _ => return Err(usage("materialize C [at W | along f]")),
            };
            Command::Materialize {
                concept: ident(&target.0)?,
                target: target.1,
            }
        }
        "instantiate" => match words(rest).as_slice() {
            [c, "at", i] => Command::Instantiate {
                concept: ident(c)?,
                index: ident(i)?,
            },
            _ => return Err(usage("instantiate C at i")),
        },
        "shift" => match words(rest).as_slice() {
            [h, "along", f] => Command::Shift {
                individual: ident(h)?,
                path: path(f)?,
            },
            _ => return Err(usage("shift h along f")),
        },
        "describe" => {
            let (head, body) = split(rest, ":", "describe at W : object")?;
            match words(head).as_slice() {
                ["at", w] => Command::Describe {
                    world: ident(w)?,
                    object: parse_object(body)?,
                },
                _ => return Err(usage("describe at W : object")),
            }
        }
        "typecheck" if rest.is_empty() => Command::TypeCheck,
        "list" if rest.is_empty() => Command::List,
        "save" if !rest.is_empty() => Command::Save(PathBuf::from(rest)),
        "load" if !rest.is_empty() => Command::Load(PathBuf::from(rest)),
        "typecheck" | "list" => return Err(usage(word)),
        "save" | "load" => return Err(usage(&format!("{word} <path>"))),
        other => return Err(ShellError::command(format!("unknown command {other}"))),
    };
    Ok(Some(cmd))
}

fn usage(form: &str) -> ShellError {
    ShellError::command(format!("expected `{form}`"))
}

fn words(s: &str) -> Vec<&str> {
    s.split_whitespace().collect()
}

fn split<'a>(s: &'a str, sep: &str, form: &str) -> Result<(&'a str, &'a str)> {
    s.split_once(sep)
        .map(|(l, r)| (l.trim(), r.trim()))
        .ok_or_else(|| usage(form))
}

fn ident(s: &str) -> Result<Symbol> {
    let s = s.trim();
    if is_identifier(s) {
        Ok(Symbol::new(s))
    } else {
        Err(ShellError::command(format!("`{s}` is not an identifier")))
    }
}

fn path(s: &str) -> Result<String> {
    for part in s.split('.') {
        ident(part)?;
    }
    Ok(s.to_string())
}

fn braced(s: &str) -> Result<&str> {
    s.trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .map(str::trim)
        .ok_or_else(|| ShellError::command(format!("expected a braced list, found `{}`", s.trim())))
}

fn list(s: &str) -> Result<Vec<Symbol>> {
    let inner = braced(s)?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(ident).collect()
}

fn mapping(s: &str) -> Result<Mapping> {
    let inner = braced(s)?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|entry| {
            let (l, r) = split(entry, "->", "x -> y")?;
            Ok((ident(l)?, ident(r)?))
        })
        .collect()
}

/// `name : A -> B = { ... }`
fn signature(s: &str, form: &str) -> Result<(Symbol, Symbol, Symbol, Mapping)> {
    let (head, body) = split(s, "=", form)?;
    let (name, arrow) = split(head, ":", form)?;
    let (a, b) = split(arrow, "->", form)?;
    Ok((ident(name)?, ident(a)?, ident(b)?, mapping(body)?))
}

/// `C over x : (I -> T) at I := phi`
fn concept(s: &str) -> Result<Command> {
    const FORM: &str = "concept C over x : (I -> T) at I := formula";
    let (head, body) = split(s, ":=", FORM)?;
    let (binding, sort_at) = split(head, ":", FORM)?;
    let (name, var) = match words(binding).as_slice() {
        [name, "over", var] => (ident(name)?, ident(var)?),
        _ => return Err(usage(FORM)),
    };
    let (sort, world) = sort_at
        .rsplit_once(" at ")
        .ok_or_else(|| usage(FORM))?;
    Ok(Command::DefineConcept {
        formula: parse_formula_with(body, core::slice::from_ref(&var))?,
        name,
        var,
        sort: parse_sort(sort.trim())?,
        world: ident(world)?,
    })
}
