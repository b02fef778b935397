use std::fmt::Write as _;

use vc_core::concepts::{f_concept, instantiate, variable_concept};
use vc_core::typing::check_workspace;
use vc_core::worlds::shift_individual;
use vc_core::{Concept, Denotation, Environment, Evaluator, Individual, Workspace};

use crate::command::{parse_command, Command, Target};
use crate::error::{Result, ShellError};
use crate::persist;

/// How concept extensions are printed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Format {
    /// One individual per line.
    #[default]
    Text,
    /// One `[index, element]` row per line of the variable concept.
    Rows,
}

/// A workspace plus output settings. Every command either succeeds or leaves
/// the workspace untouched.
#[derive(Debug, Clone, Default)]
pub struct Session {
    pub workspace: Workspace,
    pub format: Format,
}

impl Session {
    pub fn new(workspace: Workspace) -> Self {
        Session {
            workspace,
            format: Format::Text,
        }
    }

    pub fn with_format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }

    /// Parses and runs one line, returning its output (possibly empty).
    pub fn exec_line(&mut self, line: &str) -> Result<String> {
        match parse_command(line)? {
            Some(cmd) => self.exec(cmd),
            None => Ok(String::new()),
        }
    }

    pub fn exec(&mut self, cmd: Command) -> Result<String> {
        if cmd.is_declaration() {
            let mut next = self.workspace.clone();
            declare(&mut next, cmd)?;
            self.workspace = next;
            return Ok(String::new());
        }
        match cmd {
            Command::Load(path) => {
                self.workspace = persist::load(&path)?;
                Ok(String::new())
            }
            Command::Save(path) => {
                persist::save(&self.workspace, &path)?;
                Ok(String::new())
            }
            query => query_output(&self.workspace, self.format, query),
        }
    }
}

/// Applies a declaration to `ws`. Non-declarations are rejected.
pub fn declare(ws: &mut Workspace, cmd: Command) -> Result<()> {
    match cmd {
        Command::DeclareType { name, elements } => ws.declare_type(name, elements)?,
        Command::DeclareWorld { name, indexes } => ws.declare_world(name, indexes)?,
        Command::DeclareEvolvent { name, source, target, map } => ws.declare_evolvent(name, &source, &target, map)?,
        Command::DeclareFunc { name, domain, codomain, map } => ws.declare_func(name, &domain, &codomain, map)?,
        Command::DeclareIndividual { name, world, ty, map } => ws.declare_individual(name, &world, &ty, map)?,
        Command::DefineConcept { name, var, sort, world, formula } => {
            ws.define_concept(name, var, sort, &world, formula)?
        }
        other => return Err(ShellError::command(format!("{other:?} is not a declaration"))),
    }
    Ok(())
}

fn render_individual(ws: &Workspace, h: &Individual) -> String {
    match ws.world(&h.world) {
        Ok(w) => h.render(&w.indexes),
        Err(_) => h.to_string(),
    }
}

fn query_output(ws: &Workspace, format: Format, cmd: Command) -> Result<String> {
    let mut out = String::new();
    match cmd {
        Command::Eval { world, formula } => {
            let ok = Evaluator::new(ws).eval_formula(&formula, &world, &Environment::new(world.clone()))?;
            let _ = writeln!(out, "{ok}");
        }
        Command::EvalShifted { path, formula } => {
            let f = ws.resolve_evolvent(&path)?;
            let env = Environment::new(f.target.clone());
            let ok = Evaluator::new(ws).eval_shifted(&formula, &f, &env)?;
            let _ = writeln!(out, "{ok}");
        }
        Command::Materialize { concept, target } => {
            let c = ws.concept(&concept)?;
            let shown = match target {
                Target::Home => c.clone(),
                Target::At(w) if w == c.world => c.clone(),
                Target::At(w) => {
                    let f = ws.route(&w, &c.world)?;
                    shifted(ws, c, &f)?
                }
                Target::Along(path) => {
                    let f = ws.resolve_evolvent(&path)?;
                    shifted(ws, c, &f)?
                }
            };
            match format {
                Format::Text => {
                    for h in &shown.extension {
                        let _ = writeln!(out, "{}", render_individual(ws, h));
                    }
                }
                Format::Rows => {
                    for (i, e) in variable_concept(ws, &shown)?.rows() {
                        let _ = writeln!(out, "[{i}, {e}]");
                    }
                }
            }
        }
        Command::Instantiate { concept, index } => {
            let ic = instantiate(ws, ws.concept(&concept)?, &index)?;
            let items: Vec<&str> = ic.elements.iter().map(|e| e.as_str()).collect();
            let _ = writeln!(out, "{{{}}}", items.join(", "));
        }
        Command::Shift { individual, path } => {
            let f = ws.resolve_evolvent(&path)?;
            let moved = shift_individual(&ws.individual(&individual)?.value, &f)?;
            let _ = writeln!(out, "{}", render_individual(ws, &moved));
        }
        Command::Describe { world, object } => {
            let d = Evaluator::new(ws).eval_object(&object, &world, &Environment::new(world.clone()))?;
            let text = match &d {
                Denotation::Individual(h) => render_individual(ws, h),
                other => other.to_string(),
            };
            let _ = writeln!(out, "{text}");
        }
        Command::TypeCheck => {
            let report = check_workspace(ws);
            let failures = report.failures().count();
            if failures > 0 {
                return Err(ShellError::TypeCheck {
                    report: report.to_string(),
                    failures,
                });
            }
            out = report.to_string();
        }
        Command::List => {
            out = persist::render(ws);
            let names: Vec<&str> = ws.closure().iter().map(|e| e.name.as_str()).collect();
            let _ = writeln!(out, "# closure: {}", names.join(", "));
        }
        other => return Err(ShellError::command(format!("{other:?} cannot be run as a query"))),
    }
    Ok(out)
}

/// The concept as seen from the source of `f`: its f-concept.
fn shifted(ws: &Workspace, c: &Concept, f: &vc_core::Evolvent) -> Result<Concept> {
    let fc = f_concept(ws, &c.intension, &c.var, &c.sort, f)?;
    Ok(Concept {
        world: f.source.clone(),
        along: Some(f.clone()),
        extension: fc.extension,
        ..c.clone()
    })
}
