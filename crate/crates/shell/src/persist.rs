//! Workspace files: one declaration per line, grouped by kind in declaration
//! order. Concept extensions are not stored; loading re-comprehends them.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use vc_core::{Symbol, Workspace};

use crate::command::parse_command;
use crate::error::{Result, ShellError};
use crate::session::declare;

fn braced(items: impl IntoIterator<Item = String>) -> String {
    let body: Vec<String> = items.into_iter().collect();
    if body.is_empty() {
        "{ }".to_string()
    } else {
        format!("{{ {} }}", body.join(", "))
    }
}

fn arrows<'a>(order: &'a [Symbol], get: impl Fn(&Symbol) -> Option<&'a Symbol> + 'a) -> String {
    braced(order.iter().filter_map(|k| get(k).map(|v| format!("{k} -> {v}"))))
}

/// Serializes every declaration of `ws`. The output is deterministic.
pub fn render(ws: &Workspace) -> String {
    let mut out = String::new();
    for (name, t) in ws.types().iter() {
        let _ = writeln!(out, "type {name} = {}", braced(t.elements.iter().map(|e| e.to_string())));
    }
    for (name, w) in ws.worlds().iter() {
        let _ = writeln!(out, "world {name} = {}", braced(w.indexes.iter().map(|i| i.to_string())));
    }
    for (name, e) in ws.evolvents().iter() {
        let order = ws.world(&e.source).map(|w| w.indexes.clone()).unwrap_or_default();
        let _ = writeln!(
            out,
            "evolvent {name} : {} -> {} = {}",
            e.source,
            e.target,
            arrows(&order, |b| e.map.get(b))
        );
    }
    for (name, g) in ws.funcs().iter() {
        let order = ws.base_type(&g.domain).map(|t| t.elements.clone()).unwrap_or_default();
        let _ = writeln!(
            out,
            "func {name} : {} -> {} = {}",
            g.domain,
            g.codomain,
            arrows(&order, |x| g.map.get(x))
        );
    }
    for (name, h) in ws.individuals().iter() {
        let order = ws.world(&h.value.world).map(|w| w.indexes.clone()).unwrap_or_default();
        let _ = writeln!(
            out,
            "individual {name} : {} -> {} = {}",
            h.value.world,
            h.ty,
            arrows(&order, |i| h.value.at(i))
        );
    }
    for (name, c) in ws.concepts().iter() {
        let c = &c.concept;
        let _ = writeln!(
            out,
            "concept {name} over {} : {} at {} := {}",
            c.var, c.sort, c.world, c.intension
        );
    }
    out
}

/// Rebuilds a workspace from `render` output. Any failure is reported with
/// the 1-based line number that caused it.
pub fn parse(text: &str) -> Result<Workspace> {
    let mut ws = Workspace::new();
    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        let at = |reason: String| ShellError::Format { line: line_no, reason };
        let cmd = match parse_command(line) {
            Ok(Some(cmd)) => cmd,
            Ok(None) => continue,
            Err(e) => return Err(at(e.to_string())),
        };
        if !cmd.is_declaration() {
            return Err(at("only declarations may appear in a workspace file".to_string()));
        }
        declare(&mut ws, cmd).map_err(|e| at(e.to_string()))?;
    }
    Ok(ws)
}

pub fn save(ws: &Workspace, path: &Path) -> Result<()> {
    fs::write(path, render(ws)).map_err(|source| ShellError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load(path: &Path) -> Result<Workspace> {
    let text = fs::read_to_string(path).map_err(|source| ShellError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text)
}

