//! Running scripts and the REPL loop. Both go through `Session::exec_line`.

use std::io::{self, BufRead, Write};

use crate::error::ShellError;
use crate::session::Session;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Stop at the first failing command.
    Strict,
    KeepGoing,
}

/// Runs one line and reports its output and any diagnostic. Returns false on
/// failure.
pub fn step(session: &mut Session, line_no: usize, line: &str, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<bool> {
    match session.exec_line(line) {
        Ok(text) => {
            out.write_all(text.as_bytes())?;
            Ok(true)
        }
        Err(e) => {
            if let ShellError::TypeCheck { report, .. } = &e {
                out.write_all(report.as_bytes())?;
            }
            writeln!(err, "error: line {line_no}: {e}")?;
            Ok(false)
        }
    }
}

/// Executes `text` line by line. Returns the number of failed commands.
pub fn run(session: &mut Session, text: &str, mode: Mode, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<usize> {
    let mut failed = 0;
    for (n, line) in text.lines().enumerate() {
        if !step(session, n + 1, line, out, err)? {
            failed += 1;
            if mode == Mode::Strict {
                break;
            }
        }
    }
    Ok(failed)
}

/// Reads commands from `input` until end of file. Errors are reported and the
/// loop continues.
pub fn repl(session: &mut Session, input: &mut dyn BufRead, prompt: bool, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<()> {
    let mut line = String::new();
    let mut n = 0;
    loop {
        if prompt {
            write!(out, "vcsh> ")?;
            out.flush()?;
        }
        line.clear();
        if input.read_line(&mut line)? == 0 {
            return Ok(());
        }
        n += 1;
        step(session, n, &line, out, err)?;
    }
}
