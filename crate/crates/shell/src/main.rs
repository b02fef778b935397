use std::fs;
use std::io::{self, IsTerminal};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vcsh::script::{self, Mode};
use vcsh::{persist, Format, Session};

#[derive(Parser)]
#[command(name = "vcsh", version, about = "Conceptual shell over individuals and variable concepts")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a script of commands.
    Run {
        script: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Continue after failing commands.
        #[arg(long)]
        keep_going: bool,
    },
    /// Read commands from standard input.
    Repl {
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate one closed formula at a world.
    Eval {
        #[arg(long, required = true)]
        workspace: PathBuf,
        #[arg(long)]
        world: String,
        formula: String,
    },
}

#[derive(Args)]
struct Common {
    /// Workspace file to start from.
    #[arg(long)]
    workspace: Option<PathBuf>,
    /// Output format for concept extensions.
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Rows,
}

fn session(common: &Common) -> Result<Session, vcsh::ShellError> {
    let ws = match &common.workspace {
        Some(path) => persist::load(path)?,
        None => Default::default(),
    };
    let format = match common.format {
        FormatArg::Text => Format::Text,
        FormatArg::Rows => Format::Rows,
    };
    Ok(Session::new(ws).with_format(format))
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn run_script(path: &Path, common: &Common, keep_going: bool) -> ExitCode {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return fail(format_args!("{}: {e}", path.display())),
    };
    let mut s = match session(common) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let mode = if keep_going { Mode::KeepGoing } else { Mode::Strict };
    match script::run(&mut s, &text, mode, &mut io::stdout().lock(), &mut io::stderr().lock()) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => fail(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Cmd::Run { script, common, keep_going } => run_script(&script, &common, keep_going),
        Cmd::Repl { common } => {
            let mut s = match session(&common) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            let stdin = io::stdin();
            let prompt = stdin.is_terminal();
            match script::repl(&mut s, &mut stdin.lock(), prompt, &mut io::stdout().lock(), &mut io::stderr().lock()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(e),
            }
        }
        Cmd::Eval { workspace, world, formula } => {
            let mut s = match persist::load(&workspace) {
                Ok(ws) => Session::new(ws),
                Err(e) => return fail(e),
            };
            match s.exec_line(&format!("eval at {world} : {formula}")) {
                Ok(out) => {
                    print!("{out}");
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
    }
}
