//! Front end for the `ctxcalc` binary: batch evaluation of `.ctx` sources and
//! an interactive session. Everything here is generic over readers and
//! writers so it can be driven from tests.

use std::fmt::Display;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use ctxcalc::eval::{eval_program, Environment, Value};
use ctxcalc::lang::{parse_program, Diagnostic, Severity};
use ctxcalc::render::{render_binding, render_structured};
use ctxcalc::tagset::Ident;

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const SYNTAX: i32 = 1;
    pub const STATIC: i32 = 2;
    pub const RUNTIME: i32 = 3;
    pub const IO: i32 = 4;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    Repl,
    Eval(String),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub mode: Mode,
    pub format: Format,
    /// Treat warnings as static errors.
    pub strict: bool,
    /// ANSI colour in diagnostics.
    pub color: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            mode: Mode::Repl,
            format: Format::Text,
            strict: false,
            color: false,
        }
    }
}

/// An environment plus output settings; survives across REPL lines.
pub struct Session {
    pub env: Environment,
    pub format: Format,
    pub strict: bool,
    pub color: bool,
}

enum Level {
    Error,
    Warning,
}

impl Session {
    pub fn new(config: &Config) -> Self {
        Session {
            env: Environment::new(),
            format: config.format,
            strict: config.strict,
            color: config.color,
        }
    }

    fn report(&self, err: &mut dyn Write, origin: &str, level: Level, msg: impl Display) -> io::Result<()> {
        let (label, colour) = match level {
            Level::Error => ("error", "\x1b[1;31m"),
            Level::Warning => ("warning", "\x1b[1;33m"),
        };
        let prefix = if origin.is_empty() { String::new() } else { format!("{origin}: ") };
        if self.color {
            writeln!(err, "{prefix}{colour}{label}\x1b[0m {msg}")
        } else {
            writeln!(err, "{prefix}{label} {msg}")
        }
    }

    fn report_diagnostic(&self, err: &mut dyn Write, origin: &str, d: &Diagnostic) -> io::Result<()> {
        let level = match d.severity() {
            Severity::Error => Level::Error,
            Severity::Warning => Level::Warning,
        };
        self.report(err, origin, level, format_args!("at {}: {}", d.span, d.kind))
    }

    pub fn render(&self, binding: Option<&Ident>, v: &Value) -> String {
        match (self.format, binding) {
            (Format::Text, Some(name)) => format!("{name} = {v}"),
            (Format::Text, None) => v.to_string(),
            (Format::Structured, Some(name)) => render_binding(name, v),
            (Format::Structured, None) => render_structured(v),
        }
    }

    /// Parses, checks and evaluates `src` in this session. `origin` names the
    /// source in diagnostics (a path, or empty for interactive input).
    ///
    /// Nothing is evaluated when the source fails to parse or has static
    /// errors. Otherwise every statement runs and prints one line; failing
    /// statements are reported and the rest still run.
    pub fn run_source(&mut self, origin: &str, src: &str, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
        let program = match parse_program(src) {
            Ok(p) => p,
            Err(e) => {
                self.report(err, origin, Level::Error, format_args!("at {e}"))?;
                return Ok(exit::SYNTAX);
            }
        };

        let diagnostics = self.env.checker().check(&program);
        let mut rejected = false;
        for d in &diagnostics {
            self.report_diagnostic(err, origin, d)?;
            rejected |= d.is_error() || self.strict;
        }
        if rejected {
            return Ok(exit::STATIC);
        }

        let mut status = exit::OK;
        for result in eval_program(&mut self.env, &program) {
            match result.outcome {
                Ok(v) => writeln!(out, "{}", self.render(result.binding.as_ref(), &v))?,
                Err(e) => {
                    self.report(err, origin, Level::Error, format_args!("at {}: {e}", result.span))?;
                    status = exit::RUNTIME;
                }
            }
        }
        Ok(status)
    }

    pub fn run_file(&mut self, path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
        let origin = path.display().to_string();
        match std::fs::read_to_string(path) {
            Ok(src) => self.run_source(&origin, &src, out, err),
            Err(e) => {
                self.report(err, &origin, Level::Error, format_args!("cannot read file: {e}"))?;
                Ok(exit::IO)
            }
        }
    }

    fn list_dimensions(&self, out: &mut dyn Write) -> io::Result<()> {
        for d in self.env.dimensions.iter() {
            let ts = &d.tag_set;
            let size = match ts.len() {
                Some(n) => format!("{n} tags"),
                None => "unbounded".to_string(),
            };
            writeln!(out, "{} : {} {} ({size})", d.name, ts.properties(), ts)?;
        }
        Ok(())
    }

    fn list_bindings(&self, out: &mut dyn Write) -> io::Result<()> {
        for (name, v) in &self.env.bindings {
            writeln!(out, "{}", self.render(Some(name), v))?;
        }
        Ok(())
    }
}

const HELP: &str = "\
statements and declarations are evaluated as typed; `;` separates several on one line
:dims                       list declared dimensions
:bindings                   list bound names
:load <file>                evaluate a file in this session
:format text|structured     switch the output format
:help                       show this text
:quit                       leave";

/// Runs an interactive session until `:quit` or end of input. Only a failure
/// to read or write the terminal ends it early.
pub fn repl<R: BufRead, W: Write, E: Write>(
    session: &mut Session,
    input: R,
    mut out: W,
    mut err: E,
    prompt: bool,
) -> io::Result<i32> {
    let mut lines = input.lines();
    loop {
        if prompt {
            write!(out, "ctx> ")?;
            out.flush()?;
        }
        let Some(line) = lines.next() else { break };
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(command) = trimmed.strip_prefix(':') {
            let (name, arg) = match command.split_once(char::is_whitespace) {
                Some((n, a)) => (n, a.trim()),
                None => (command, ""),
            };
            match (name, arg) {
                ("quit" | "q", _) => break,
                ("help", _) => writeln!(out, "{HELP}")?,
                ("dims", _) => session.list_dimensions(&mut out)?,
                ("bindings", _) => session.list_bindings(&mut out)?,
                ("load", "") => session.report(&mut err, "", Level::Error, "`:load` needs a file name")?,
                ("load", path) => {
                    session.run_file(Path::new(path), &mut out, &mut err)?;
                }
                ("format", "text") => session.format = Format::Text,
                ("format", "structured") => session.format = Format::Structured,
                ("format", other) => session.report(
                    &mut err,
                    "",
                    Level::Error,
                    format_args!("unknown format `{other}`; use `text` or `structured`"),
                )?,
                _ => session.report(
                    &mut err,
                    "",
                    Level::Error,
                    format_args!("unknown command `:{name}`; try `:help`"),
                )?,
            }
            continue;
        }
        session.run_source("", &line, &mut out, &mut err)?;
    }
    Ok(exit::OK)
}

/// Runs whichever mode `config` selects, on the process's standard streams
/// for the interactive case.
pub fn run(config: &Config, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut session = Session::new(config);
    let result = match &config.mode {
        Mode::Eval(src) => session.run_source("", src, out, err),
        Mode::File(path) => session.run_file(path, out, err),
        Mode::Repl => {
            use std::io::IsTerminal;
            let stdin = io::stdin();
            let prompt = stdin.is_terminal();
            repl(&mut session, stdin.lock(), &mut *out, &mut *err, prompt)
        }
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        exit::IO
    })
}
