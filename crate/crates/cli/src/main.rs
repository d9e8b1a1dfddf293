use std::io::{self, IsTerminal};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use ctxcalc_cli::{run, Config, Format, Mode};

/// Evaluate context calculus programs.
///
/// With neither --eval nor --file, starts an interactive session.
/// Exit status: 0 ok, 1 syntax error, 2 static error, 3 runtime error, 4 I/O error.
#[derive(Parser, Debug)]
#[command(name = "ctxcalc", version)]
struct Args {
    /// Evaluate the given statements and exit
    #[arg(long, value_name = "STMT", conflicts_with = "file")]
    eval: Option<String>,

    /// Evaluate a .ctx source file and exit
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,

    /// Output format for results
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Treat warnings as errors
    #[arg(long)]
    strict: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mode = match (args.eval, args.file) {
        (Some(src), _) => Mode::Eval(src),
        (None, Some(path)) => Mode::File(path),
        (None, None) => Mode::Repl,
    };
    let config = Config {
        mode,
        format: args.format,
        strict: args.strict,
        color: io::stderr().is_terminal() && std::env::var_os("NO_COLOR").is_none(),
    };
    let code = run(&config, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
