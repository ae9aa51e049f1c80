mod args;
mod commands;
mod config;
mod format;

use std::ffi::OsString;
use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;
use crate::commands::Failure;

fn parse(argv: &[OsString]) -> Result<Cli, ExitCode> {
    Cli::try_parse_from(argv).map_err(|e| {
        let _ = e.print();
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                ExitCode::SUCCESS
            }
            _ => ExitCode::from(1),
        }
    })
}

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<OsString> = std::env::args_os().collect();
    let mut cli = match parse(&argv) {
        Ok(cli) => cli,
        Err(code) => return code,
    };
    if let Some(path) = cli.command.common().config.clone() {
        let merged = match config::merge(&argv, cli.command.path(), &path) {
            Ok(m) => m,
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(1);
            }
        };
        cli = match parse(&merged) {
            Ok(cli) => cli,
            Err(code) => return code,
        };
    }

    let out = cli.command.common().out.clone();
    let (text, code) = match commands::run(&cli.command) {
        Ok(text) => (Some(text), ExitCode::SUCCESS),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            (None, ExitCode::from(1))
        }
        Err(Failure::Model(e)) => {
            eprintln!("error: {}: {e}", e.name());
            (None, ExitCode::from(if e.is_numerical() { 2 } else { 1 }))
        }
        Err(Failure::Partial { output, error }) => {
            eprintln!("error: {}: {error} (partial results emitted)", error.name());
            (Some(output), ExitCode::from(2))
        }
    };
    if let Some(text) = text {
        if let Err(msg) = emit(&text, out.as_deref()) {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    }
    code
}
