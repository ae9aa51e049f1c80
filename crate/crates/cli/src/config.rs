//! Flat JSON config files, merged as if their entries were flags given
//! before the ones on the command line.

use std::ffi::OsString;
use std::path::Path;

use clap::{ArgAction, CommandFactory};
use serde_json::{Map, Value};

use crate::args::Cli;

/// Rewrites `argv` so that the file's entries precede the explicit flags of
/// the subcommand at `path`.
pub fn merge(argv: &[OsString], path: &[&str], file: &Path) -> Result<Vec<OsString>, String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("cannot read config {}: {e}", file.display()))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| {
        format!("malformed config {} at line {}, column {}: {e}", file.display(), e.line(), e.column())
    })?;
    let Value::Object(entries) = doc else {
        return Err(format!("config {} must be a flat JSON object", file.display()));
    };
    let synthetic = to_flags(&entries, path)?;

    // the subcommand path ends at the first occurrence of each name in turn
    let mut insert_at = 1;
    for name in path {
        let pos = argv[insert_at..]
            .iter()
            .position(|a| a.to_str() == Some(name))
            .ok_or_else(|| format!("subcommand {name} not found in arguments"))?;
        insert_at += pos + 1;
    }
    let mut merged = argv[..insert_at].to_vec();
    merged.extend(synthetic);
    merged.extend_from_slice(&argv[insert_at..]);
    Ok(merged)
}

fn to_flags(entries: &Map<String, Value>, path: &[&str]) -> Result<Vec<OsString>, String> {
    let mut cmd = Cli::command();
    for name in path {
        cmd = cmd
            .find_subcommand(name)
            .cloned()
            .ok_or_else(|| format!("unknown subcommand {name}"))?;
    }
    let mut flags = Vec::new();
    for (key, value) in entries {
        let long = key.replace('_', "-");
        let arg = cmd
            .get_arguments()
            .find(|a| a.get_long() == Some(long.as_str()) || a.get_long() == Some(key.as_str()))
            .filter(|a| a.get_long() != Some("config"))
            .ok_or_else(|| format!("unknown key: {key}"))?;
        let flag = format!("--{}", arg.get_long().unwrap_or_default());
        let takes_value = !matches!(arg.get_action(), ArgAction::SetTrue | ArgAction::SetFalse);
        match value {
            Value::Bool(b) if !takes_value => {
                if *b {
                    flags.push(flag.into());
                }
            }
            Value::Number(n) if takes_value => {
                flags.push(format!("{flag}={n}").into());
            }
            Value::String(s) if takes_value => {
                flags.push(format!("{flag}={s}").into());
            }
            Value::Null => {}
            other => return Err(format!("key {key}: unsupported value {other}")),
        }
    }
    Ok(flags)
}
