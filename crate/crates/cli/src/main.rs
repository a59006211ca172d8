//! `cavity`: CSV front end for the spherical-cavity decay simulator.
//!
//! Usage: `cavity <subcommand> [--config <path|->] [--out <path>]
//! [--strict] [--<key> <value> ...]`
//!
//! Any configuration key can be overridden on the command line; see
//! `config.rs` for the full key list and defaults. Exit codes: 0 success,
//! 2 configuration error, 3 numeric error, 4 warnings escalated by
//! `--strict`.

use std::io::Read;
use std::process::ExitCode;

mod commands;
mod config;

use commands::{CmdError, SUBCOMMANDS};
use config::RunConfig;

struct Invocation {
    subcommand: String,
    config_path: Option<String>,
    out_path: Option<String>,
    strict: bool,
    overrides: Vec<(String, String)>,
}

fn usage() -> String {
    format!(
        "usage: cavity <subcommand> [--config <path|->] [--out <path>] [--strict] [--<key> <value> ...]\n\
         subcommands: {}\n\
         keys: {}\n",
        SUBCOMMANDS.join(", "),
        config::KEYS.join(", ")
    )
}

fn parse_args(args: &[String]) -> Result<Invocation, String> {
    let mut it = args.iter();
    let subcommand = match it.next() {
        Some(s) if !s.starts_with("--") => s.clone(),
        _ => return Err("missing subcommand".into()),
    };
    let mut inv = Invocation {
        subcommand,
        config_path: None,
        out_path: None,
        strict: false,
        overrides: Vec::new(),
    };
    while let Some(arg) = it.next() {
        let Some(key) = arg.strip_prefix("--") else {
            return Err(format!(
                "unexpected argument `{arg}` (options start with --)"
            ));
        };
        match key {
            "strict" => inv.strict = true,
            "config" | "out" => {
                let value = it
                    .next()
                    .ok_or_else(|| format!("`--{key}` needs a value"))?;
                if key == "config" {
                    inv.config_path = Some(value.clone());
                } else {
                    inv.out_path = Some(value.clone());
                }
            }
            _ => {
                let value = it
                    .next()
                    .ok_or_else(|| format!("`--{key}` needs a value"))?;
                inv.overrides.push((key.to_string(), value.clone()));
            }
        }
    }
    Ok(inv)
}

fn load_config(inv: &Invocation) -> Result<RunConfig, String> {
    let text = match &inv.config_path {
        None => String::new(),
        Some(path) if path == "-" => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("reading stdin: {e}"))?;
            buf
        }
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| format!("reading `{path}`: {e}"))?
        }
    };
    let mut cfg = RunConfig::parse(&text)?;
    for (key, value) in &inv.overrides {
        cfg.set(key, value)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn real_main() -> u8 {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() || args.iter().any(|a| a == "--help" || a == "-h") {
        print!("{}", usage());
        return if args.is_empty() { 2 } else { 0 };
    }
    let inv = match parse_args(&args) {
        Ok(inv) => inv,
        Err(msg) => {
            eprintln!("error: {msg}\n{}", usage());
            return 2;
        }
    };
    let cfg = match load_config(&inv) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let output = match commands::run(&inv.subcommand, &cfg) {
        Ok(out) => out,
        Err(CmdError::Config(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
        Err(CmdError::Numeric(e)) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    match &inv.out_path {
        None => print!("{}", output.csv),
        Some(path) => {
            if let Err(e) = std::fs::write(path, &output.csv) {
                eprintln!("error: writing `{path}`: {e}");
                return 3;
            }
        }
    }
    for w in &output.warnings {
        eprintln!("warning: {w}");
    }
    if inv.strict && !output.warnings.is_empty() {
        eprintln!(
            "error: {} warning(s) escalated by --strict",
            output.warnings.len()
        );
        return 4;
    }
    0
}

fn main() -> ExitCode {
    ExitCode::from(real_main())
}
