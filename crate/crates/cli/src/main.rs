//! `leavitt`: batch front end over `leavitt-core`.
//!
//! Exit status 0 on success, 1 when a checked property fails, 2 on usage
//! errors.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use leavitt_core::scalar::{F1000003, F2147483647, F32003};
use leavitt_core::Rational;
use serde_json::{json, Value};

use args::Cli;
use commands::{run, Failure, Report};

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    let field = cli.field.trim().to_ascii_lowercase();
    let field = field.strip_prefix("mod-").unwrap_or(&field);
    match field {
        "rational" | "q" => run::<Rational>(&cli.command, "rational"),
        "32003" => run::<F32003>(&cli.command, "mod-32003"),
        "1000003" => run::<F1000003>(&cli.command, "mod-1000003"),
        "2147483647" => run::<F2147483647>(&cli.command, "mod-2147483647"),
        other => Err(Failure::Usage(format!(
            "unknown field {other:?}; expected rational, 32003, 1000003 or 2147483647"
        ))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(report) => {
            if cli.json {
                let doc = match report.json {
                    Value::Object(mut map) => {
                        map.insert("schema".into(), json!(1));
                        Value::Object(map)
                    }
                    other => json!({"schema": 1, "result": other}),
                };
                println!("{}", serde_json::to_string_pretty(&doc).expect("json values serialize"));
            } else if !report.text.is_empty() {
                println!("{}", report.text);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("leavitt: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Property(msg)) => {
            eprintln!("leavitt: {msg}");
            ExitCode::from(1)
        }
    }
}
