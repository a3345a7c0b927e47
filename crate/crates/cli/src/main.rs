mod cli;
mod commands;

use clap::Parser;
use cli::{Cli, Command};
use serde_json::json;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

const EXIT_PARSE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_PRECONDITION: u8 = 4;

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Rigidity { .. } => "rigidity",
        Command::Census { .. } => "census",
        Command::Congruence { .. } => "congruence",
        Command::Pins { .. } => "pins",
        Command::Energy { .. } => "energy",
        Command::Sweep { .. } => "sweep",
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<rigcensus::Error>() {
            return match e {
                rigcensus::Error::Parse { .. } => EXIT_PARSE,
                rigcensus::Error::BudgetExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_PRECONDITION,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return EXIT_PARSE;
        }
    }
    EXIT_PRECONDITION
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let out = match commands::run(&cli.command, &cli.common) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let name = command_name(&cli.command);

    if cli.common.json {
        let mut doc = json!({ "command": name, "result": out.json });
        if !cli.common.no_meta {
            doc["meta"] = json!({
                "version": env!("CARGO_PKG_VERSION"),
                "timestamp_unix": timestamp,
                "elapsed_ms": elapsed_ms,
            });
        }
        match serde_json::to_string_pretty(&doc) {
            Ok(s) => println!("{s}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_PRECONDITION);
            }
        }
    } else {
        print!("{}", out.text);
        if !cli.common.no_meta {
            println!(
                "# rigcensus {} {name}: {elapsed_ms:.1} ms, unix time {timestamp}",
                env!("CARGO_PKG_VERSION")
            );
        }
    }
    ExitCode::SUCCESS
}
