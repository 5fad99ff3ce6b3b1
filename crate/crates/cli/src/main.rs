mod args;
mod commands;
mod document;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::Cli;
use commands::{error_kind, json_requested, run, EXIT_ERROR, EXIT_OK};
use document::{CommandEcho, ErrorOut, ResultDocument, SCHEMA_VERSION};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let mut doc = ResultDocument {
        schema_version: SCHEMA_VERSION,
        command: CommandEcho {
            name: commands::name(&cli.command).to_string(),
            argv: std::env::args().skip(1).collect(),
        },
        status: "ok",
        exit_code: EXIT_OK,
        ..ResultDocument::default()
    };
    let outcome = run(&cli.command, &mut doc);
    doc.timing_ms = started.elapsed().as_secs_f64() * 1e3;
    let text = match outcome {
        Ok(text) => Some(text),
        Err(e) => {
            doc.status = "error";
            doc.exit_code = EXIT_ERROR;
            doc.error = Some(ErrorOut { kind: error_kind(&e), message: e.to_string() });
            None
        }
    };
    if json_requested(&cli.command) {
        println!("{}", serde_json::to_string_pretty(&doc).expect("documents serialize"));
    } else {
        match (&text, &doc.error) {
            (Some(t), _) => println!("{t}"),
            (None, Some(e)) => eprintln!("error: {}", e.message),
            (None, None) => {}
        }
    }
    ExitCode::from(doc.exit_code as u8)
}
