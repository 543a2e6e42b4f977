mod args;
mod run;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::Cli;
use run::{run, Failure};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                return ExitCode::SUCCESS;
            }
            println!("{}", json!({ "verdict": "error", "error": "usage" }));
            return ExitCode::from(1);
        }
    };
    let budgets = cli.budgets.resolve();
    let (body, code) = match run(&cli.command, &budgets) {
        Ok(r) => {
            let code = if r.decided { 0 } else { 2 };
            (r.body, code)
        }
        Err(Failure::Budget(m)) => (json!({ "verdict": "unknown", "reason": m }), 2),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            (json!({ "verdict": "error", "error": m }), 1)
        }
    };
    println!("{}", serde_json::to_string_pretty(&body).expect("JSON value"));
    ExitCode::from(code)
}
