use std::fs;
use std::process::ExitCode;

use clap::Parser;
use hasse_witt_cli::args::{Cli, Command};
use hasse_witt_cli::{human, report, run_batch, Status};
use serde_json::Value;

fn batch(input: &std::path::Path, output: &std::path::Path) -> ExitCode {
    let text = match fs::read_to_string(input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", input.display());
            return ExitCode::from(1);
        }
    };
    let mut out = run_batch(&text).join("\n");
    if !out.is_empty() {
        out.push('\n');
    }
    if let Err(e) = fs::write(output, out) {
        eprintln!("error: cannot write {}: {e}", output.display());
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Batch { input, output } = &cli.command {
        return batch(input, output);
    }
    let (name, params) = cli.command.request().expect("non-batch command");
    let (rep, status) = report(Value::Null, Value::from(name), Value::Object(params));
    if cli.json {
        println!("{rep}");
    } else if status == Status::Ok {
        println!("{}", human(name, &rep["outputs"]));
    }
    if status != Status::Ok {
        eprintln!("error: {}", rep["error"].as_str().unwrap_or("unknown"));
    }
    ExitCode::from(status.exit_code() as u8)
}
