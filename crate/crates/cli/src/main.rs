use std::process::ExitCode;

use clap::Parser;
use fplift::{doc, run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let spec = match cli.into_spec() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("fplift: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let outcome = run(&spec);
    let text = doc::render(&outcome.doc, spec.format);
    match &spec.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("fplift: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if let Some(err) = outcome.doc.get("error").and_then(|v| v.as_str()) {
        eprintln!("fplift: {err}");
    }
    ExitCode::from(outcome.code)
}
