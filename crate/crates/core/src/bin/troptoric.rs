use std::io::Write;
use std::process::ExitCode;

use troptoric::cli;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let verbose = args.iter().any(|a| a == "--verbose" || a == "-v");
    let json_out = args
        .iter()
        .position(|a| a == "--json-out")
        .and_then(|i| args.get(i + 1).cloned());
    let result = cli::run(&args);

    if verbose && !result.input.is_null() {
        eprintln!("{} {}", result.command, result.input);
    }
    for note in &result.notes {
        if verbose || note.starts_with("error") || result.command.is_empty() {
            eprintln!("{note}");
        }
    }
    if !result.output.is_empty() {
        match json_out {
            Some(path) => {
                if let Err(e) = std::fs::write(&path, format!("{}\n", result.output)) {
                    eprintln!("cannot write {path}: {e}");
                    return ExitCode::from(cli::EXIT_PARSE as u8);
                }
            }
            None => {
                // A closed pipe (`| head`) is not an error worth reporting.
                let _ = writeln!(std::io::stdout().lock(), "{}", result.output);
            }
        }
    }
    ExitCode::from(result.status as u8)
}
