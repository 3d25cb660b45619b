use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use quotcoh::cli::{run, Cli, Format};
use quotcoh::CliError;

fn emit(cli: &Cli, body: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => std::fs::write(path, body).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.command).and_then(|outcome| {
        let body = match cli.format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&outcome.value)?),
            Format::Text => quotcoh::text::render(&outcome.value),
        };
        emit(&cli, &body)?;
        Ok(outcome.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            println!("{}", serde_json::to_string_pretty(&e.to_json()).unwrap_or_default());
            eprintln!("quotcoh: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
