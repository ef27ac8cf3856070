use std::io::Write;
use std::process::ExitCode;

use axum::http::HeaderValue;
use clap::Parser;
use fsmgrade_cli::{execute, service, Cli, Command};
use fsmgrade_core::load_question_bank;

fn serve(bank: &std::path::Path, bind: &str, cors_origin: Option<&str>) -> anyhow::Result<()> {
    let bank = load_question_bank(bank)?;
    let origin = cors_origin.map(HeaderValue::from_str).transpose()?;
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(service::serve(bank, bind, origin))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Serve {
        bank,
        bind,
        cors_origin,
    } = &cli.command
    {
        return match serve(bank, bind, cors_origin.as_deref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        };
    }
    let outcome = execute(&cli.command);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code)
}
