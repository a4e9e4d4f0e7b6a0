use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(qc::cli::run_cli())
}
