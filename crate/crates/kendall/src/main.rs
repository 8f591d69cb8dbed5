use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(kendall::cli::run() as u8)
}
