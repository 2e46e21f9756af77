use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = fluxhom_cli::run_from_args(std::env::args_os());
    print!("{}", outcome.stdout);
    ExitCode::from(outcome.code as u8)
}
