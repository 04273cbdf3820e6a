use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = spinspec_cli::run(std::env::args_os());
    for d in &result.diagnostics {
        eprintln!("{}: {d}", if result.exit_code == 0 { "note" } else { "error" });
    }
    if !result.stdout.is_empty() {
        let mut out = std::io::stdout().lock();
        if out.write_all(result.stdout.as_bytes()).and_then(|_| out.flush()).is_err() {
            return ExitCode::FAILURE;
        }
    }
    ExitCode::from(result.exit_code as u8)
}
