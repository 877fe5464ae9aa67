use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = cremona_cli::run(std::env::args_os());
    std::io::stdout().write_all(&outcome.stdout).and_then(|_| std::io::stdout().flush()).ok();
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.status.code())
}
