use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = chainforge_cli::run(std::env::args_os());
    if code == chainforge_cli::EXIT_USAGE {
        eprint!("{out}");
    } else {
        // a closed pipe is not worth a panic
        let _ = std::io::stdout().write_all(out.as_bytes());
    }
    ExitCode::from(code as u8)
}
