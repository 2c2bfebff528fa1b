use std::io::{self, Write};
use std::process::ExitCode;

use degen_cli::{max_n_from_env, run, EXIT_USAGE};

fn main() -> ExitCode {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let env = std::env::var("DEGEN_MAX_N").ok();
    let code = match max_n_from_env(env.as_deref()) {
        Ok(max_n) => run(std::env::args_os(), max_n, &mut out, &mut err),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
