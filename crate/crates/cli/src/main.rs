use std::io;
use std::panic;
use std::process::ExitCode;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let code = panic::catch_unwind(|| {
        let stdout = io::stdout();
        let stderr = io::stderr();
        lrgd_cli::main_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
    })
    .unwrap_or(lrgd_cli::EXIT_INTERNAL);
    ExitCode::from(code as u8)
}
