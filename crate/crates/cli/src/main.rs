use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use bolkit_cli::{exit, run, Cli};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::INPUT
            } else {
                exit::OK
            });
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = match run(&cli, &mut out) {
        Ok(code) => code,
        Err(failure) => {
            if failure.code != exit::OK {
                eprintln!("error: {failure}");
            }
            failure.code
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
