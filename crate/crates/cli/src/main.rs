use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use iqschur_cli::{exit, run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap's own exit code 2 would collide with "verification failed"
            let code = if e.use_stderr() { exit::INPUT } else { exit::PASS };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let rendered = if cli.config.json { out.report.to_json() + "\n" } else { out.report.to_text() };
            let res = match &out.raw {
                Some(bytes) => {
                    eprint!("{rendered}");
                    stdout.write_all(bytes)
                }
                None => stdout.write_all(rendered.as_bytes()),
            };
            if res.and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(exit::INTERNAL as u8);
            }
            ExitCode::from(if out.report.passed { exit::PASS } else { exit::VERIFICATION_FAILED } as u8)
        }
        Err(e) => {
            eprintln!("iqschur: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
