use std::process::ExitCode;

use clap::Parser;
use hweno_cli::{execute, Args, EXIT_CONFIG, EXIT_OK};

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_OK as u8);
        }
        Err(e) => {
            let _ = e.print();
            println!("status=config_error code={EXIT_CONFIG} message={:?}", e.kind().to_string());
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    match args.manifest().and_then(|m| execute(&m)) {
        Ok(summary) => {
            print!("{}", summary.report_text());
            println!("{}", summary.status_line());
            ExitCode::from(EXIT_OK as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            println!("{}", e.status_line());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
