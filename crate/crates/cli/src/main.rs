mod config;
mod job;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use fusion_orbit::report::emit;
use job::{Cli, JobError, JobSpec};

fn main() -> ExitCode {
    // clap exits with 2 on usage errors and 0 for --help.
    let cli = Cli::parse();
    let result = JobSpec::parse(cli).and_then(|job| job.run().map(|r| (job.format, r)));
    match result {
        Ok((format, report)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(emit(Some(&report), format).as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(JobError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("Run with --help for usage.");
            ExitCode::from(2)
        }
        Err(e @ JobError::Run(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
