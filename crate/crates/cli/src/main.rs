mod args;
mod output;
mod run;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Format};
use output::{sort_records, write_csv, write_json, Meta};
use run::{RunError, Settings};

const EXIT_PARTIAL: u8 = 2;
const EXIT_INVALID: u8 = 3;

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Spectrum { .. } => "spectrum",
        Command::RpmRoots { .. } => "rpm-roots",
        Command::RpmPolish { .. } => "rpm-polish",
        Command::Compare { .. } => "compare",
        Command::Converge { .. } => "converge",
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let common = &cli.common;
    if common.digits < 6 {
        eprintln!("error: --digits must be at least 6");
        return ExitCode::from(EXIT_INVALID);
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(common.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let settings = Settings {
        digits: common.digits,
        printed: !common.literal,
    };

    let started = Instant::now();
    let (mut records, mut code) = match pool.install(|| run::run(&cli.command, settings)) {
        Ok(records) => (records, 0),
        Err(RunError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_INVALID);
        }
        Err(RunError::Failed(msg)) => {
            eprintln!("error: {msg}");
            (Vec::new(), EXIT_PARTIAL)
        }
    };
    sort_records(&mut records);
    if records.iter().any(|r| r.failed()) {
        code = EXIT_PARTIAL;
    }

    let sink: Box<dyn Write> = match &common.output {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return ExitCode::from(EXIT_INVALID);
            }
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let written = match common.format {
        Format::Csv => write_csv(sink, &records).map_err(|e| e.to_string()),
        Format::Json => {
            let meta = Meta {
                command: command_name(&cli.command),
                output_digits: common.digits,
                working_digits: run::working_digits(&cli.command, common.digits),
                orientation: if common.literal { "literal" } else { "tabulated" },
                version: env!("CARGO_PKG_VERSION"),
                elapsed_seconds: started.elapsed().as_secs_f64(),
            };
            write_json(sink, &meta, &records).map_err(|e| e.to_string())
        }
    };
    if let Err(e) = written {
        eprintln!("error: writing output failed: {e}");
        return ExitCode::from(EXIT_PARTIAL);
    }
    ExitCode::from(code)
}
