use std::fs::File;
use std::io::{self, BufWriter};
use std::process::ExitCode;

use clap::Parser;
use rml_cli::{run, Cli, CliError, Command};

fn output_args(cmd: &Command) -> &rml_cli::CommonArgs {
    match cmd {
        Command::GkpMc(a)
        | Command::Equivalence(a)
        | Command::Dual(a)
        | Command::Intersection(a)
        | Command::MinDistance(a) => a,
        Command::LdMrd(a) => &a.common,
        Command::MsScan(a) => &a.common,
        Command::Encode(a) => &a.common,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Ok(v) = std::env::var("RML_GUARD_OVERRIDE") {
        match v.parse::<u64>() {
            Ok(n) => rml_core::limits::set_override(Some(n)),
            Err(_) => {
                eprintln!("error: RML_GUARD_OVERRIDE must be an integer");
                return ExitCode::from(2);
            }
        }
    }
    let result = run(&cli.command).and_then(|outcome| {
        let a = output_args(&cli.command);
        match &a.out {
            Some(path) => outcome
                .report
                .write(a.format, BufWriter::new(File::create(path)?))?,
            None => outcome.report.write(a.format, io::stdout().lock())?,
        }
        Ok::<_, CliError>(outcome.exit_code())
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
