use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use gaudin_cli::{input_error_report, load_instance, run, Command, Mode};

/// Solve, build and verify Bethe ansatz data for Gaudin models; check characters and W-algebra images.
#[derive(Parser, Debug)]
#[command(name = "gaudin", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Instance JSON file, or `builtin:<name>` for a corpus fixture.
    #[arg(long)]
    instance: String,
    /// Overrides the mode stored in the instance.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Also write the JSON report here.
    #[arg(long)]
    report: Option<std::path::PathBuf>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let report = match load_instance(&args.instance) {
        Ok(file) => run(args.command, &file, args.mode),
        Err(e) => input_error_report(args.command, args.mode, e),
    };
    let json = report.to_json();
    println!("{json}");
    if let Some(path) = &args.report {
        if let Err(e) = std::fs::write(path, format!("{json}\n")) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    eprint!("{}", report.summary());
    eprintln!("  elapsed {:.3} s", start.elapsed().as_secs_f64());
    ExitCode::from(report.exit_code() as u8)
}
