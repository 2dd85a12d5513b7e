use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use motzkin_cli::{
    run_sweep, run_validation, write_data, write_outputs, Format, IntRange, Level, Quantity,
    SweepRequest,
};

/// Exact and asymptotic observables of the Motzkin spin chain.
#[derive(Debug, Parser)]
#[command(name = "motzkin", version)]
struct Args {
    /// Observable to tabulate.
    #[arg(long, value_enum, required_unless_present = "validate")]
    quantity: Option<Quantity>,

    /// Chain lengths 2n, as `a`, `a:b` or `a:b:step`.
    #[arg(long = "two-n")]
    two_n: Option<IntRange>,

    /// Cut positions n1 (first site for `thermal`); defaults to all of them.
    #[arg(long = "n1-range")]
    n1_range: Option<IntRange>,

    /// Block lengths L (site separation for `thermal`).
    #[arg(long = "L-range")]
    l_range: Option<IntRange>,

    /// Renyi orders, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    kappa: Vec<f64>,

    /// Inverse temperatures, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    beta: Vec<f64>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Data file; a `.meta.json` sidecar is written next to it. Without it
    /// data goes to standard output.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Run the validation suites instead of a sweep.
    #[arg(long, value_enum)]
    validate: Option<Level>,
}

fn validate(level: Level, out: Option<PathBuf>) -> ExitCode {
    let report = run_validation(level);
    for r in &report.records {
        eprintln!(
            "{} {:<32} {:>7.2} s  {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.seconds,
            r.detail
        );
    }
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    let written = match out {
        Some(path) => std::fs::write(&path, json + "\n"),
        None => writeln!(std::io::stdout(), "{json}"),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(level) = args.validate {
        return validate(level, args.out);
    }
    let Some(quantity) = args.quantity else {
        eprintln!("error: --quantity is required");
        return ExitCode::from(2);
    };
    let req = SweepRequest {
        quantity,
        two_n: args.two_n,
        n1: args.n1_range,
        block: args.l_range,
        kappa: args.kappa,
        beta: args.beta,
        format: args.format,
        out: args.out.clone(),
    };
    let output = match run_sweep(&req) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    for e in &output.errors {
        eprintln!("skipped {}: {}", e.point, e.message);
    }
    let written = match &args.out {
        Some(path) => write_outputs(&req, &output, path).map(|_| ()),
        None => write_data(&output, req.format, std::io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
