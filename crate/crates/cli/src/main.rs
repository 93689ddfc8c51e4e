use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use folforge::{parse_field, parse_order, Options, Report, EXIT_CHECK_FAILED, EXIT_INVALID};
use folforge_core::{CoefficientField, OrderKind};

#[derive(Parser)]
#[command(name = "folforge", version, about = "Recognize singular schemes of plane foliations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether an ideal is a singular scheme and build the 1-form.
    Construct(Args),
    /// Check a user-supplied triple (A, B, C).
    Verify(Args),
    /// Run the Betti screen only.
    Betti(Args),
    /// Print the singular-scheme ideal of a 1-form.
    Singular(Args),
    /// Run a parameter sweep and optionally fit constraints.
    Sweep(Args),
}

#[derive(clap::Args)]
struct Args {
    file: PathBuf,
    #[arg(long)]
    json: bool,
    /// Coefficient field, `q` or `gf:P`.
    #[arg(long, value_parser = parse_field)]
    field: Option<CoefficientField>,
    /// Monomial order: grevlex, grlex or lex.
    #[arg(long, value_parser = parse_order)]
    order: Option<OrderKind>,
    /// Reject unsaturated input instead of saturating it.
    #[arg(long)]
    no_saturate: bool,
    /// Write zero wall times in sweep output.
    #[arg(long)]
    no_timing: bool,
}

fn dispatch(cli: Cli) -> Report {
    let (run, args): (fn(&str, &Options) -> Report, Args) = match cli.command {
        Command::Construct(a) => (folforge::construct, a),
        Command::Verify(a) => (folforge::verify, a),
        Command::Betti(a) => (folforge::betti, a),
        Command::Singular(a) => (folforge::singular, a),
        Command::Sweep(a) => (folforge::sweep, a),
    };
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            return Report {
                code: EXIT_INVALID,
                stdout: String::new(),
                stderr: format!("error: cannot read {}: {e}\n", args.file.display()),
            }
        }
    };
    let opts = Options {
        json: args.json,
        field: args.field,
        order: args.order,
        strict: args.no_saturate,
        no_timing: args.no_timing,
    };
    match std::panic::catch_unwind(|| run(&text, &opts)) {
        Ok(r) => r,
        Err(_) => Report {
            code: EXIT_CHECK_FAILED,
            stdout: String::new(),
            stderr: "internal error\n".into(),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID as u8 } else { 0 });
        }
    };
    let report = dispatch(cli);
    let _ = std::io::stdout().write_all(report.stdout.as_bytes());
    let _ = std::io::stderr().write_all(report.stderr.as_bytes());
    ExitCode::from(report.code as u8)
}
