use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use operad_deform::cli::{emit, exit_code, run, CommandRequest, Format, Options, Verb};
use operad_deform::Error;

/// Exact Koszul duality, convolution algebras and formal deformations.
#[derive(Parser)]
#[command(name = "operad-deform", version)]
struct Args {
    /// koszul-dual | cobar-homology | verify | cohomology | deform | quantize |
    /// classical-limit | gauge | conformal-check | conformal-d2 | partitions
    verb: String,
    /// JSON input file
    input: Option<PathBuf>,
    #[arg(long)]
    arity: Option<usize>,
    #[arg(long)]
    arity_max: Option<usize>,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    lambda_cap: Option<u32>,
    #[arg(long)]
    sweep_degree: Option<u32>,
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main_inner(args: Args) -> Result<String, Error> {
    let verb: Verb = args.verb.parse()?;
    let format: Format = args.format.parse()?;
    let input = match &args.input {
        Some(p) => Some(std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?),
        None => None,
    };
    let options = Options {
        arity: args.arity,
        arity_max: args.arity_max,
        order: args.order,
        lambda_cap: args.lambda_cap,
        sweep_degree: args.sweep_degree,
    };
    let report = run(&CommandRequest { verb, input, options })?;
    Ok(emit(&report, format))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(2);
        }
    };
    let output = args.output.clone();
    match main_inner(args) {
        Ok(text) => match output {
            Some(p) => match std::fs::write(&p, text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("{}: {e}", p.display());
                    ExitCode::from(3)
                }
            },
            None => {
                print!("{text}");
                ExitCode::SUCCESS
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
