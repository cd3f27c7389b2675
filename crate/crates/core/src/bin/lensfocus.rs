use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lensfocus::check::{self, Config, Scope};
use lensfocus::circuits::{named_example, EXAMPLE_NAMES};
use lensfocus::file::{emit_circuit, parse_circuit};
use lensfocus::{Circuit, DPState, Error, Tuple};

/// Simulate circuit files and run the law suites.
#[derive(Parser)]
#[command(name = "lensfocus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a circuit file on an input state and print the output amplitudes.
    Run(RunArgs),
    /// Run a law suite and print one line per law.
    Check(CheckArgs),
    /// Write an example circuit as a circuit file.
    Examples(ExampleArgs),
}

#[derive(Args)]
struct RunArgs {
    circuit: PathBuf,
    /// A basis digit string such as `100`, or a state file.
    #[arg(long)]
    input: String,
    /// Hide amplitudes smaller than this magnitude.
    #[arg(long, default_value_t = 0.0)]
    threshold: f64,
    #[arg(long)]
    parallel: bool,
    /// Also run through the dense operator and report the deviation.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// lens-laws, focus-laws, unitarity, oracle, monoid, examples or all.
    scope: String,
    #[arg(long, default_value_t = Config::default().seed)]
    seed: u64,
    #[arg(long)]
    max_wires: Option<usize>,
    #[arg(long, default_value_t = Config::default().trials)]
    trials: usize,
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct ExampleArgs {
    /// shor, ghz or reverse.
    name: String,
    /// GHZ depth or reversal width.
    #[arg(long)]
    n: Option<usize>,
    /// Write here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

const ORACLE_TOL: f64 = 1e-10;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => run(args),
        Command::Check(args) => check(args),
        Command::Examples(args) => examples(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_input(arg: &str, c: &Circuit) -> Result<DPState, Error> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
            location: arg.to_string(),
            message: e.to_string(),
        })?;
        return DPState::parse_text(&text, c.n(), c.q()).map_err(|e| Error::InFile {
            location: arg.to_string(),
            source: Box::new(e),
        });
    }
    let digits = Tuple::parse_digits(arg, c.q())?;
    if digits.arity() != c.n() {
        return Err(Error::ArityMismatch {
            expected: c.n(),
            found: digits.arity(),
        });
    }
    DPState::ket(&digits, c.q())
}

fn run(args: RunArgs) -> Result<bool, Error> {
    let circuit = parse_circuit(&args.circuit).map_err(|e| Error::InFile {
        location: args.circuit.display().to_string(),
        source: Box::new(e),
    })?;
    let input = read_input(&args.input, &circuit)?;
    let output = if args.parallel {
        circuit.run_parallel(&input)?
    } else {
        circuit.run(&input)?
    };
    print!("{}", output.to_text(args.threshold));
    if args.oracle {
        let dense = circuit.to_gate()?.apply(&input)?;
        let dev = dense.max_abs_diff(&output)?;
        let ok = dev <= ORACLE_TOL;
        eprintln!(
            "oracle: max deviation {dev:.3e} (tol {ORACLE_TOL:.0e}) {}",
            if ok { "PASS" } else { "FAIL" }
        );
        return Ok(ok);
    }
    Ok(true)
}

fn check(args: CheckArgs) -> Result<bool, Error> {
    let scopes: Vec<Scope> = if args.scope == "all" {
        Scope::ALL.to_vec()
    } else {
        vec![args.scope.parse()?]
    };
    let cfg = Config {
        seed: args.seed,
        max_wires: args.max_wires,
        trials: args.trials,
        oracle: args.oracle,
        parallel: args.parallel,
    };
    let mut all_passed = true;
    for scope in scopes {
        let report = check::run(scope, &cfg)?;
        println!("{report}");
        all_passed &= report.passed();
    }
    Ok(all_passed)
}

fn examples(args: ExampleArgs) -> Result<bool, Error> {
    let circuit = named_example(&args.name, args.n).inspect_err(|_| {
        eprintln!("known examples: {}", EXAMPLE_NAMES.join(", "));
    })?;
    let text = emit_circuit(&circuit) + "\n";
    match args.output {
        Some(path) => std::fs::write(&path, text).map_err(|e| Error::Parse {
            location: path.display().to_string(),
            message: e.to_string(),
        })?,
        None => print!("{text}"),
    }
    Ok(true)
}
