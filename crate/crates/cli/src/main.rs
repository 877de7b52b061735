use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use frey13::pipeline::{run_stage, Options, Part, Pipeline, Stage};

#[derive(Parser)]
#[command(
    name = "frey13",
    version,
    about = "Exact verification of the Frey-curve elimination for x^13 + y^13 = C z^p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Directory with newforms.csv and factors.txt (defaults to the bundled copies)
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,

    /// Worker threads for the parallel stages (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Exponent k for the lift-stability check, residues taken mod l^k
    #[arg(long, global = true)]
    lift_modulus: Option<u32>,

    /// Random pairs for the sampled checks
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,

    #[arg(long, global = true, default_value_t = 13)]
    seed: u64,

    /// Record wall-clock time per claim
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum PartArg {
    #[value(name = "I", alias = "1")]
    I,
    #[value(name = "II", alias = "2")]
    II,
}

#[derive(Subcommand)]
enum Command {
    /// Factorization of phi over Q(zeta_13) and the coprimality statements
    Algebra,
    /// The Frey curve: invariants, printed coefficients, Galois action, discriminant
    Family,
    /// Conductor exponents at 2 and 13 and semistability elsewhere
    Conductors,
    /// Possible traces at the eleven trace primes
    Traces {
        /// Also compute the traces forced by d | a + b (d in 3, 5, 7, 11)
        #[arg(long)]
        d: Option<u32>,
        /// Also compute the L5 traces of E(a^2, b^2)
        #[arg(long)]
        squares: bool,
        /// Also check the sets are stable under higher lifts (slow)
        #[arg(long)]
        stability: bool,
    },
    /// Compare the newforms with the trace sets
    Eliminate {
        #[arg(long, value_enum, default_value_t = PartArg::I)]
        part: PartArg,
        /// Restrict part I to a single d
        #[arg(long)]
        d: Option<u32>,
    },
    /// The irreducibility bound and the bound from the factor list
    Bound,
    /// Every stage, followed by the final bound
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        data_dir: cli.data_dir,
        lift_exponent: cli.lift_modulus,
        samples: cli.samples,
        seed: cli.seed,
        timings: cli.timings,
        ..Options::default()
    };
    let stage = match cli.command {
        Command::Algebra => Stage::Algebra,
        Command::Family => Stage::Family,
        Command::Conductors => Stage::Conductors,
        Command::Traces {
            d,
            squares,
            stability,
        } => Stage::Traces {
            d,
            squares,
            stability,
        },
        Command::Eliminate { part, d } => Stage::Eliminate {
            part: match part {
                PartArg::I => Part::I,
                PartArg::II => Part::II,
            },
            d,
        },
        Command::Bound => Stage::Bound,
        Command::All => Stage::All,
    };
    let pipeline = Pipeline::new(opts);
    let run = || run_stage(&pipeline, stage);
    let report = match cli.workers {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(e) => {
                eprintln!("frey13: cannot start {n} workers: {e}");
                return ExitCode::from(2);
            }
        },
        None => run(),
    };
    match cli.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
