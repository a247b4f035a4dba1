use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use cegame_cli::bench;
use cegame_cli::commands::{self, print_json};
use cegame_cli::CliError;
use cegame_core::game::{FLOW_EPS, VERIFY_EPS};
use cegame_core::nash::NashOptions;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cegame", version, about = "Solve and transform catcher-evader games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SolverArgs {
    /// Tolerance on per-resource utilities and allocated mass
    #[arg(long, default_value_t = FLOW_EPS)]
    eps: f64,
    /// Cap on solver iterations
    #[arg(long, default_value_t = 1_000_000)]
    max_iterations: usize,
    /// Min-cost flow algorithm (ssp or cycle-canceling)
    #[arg(long, default_value = "ssp")]
    flow: String,
}

impl SolverArgs {
    fn options(&self) -> NashOptions {
        NashOptions {
            eps: self.eps,
            mass_eps: self.eps,
            max_iterations: self.max_iterations,
            flow: self.flow.clone(),
            ..NashOptions::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Security,
    Test,
    Matching,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Security => "security",
            Kind::Test => "test",
            Kind::Matching => "matching",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a game file against every game invariant
    Validate { game: String },
    /// Compute a Nash equilibrium
    SolveNash {
        game: String,
        #[command(flatten)]
        solver: SolverArgs,
        /// Write the per-phase trace here, one JSON record per line
        #[arg(long)]
        trace: Option<String>,
    },
    /// Compute the catcher's optimal commitment against a single evader
    SolveStackelberg { game: String },
    /// Turn a security game, scored test or matching spec into a game file
    Reduce {
        #[arg(value_enum)]
        kind: Kind,
        spec: String,
    },
    /// Exchange the catcher's covered and uncovered roles
    Swap { game: String },
    /// Check a profile for equilibrium; exits 1 if it is not one
    Verify {
        game: String,
        /// Profile rows, or the output of solve-nash
        profile: String,
        #[arg(long, default_value_t = VERIFY_EPS)]
        eps: f64,
    },
    /// Split each player's allocation into a lottery over pure site sets
    Decompose { game: String, profile: String },
    /// Generate a random game
    Gen {
        #[arg(short = 'n', long, default_value_t = 1)]
        evaders: usize,
        #[arg(short = 'm', long)]
        sites: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// One evader with random catcher penalties, for solve-stackelberg
        #[arg(long)]
        single_evader: bool,
    },
    /// Time the Nash solver on random n-by-n games and write CSV
    Bench {
        /// Sizes as 2..10 or 2,5,10
        #[arg(long, default_value = "2..10")]
        sizes: String,
        /// Seeds 0..K per size
        #[arg(long, default_value_t = 20)]
        per_size: u64,
        /// CSV destination; standard output when absent
        #[arg(long)]
        out: Option<String>,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

enum Output {
    Json(serde_json::Value),
    Text(String),
    Done,
}

fn run(cli: Cli) -> Result<Output, CliError> {
    Ok(match cli.command {
        Command::Validate { game } => Output::Json(commands::validate(&game)?),
        Command::SolveNash { game, solver, trace } => {
            Output::Json(commands::solve_nash_cmd(&game, &solver.options(), trace.as_deref())?)
        }
        Command::SolveStackelberg { game } => Output::Json(commands::solve_stackelberg_cmd(&game)?),
        Command::Reduce { kind, spec } => Output::Text(commands::reduce(kind.name(), &spec)?),
        Command::Swap { game } => Output::Text(commands::swap(&game)?),
        Command::Verify { game, profile, eps } => {
            let (report, ok) = commands::verify(&game, &profile, eps)?;
            print_json(io::stdout().lock(), &report)?;
            if !ok {
                let worst = report["worst_violation"].as_f64().unwrap_or(f64::NAN);
                return Err(CliError::NotEquilibrium(worst));
            }
            Output::Done
        }
        Command::Decompose { game, profile } => Output::Json(commands::decompose(&game, &profile)?),
        Command::Gen {
            evaders,
            sites,
            seed,
            single_evader,
        } => Output::Text(commands::gen(evaders, sites, seed, single_evader)?),
        Command::Bench {
            sizes,
            per_size,
            out,
            solver,
        } => {
            let sizes = bench::parse_sizes(&sizes)?;
            let records = bench::run(&sizes, per_size, &solver.options())?;
            match out {
                Some(path) => {
                    let file = File::create(&path).map_err(|e| CliError::io(&path, e))?;
                    bench::write_csv(file, &records)?;
                }
                None => bench::write_csv(io::stdout().lock(), &records)?,
            }
            Output::Done
        }
    })
}

fn emit(out: Output) -> Result<(), CliError> {
    let stdout = io::stdout().lock();
    match out {
        Output::Json(v) => print_json(stdout, &v),
        Output::Text(s) => writeln!(&mut { stdout }, "{s}").map_err(|e| CliError::io("stdout", e)),
        Output::Done => Ok(()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()).and_then(emit) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(io::stderr(), "{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
