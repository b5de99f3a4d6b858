use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cwgame::cli::{self, Command, Options};
use cwgame::DEFAULT_TOL;

/// Coset weighted potential games: verify, decompose, and simulate finite games.
#[derive(Parser)]
#[command(name = "cwgame", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Decide whether the game is a coset weighted potential game and recover its potential.
    Verify(Common),
    /// Split the game into pure potential, non-strategic and pure harmonic parts.
    Decompose(Common),
    /// List pure Nash equilibria and follow best-response paths.
    Dynamics(Common),
    /// Test for exact and player-weighted potential structure.
    Classify(Common),
}

#[derive(Args)]
struct Common {
    /// Game file (JSON).
    game: PathBuf,
    /// Weights file overriding any weights in the game file.
    #[arg(long, conflicts_with = "uniform")]
    weights_file: Option<PathBuf>,
    /// Use w ≡ 1 regardless of the game file.
    #[arg(long)]
    uniform: bool,
    /// Relative solvability tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Also check the recovered potential against every unilateral deviation.
    #[arg(long)]
    brute_force: bool,
    /// Shift the potential so that P(1,…,1) = 0.
    #[arg(long)]
    recenter: bool,
    /// Starting profile for dynamics, e.g. 1,2,1.
    // Qualified path keeps clap from reading this as a repeated flag.
    #[arg(long, value_parser = cli::parse_profile)]
    start: Option<std::vec::Vec<usize>>,
    /// Step limit for best-response paths (default 10·n·k).
    #[arg(long)]
    max_steps: Option<usize>,
    /// Run best-response paths from every profile.
    #[arg(long, conflicts_with = "start")]
    all_starts: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        Sub::Verify(c) => (Command::Verify, c),
        Sub::Decompose(c) => (Command::Decompose, c),
        Sub::Dynamics(c) => (Command::Dynamics, c),
        Sub::Classify(c) => (Command::Classify, c),
    };
    let opts = Options {
        weights_file: common.weights_file,
        uniform: common.uniform,
        tol: common.tol,
        brute_force: common.brute_force,
        recenter: common.recenter,
        start: common.start,
        max_steps: common.max_steps,
        all_starts: common.all_starts,
    };
    match cli::run(command, &common.game, &opts) {
        Ok(report) => {
            if common.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
