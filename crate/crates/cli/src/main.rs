use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use report::{Inputs, Outcome};

#[derive(Parser)]
#[command(name = "gameforge", version, about = "Exact analysis of finite normal-form games")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Strict,
    Ordinal,
    Cardinal,
}

/// A pure profile by strategy names, or a mixed profile document.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct ProfileArg {
    /// Comma-separated strategy names in player order.
    #[arg(long)]
    profile: Option<String>,
    /// Mixed profile document.
    #[arg(long)]
    mixed: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ValuesArg {
    /// Seed for pseudo-random distinct orbit values.
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated rational literals, one per orbit.
    #[arg(long)]
    values: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Players, strategies and size of a game.
    Info { game: PathBuf },
    /// Payoffs at a pure or mixed profile.
    Payoff {
        game: PathBuf,
        #[command(flatten)]
        at: ProfileArg,
        /// Only this player.
        #[arg(long)]
        player: Option<String>,
    },
    /// All pure Nash equilibria.
    PureNash { game: PathBuf },
    /// Best responses to the opponents' part of a profile.
    BestResponse {
        game: PathBuf,
        #[command(flatten)]
        at: ProfileArg,
        #[arg(long)]
        player: Option<String>,
    },
    /// Strict dominance between pure strategies.
    Dominance {
        game: PathBuf,
        #[arg(long)]
        player: Option<String>,
    },
    /// Whether a profile is a Nash equilibrium.
    VerifyNe {
        game: PathBuf,
        #[command(flatten)]
        at: ProfileArg,
    },
    /// Isomorphisms between two games, or a check of one bijection.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Strict)]
        mode: Mode,
        /// List every isomorphism instead of the first.
        #[arg(long, conflicts_with = "bijection")]
        all: bool,
        /// Check this bijection document instead of searching.
        #[arg(long)]
        bijection: Option<PathBuf>,
    },
    /// The automorphism group.
    Aut { game: PathBuf },
    /// Symmetry class with witnesses.
    Classify { game: PathBuf },
    /// Build a game from a generator document.
    Construct {
        /// Generator document.
        #[arg(long)]
        generators: PathBuf,
        #[command(flatten)]
        values: ValuesArg,
    },
    /// Ordinal classes of strictly ordered 2x2 games.
    #[command(name = "census-2x2")]
    Census2x2,
}

fn run(command: &Command, inputs: &mut Inputs) -> Result<Outcome, String> {
    use commands::*;
    match command {
        Command::Info { game } => info(&*inputs.game(game)?),
        Command::Payoff { game, at, player } => {
            let g = inputs.game(game)?;
            let at = inputs.profile(&g, at.profile.as_deref(), at.mixed.as_deref())?;
            payoff(&g, &at, player.as_deref())
        }
        Command::PureNash { game } => pure_nash(&*inputs.game(game)?),
        Command::BestResponse { game, at, player } => {
            let g = inputs.game(game)?;
            let at = inputs.profile(&g, at.profile.as_deref(), at.mixed.as_deref())?;
            best_response(&g, &at, player.as_deref())
        }
        Command::Dominance { game, player } => dominance(&*inputs.game(game)?, player.as_deref()),
        Command::VerifyNe { game, at } => {
            let g = inputs.game(game)?;
            let at = inputs.profile(&g, at.profile.as_deref(), at.mixed.as_deref())?;
            verify_ne(&g, &at)
        }
        Command::Iso {
            first,
            second,
            mode,
            all,
            bijection,
        } => {
            let a = inputs.game(first)?;
            let b = inputs.game(second)?;
            let mode = match mode {
                Mode::Strict => gameforge::IsoMode::Strict,
                Mode::Ordinal => gameforge::IsoMode::Ordinal,
                Mode::Cardinal => gameforge::IsoMode::Cardinal,
            };
            match bijection {
                Some(path) => {
                    let g = inputs.bijection(path, &a, &b)?;
                    iso_check(&g, mode)
                }
                None => iso_search(&a, &b, mode, *all),
            }
        }
        Command::Aut { game } => aut(&inputs.game(game)?),
        Command::Classify { game } => classify(&inputs.game(game)?),
        Command::Construct { generators, values } => {
            let set = inputs.generators(generators)?;
            construct(set, values.seed, values.values.as_deref())
        }
        Command::Census2x2 => Ok(census()),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Info { .. } => "info",
        Command::Payoff { .. } => "payoff",
        Command::PureNash { .. } => "pure-nash",
        Command::BestResponse { .. } => "best-response",
        Command::Dominance { .. } => "dominance",
        Command::VerifyNe { .. } => "verify-ne",
        Command::Iso { .. } => "iso",
        Command::Aut { .. } => "aut",
        Command::Classify { .. } => "classify",
        Command::Construct { .. } => "construct",
        Command::Census2x2 => "census-2x2",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut inputs = Inputs::default();
    match run(&cli.command, &mut inputs) {
        Ok(outcome) => {
            let out = match cli.format {
                Format::Text => outcome.text,
                Format::Json => report::document(command_name(&cli.command), &inputs, outcome.result) + "\n",
            };
            // A closed pipe on stdout is the reader's choice, not an error.
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            if outcome.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("gameforge: {message}");
            ExitCode::from(3)
        }
    }
}
