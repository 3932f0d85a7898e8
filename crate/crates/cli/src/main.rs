mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sigmacat::compact::SCOPE_STATEMENT;

/// Decision procedures for filtered 2-categories, bicolimits and flatness
/// over finite categories.
#[derive(Parser, Debug)]
#[command(name = "sigmacat", version)]
pub struct Cli {
    /// Directory searched for fixtures given by name.
    #[arg(long, env = "SIGMACAT_CORPUS", default_value = "corpus", global = true)]
    pub corpus: PathBuf,

    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,

    /// Permutes the order in which suite workers start; verdicts are unaffected.
    #[arg(long, global = true)]
    pub seed_order: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Filteredness and cofinality checks.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Bicolimit of a diagram fixture.
    Colimit {
        fixture: String,
        /// Σ-class name; defaults to the one recorded with the diagram.
        #[arg(long)]
        sigma: Option<String>,
        /// Writes the colimit category and its cocone to this path.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Finite bilimits of finite categories.
    #[command(subcommand)]
    Bilim(BilimCommand),
    /// Flatness of Cat-valued pseudofunctors.
    #[command(subcommand)]
    Flat(FlatCommand),
    /// Bicompactness tested against one diagram.
    #[command(subcommand, long_about = SCOPE_STATEMENT)]
    Compact(CompactCommand),
    /// Finite limits and the lex closure of bicolimits.
    #[command(subcommand)]
    Lex(LexCommand),
    /// Replays every lemma over the corpus directory.
    VerifySuite,
}

#[derive(Subcommand, Debug)]
pub enum CheckCommand {
    Bifiltered {
        fixture: String,
    },
    SigmaFiltered {
        fixture: String,
        #[arg(long)]
        sigma: String,
    },
    /// σ-cofinality of a recorded map fixture.
    Cofinal {
        fixture: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum BilimCommand {
    /// Product of two category fixtures.
    Product {
        first: String,
        second: String,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Bi-iso-inserter of a pseudoidempotent and the identity.
    Equalizer {
        fixture: String,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Arrow cotensor of a category fixture.
    Cotensor {
        fixture: String,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Pseudolimit of a diagram fixture.
    Pseudolimit {
        fixture: String,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Splitting of a pseudoidempotent fixture.
    Split {
        fixture: String,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Colimit of limits against limit of colimits for a commutation fixture.
    Commute {
        fixture: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum FlatCommand {
    Check {
        fixture: String,
    },
    Decompose {
        fixture: String,
        /// Writes the full decomposition report to this path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CompactCommand {
    #[command(long_about = SCOPE_STATEMENT)]
    Check {
        /// Category fixture.
        k: String,
        /// Diagram fixture.
        diagram: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum LexCommand {
    /// Terminal object, binary products and equalizers of a category fixture.
    Check {
        fixture: String,
    },
    VerifyColimit {
        fixture: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.positive { 0 } else { 1 })
        }
        Err(e) => {
            match cli.format {
                Format::Human => eprintln!("error: {e}"),
                Format::Machine => println!("{}", serde_json::json!({ "error": e.to_string() })),
            }
            ExitCode::from(2)
        }
    }
}
