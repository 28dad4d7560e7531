use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod io;

#[derive(Parser)]
#[command(name = "paritykit", version, about = "Parity complexes, their cells and morphisms")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Level {
    Apc,
    Wpc,
    Pc,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SignArg {
    Source,
    Target,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Additive,
    WeakParity,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom and print the report.
    Validate {
        file: String,
        /// Exit 1 unless the structure is at least this kind of complex.
        #[arg(long, value_enum)]
        require: Option<Level>,
    },
    /// Print the classification only.
    Classify { file: String },
    /// Write a globe, oriental or cube fixture.
    Generate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Print the boundary of each generator in the chain complex.
    Chain {
        file: String,
        /// Also check ∂∂ = 0 and the augmentation; exit 1 on failure.
        #[arg(long)]
        check: bool,
    },
    /// Print the atom of a generator.
    Atom { file: String, id: String },
    /// Enumerate the cells of the free ω-category.
    Cells {
        file: String,
        #[arg(long)]
        max_dim: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Print the k-source or k-target of a cell.
    Face {
        file: String,
        #[arg(long)]
        cell: String,
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum)]
        sign: SignArg,
    },
    /// Compose two cells along dimension k.
    Compose {
        file: String,
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        cells: Vec<String>,
        #[arg(short)]
        k: usize,
    },
    /// Split a cell into slices with singleton tops.
    Decompose {
        file: String,
        #[arg(long)]
        cell: String,
    },
    /// Validate, compose or apply morphisms.
    #[command(subcommand)]
    Morphism(MorphismCommand),
    /// Structure → chain complex → basis → structure; exit 0 iff unchanged.
    Roundtrip { file: String },
    /// Check that every cell up to max-dim is generated by atoms.
    Freeness {
        file: String,
        #[arg(long)]
        max_dim: usize,
    },
}

#[derive(Args)]
struct ModeOpt {
    #[arg(long, value_enum, default_value_t = ModeArg::WeakParity)]
    mode: ModeArg,
}

#[derive(Subcommand)]
enum MorphismCommand {
    Validate {
        file: String,
        #[command(flatten)]
        mode: ModeOpt,
        /// Also check movement in the stronger sense.
        #[arg(long)]
        strict: bool,
    },
    /// Write `second ∘ first`.
    Compose {
        first: String,
        second: String,
        #[command(flatten)]
        mode: ModeOpt,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Image of a cell of the source.
    Apply {
        file: String,
        #[arg(long)]
        cell: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fmt = cli.format;
    let result = match cli.command {
        Command::Validate { file, require } => commands::validate(&file, require, fmt),
        Command::Classify { file } => commands::classify(&file, fmt),
        Command::Generate { family, n, output } => commands::generate(&family, n, &output),
        Command::Chain { file, check } => commands::chain(&file, check, fmt),
        Command::Atom { file, id } => commands::atom(&file, &id, fmt),
        Command::Cells {
            file,
            max_dim,
            count_only,
        } => commands::cells(&file, max_dim, count_only, fmt),
        Command::Face { file, cell, k, sign } => commands::face(&file, &cell, k, sign, fmt),
        Command::Compose { file, cells, k } => commands::compose(&file, &cells[0], &cells[1], k, fmt),
        Command::Decompose { file, cell } => commands::decompose(&file, &cell, fmt),
        Command::Morphism(MorphismCommand::Validate { file, mode, strict }) => {
            commands::morphism_validate(&file, mode.mode, strict, fmt)
        }
        Command::Morphism(MorphismCommand::Compose {
            first,
            second,
            mode,
            output,
        }) => commands::morphism_compose(&first, &second, mode.mode, &output),
        Command::Morphism(MorphismCommand::Apply { file, cell }) => commands::morphism_apply(&file, &cell, fmt),
        Command::Roundtrip { file } => commands::roundtrip(&file, fmt),
        Command::Freeness { file, max_dim } => commands::freeness(&file, max_dim, fmt),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("paritykit: {e}");
            ExitCode::from(2)
        }
    }
}
