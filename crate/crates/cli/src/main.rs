//! `nearconf`: build, check, draw and verify near-configurations.
//!
//! Exit codes: 0 success, 1 parse or verification failure, 2 invalid
//! parameters, 3 not realizable, 4 realizability unknown, 5 retries or
//! search budget exhausted.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::CommandResult;

#[derive(Parser)]
#[command(name = "nearconf", version, about = "Near-configurations of points and lines")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Lift size guards.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Build a structure: cyclic <m>, near <n>, compound-nongeo <n> or catalog:<name>.
    Construct {
        kind: String,
        n: Option<usize>,
        /// Where to write the structure; stdout if omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// For catalog entries with known coordinates, also write them here.
        #[arg(long)]
        realization: Option<PathBuf>,
    },
    /// Validate a structure and decide whether it can be drawn.
    Check { path: PathBuf },
    /// Compute exact coordinates for a near-configuration.
    Realize {
        path: PathBuf,
        /// Where to write the realization.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also draw it as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check a realization file against its structure exactly.
    Verify { structure: PathBuf, realization: PathBuf },
    /// Print the peeling trace of the Levi graph.
    Peel { path: PathBuf },
    /// Write the dual structure.
    Dual {
        path: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Test two structures for isomorphism.
    Iso { a: PathBuf, b: PathBuf },
    /// Count near-configurations on n points up to isomorphism.
    Search {
        n: usize,
        /// Write one structure file per class into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Draw a realization as SVG.
    Render {
        structure: PathBuf,
        realization: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context { seed: cli.seed, force: cli.force };
    let result = match cli.command {
        Command::Construct { kind, n, out, realization } => {
            commands::construct(&ctx, &kind, n, out.as_deref(), realization.as_deref())
        }
        Command::Check { path } => commands::check(&ctx, &path),
        Command::Realize { path, out, svg } => {
            commands::realize(&ctx, &path, out.as_deref(), svg.as_deref())
        }
        Command::Verify { structure, realization } => commands::verify(&structure, &realization),
        Command::Peel { path } => commands::peel(&path),
        Command::Dual { path, out } => commands::dual(&path, out.as_deref()),
        Command::Iso { a, b } => commands::iso(&a, &b),
        Command::Search { n, out_dir } => commands::search(&ctx, n, out_dir.as_deref()),
        Command::Render { structure, realization, out } => {
            commands::render(&ctx, &structure, &realization, out.as_deref())
        }
    };
    emit(&result, cli.format);
    ExitCode::from(result.exit_code)
}

fn emit(result: &CommandResult, format: Format) {
    match format {
        Format::Human => {
            print!("{}", result.human_text);
            eprint!("{}", result.notes);
            if let Some(e) = &result.error {
                eprintln!("error: {e}");
            }
        }
        Format::Machine => {
            let text = serde_json::to_string_pretty(&result.machine_report())
                .expect("reports are plain JSON");
            println!("{text}");
        }
    }
}
