use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use epicheck_cli::input::{parse_document, Mode};
use epicheck_cli::output::render_text;
use epicheck_cli::{generate, run, CliError, GenRequest};

#[derive(Parser)]
#[command(name = "epicheck", version, about = "Exact existence checks for fundamental and essential matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Fundamental,
    Essential,
    Both,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Fundamental => Mode::Fundamental,
            ModeArg::Essential => Mode::Essential,
            ModeArg::Both => Mode::Both,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide existence for every instance in a correspondence file.
    Check {
        /// Overrides the file's `mode` directive; defaults to both.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Include witness matrices in the output.
        #[arg(long)]
        witness: bool,
        /// Answer rank(Z) <= 4 without running the pencil analysis.
        #[arg(long)]
        early_exit_rank4: bool,
        /// Emit the JSON schema instead of text.
        #[arg(long)]
        json: bool,
        /// Input file, or `-` for stdin.
        file: PathBuf,
    },
    /// Write a generated correspondence file to stdout.
    #[command(group(ArgGroup::new("source").required(true).args(["scene", "degenerate"])))]
    Gen {
        /// Project a random scene through two exact cameras.
        #[arg(long)]
        scene: bool,
        /// collinear_split, repeated_point, homography_related or rank_deficient.
        #[arg(long, value_name = "KIND")]
        degenerate: Option<String>,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Calibrated cameras (scene only).
        #[arg(long)]
        calibrated: bool,
        /// Target rank for rank_deficient.
        #[arg(long, default_value_t = 4)]
        rank: usize,
    },
}

fn read_input(file: &PathBuf) -> Result<String, CliError> {
    if file.as_os_str() == "-" {
        Ok(std::io::read_to_string(std::io::stdin())?)
    } else {
        Ok(std::fs::read_to_string(file)?)
    }
}

fn execute(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Check { mode, witness, early_exit_rank4, json, file } => {
            let mut doc = parse_document(&read_input(&file)?)?;
            doc.options.emit_witness |= witness;
            doc.options.early_exit_rank4 |= early_exit_rank4;
            let mode = mode.map(Mode::from).or(doc.mode).unwrap_or_default();
            let out = run(&doc, mode)?;
            Ok(if json { serde_json::to_string_pretty(&out).expect("serializable") + "\n" } else { render_text(&out) })
        }
        Command::Gen { scene, degenerate, m, seed, calibrated, rank } => {
            let request = match (&degenerate, scene) {
                (Some(kind), false) => GenRequest::Degenerate { kind, rank },
                _ => GenRequest::Scene { calibrated },
            };
            generate(&request, m, seed)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("epicheck: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
