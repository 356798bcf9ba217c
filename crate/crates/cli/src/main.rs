mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use commands::{Outcome, Status};

#[derive(Parser, Debug)]
#[command(name = "compdim", version, about = "Dimension of ages of compositions and partitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Value substituted for `w`.
    #[arg(long = "B", global = true, default_value_t = 4)]
    omega_cap: u32,
    /// Columns substituted for each repeated symbol.
    #[arg(long = "R", global = true, default_value_t = 3)]
    repeat_cap: usize,
    /// Largest dimension the exact solver tries.
    #[arg(long = "max", global = true, default_value_t = 4)]
    d_max: usize,
    /// Recorded in the manifest so randomized runs can be replayed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Is composition U contained in W?
    Le {
        u: String,
        w: String,
        /// Print the greedy embedding columns.
        #[arg(long)]
        embedding: bool,
    },
    /// Is composition C in the age of a generalized word?
    Member { c: String, word: String },
    /// The truncation of a word and the size of its truncated age.
    Truncate {
        word: String,
        /// List every element of the truncated age.
        #[arg(long)]
        list: bool,
    },
    /// Build and check a crown family: partition, omega3, ones2, w1w, 1w1w or 2w.
    Crown {
        family: String,
        n: usize,
        /// Also compute the dimension with the exact solver.
        #[arg(long)]
        solve: bool,
    },
    /// Exact dimension of a truncated age or of a poset file.
    Dim {
        #[arg(long, conflicts_with = "poset")]
        age: Option<String>,
        #[arg(long)]
        poset: Option<PathBuf>,
        #[arg(long, default_value_t = 2_000_000)]
        node_limit: u64,
    },
    /// Run a builder and verify its family.
    ///
    /// Constructions: ww; band C; word W; cap-left A B; cap-inner A B; double-outer A B C;
    /// double-inner A B C; partition W.
    Realize {
        construction: String,
        params: Vec<String>,
        /// Append first-fit completion members for pairs the construction leaves unbroken.
        #[arg(long)]
        complete: bool,
        /// Write the host and family in the poset text format.
        #[arg(long)]
        family: Option<PathBuf>,
        /// Box for partition ages.
        #[arg(long, default_value_t = 6)]
        rows: usize,
        #[arg(long, default_value_t = 6)]
        cols: u32,
    },
    /// Replay a poset file with a refinement family against the realizer criterion.
    Verify { file: PathBuf },
    /// Classify the union of the ages of the given words (or of the lines of --file).
    Classify {
        words: Vec<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// ASCII drawings: skyline C, word W, ferrers P, hasse (--age W | FILE).
    Render {
        kind: String,
        object: Option<String>,
        #[arg(long)]
        age: Option<String>,
    },
}

/// Everything needed to rerun a command.
#[derive(Serialize, Debug)]
struct RunManifest {
    command: String,
    args: Vec<String>,
    truncation: (u32, usize),
    d_max: usize,
    seed: Option<u64>,
    out: Option<String>,
    version: &'static str,
}

#[derive(Serialize)]
struct Envelope<'a> {
    manifest: &'a RunManifest,
    status: Status,
    report: &'a serde_json::Value,
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let t = compdim::order::TruncationSpec::new(cli.omega_cap, cli.repeat_cap)?;
    match &cli.command {
        Command::Le { u, w, embedding } => commands::le(u, w, *embedding),
        Command::Member { c, word } => commands::member(c, word),
        Command::Truncate { word, list } => commands::truncate(word, t, *list),
        Command::Crown { family, n, solve } => commands::crown(family, *n, solve.then_some(cli.d_max)),
        Command::Dim { age, poset, node_limit } => {
            commands::dim(age.as_deref(), poset.as_deref(), t, cli.d_max, *node_limit)
        }
        Command::Realize { construction, params, complete, family, rows, cols } => {
            commands::realize(construction, params, t, *complete, family.as_deref(), (*rows, *cols))
        }
        Command::Verify { file } => commands::verify(file),
        Command::Classify { words, file } => {
            let mut all = words.clone();
            if let Some(f) = file {
                let text = std::fs::read_to_string(f)?;
                all.extend(
                    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from),
                );
            }
            commands::classify(&all)
        }
        Command::Render { kind, object, age } => commands::render(kind, object.as_deref(), age.as_deref(), t),
    }
}

fn manifest(cli: &Cli) -> RunManifest {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    let command = if args.is_empty() { String::new() } else { args.remove(0) };
    RunManifest {
        command,
        args,
        truncation: (cli.omega_cap, cli.repeat_cap),
        d_max: cli.d_max,
        seed: cli.seed,
        out: cli.out.as_ref().map(|p| p.display().to_string()),
        version: env!("CARGO_PKG_VERSION"),
    }
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let m = manifest(&cli);
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let rendered = match cli.format {
        Format::Text => outcome.text.clone(),
        Format::Structured => {
            let env = Envelope { manifest: &m, status: outcome.status, report: &outcome.report };
            serde_json::to_string_pretty(&env).expect("reports serialize") + "\n"
        }
    };
    if let Err(e) = emit(&cli, &rendered) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match outcome.status {
        Status::Pass => ExitCode::SUCCESS,
        Status::Fail => ExitCode::from(1),
    }
}
