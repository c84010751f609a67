use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use raag_out::gen::{gamma_pqr, gnp, lambda, named, GnpConfig};
use raag_out::mc::{sweep, to_csv};
use raag_out::SimplicialGraph;
use raag_out_cli::commands::{analyze, decide_json, presentation, PresentationFormat};
use raag_out_cli::io::{parse_graph, to_dot, to_json, GraphFormat};

#[derive(Parser)]
#[command(name = "raag-out", version, about = "Out(A_Γ) analysis for right-angled Artin groups")]
struct Cli {
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Input {
    /// Graph file (JSON or DOT); `-` reads standard input.
    file: String,
    /// Input format; guessed from the content when omitted.
    #[arg(long, value_enum)]
    input_format: Option<GraphFormat>,
}

#[derive(Subcommand)]
enum Command {
    /// Order pairs, SIL pairs, the maximal system and the pc table as JSON.
    Analyze(Input),
    /// The rule-chain decision and its certificate as JSON.
    Decide(Input),
    /// The finite presentation of PSO(A_Γ).
    Presentation {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        format: PresentationFormat,
    },
    /// Emit a generated or built-in graph.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, value_enum, default_value = "json", global = true)]
        format: GraphFormat,
    },
    /// Monte Carlo statistics over G(n, p) as CSV.
    Mc {
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        p: Vec<f64>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// The graph Λ_m with m ≥ 2 blocks.
    Lambda { m: usize },
    /// The graph Γ(p, q, r).
    Gamma { p: usize, q: usize, r: usize },
    /// An Erdős–Rényi graph.
    Gnp {
        n: usize,
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// A built-in fixture.
    Named { name: String },
}

fn read_graph(input: &Input) -> Result<SimplicialGraph, String> {
    let text = if input.file == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("reading standard input: {e}"))?;
        s
    } else {
        std::fs::read_to_string(&input.file).map_err(|e| format!("reading {}: {e}", input.file))?
    };
    let format = input.input_format.unwrap_or_else(|| GraphFormat::sniff(&text));
    parse_graph(&text, format).map_err(|e| format!("{}: {e}", input.file))
}

fn run(cli: &Cli) -> Result<String, String> {
    let domain = |e: raag_out::Error| e.to_string();
    match &cli.command {
        Command::Analyze(input) => analyze(&read_graph(input)?).map_err(domain),
        Command::Decide(input) => decide_json(&read_graph(input)?).map_err(domain),
        Command::Presentation { input, format } => Ok(presentation(&read_graph(input)?, *format)),
        Command::Gen { kind, format } => {
            let g = match kind {
                GenKind::Lambda { m } => lambda(*m),
                GenKind::Gamma { p, q, r } => gamma_pqr(*p, *q, *r),
                GenKind::Gnp { n, p, seed } => gnp(GnpConfig { n: *n, p: *p, seed: *seed }),
                GenKind::Named { name } => named(name),
            }
            .map_err(domain)?;
            Ok(match format {
                GraphFormat::Json => to_json(&g),
                GraphFormat::Dot => to_dot(&g),
            })
        }
        Command::Mc { n, p, samples, seed } => Ok(to_csv(&sweep(n, p, *samples, *seed).map_err(domain)?)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(&cli) {
        Ok(s) => s,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &output).map_err(|e| format!("writing {}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(output.as_bytes())
            .map_err(|e| format!("writing standard output: {e}")),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
