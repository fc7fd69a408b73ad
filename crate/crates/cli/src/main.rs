//! `distmagic`: decide, construct and verify distance magic labelings of
//! complete multipartite graphs from the command line.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use distmagic::lab::{SweepConfig, SymmetricConfig};
use distmagic::{Instance, SearchParams};

mod commands;
mod render;

use commands::Outcome;

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

#[derive(Parser, Debug)]
#[command(name = "distmagic", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Feasibility verdict from divisibility, the singleton rule and the
    /// prefix condition.
    Check(InstanceArgs),
    /// Find an equitable partition.
    Solve {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Solve, then print the labeling of the multipartite graph.
    Label {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check a partition given as JSON (a `solve` report or a bare array of
    /// blocks).
    Verify {
        /// Read from this file; stdin when absent or `-`.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Closed neighbourhoods on the cycle of cliques instead of open
        /// neighbourhoods on the multipartite graph.
        #[arg(long)]
        closed: bool,
    },
    /// Compare the verdict with exhaustive search over every size sequence.
    Sweep {
        #[arg(long)]
        nmax: u32,
        /// Block counts, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        min_part: u32,
        #[command(flatten)]
        lab: LabArgs,
    },
    /// Check the equal-part criterion for every `H_{m,p}` with `m·p` bounded.
    Symmetric {
        #[arg(long)]
        max_total: u32,
        #[command(flatten)]
        lab: LabArgs,
    },
}

#[derive(Args, Debug)]
struct InstanceArgs {
    #[arg(long)]
    n: u64,
    /// Number of blocks; defaults to the number of sizes.
    #[arg(long)]
    k: Option<usize>,
    /// Block sizes, comma separated, in any order.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<u32>,
}

impl InstanceArgs {
    fn instance(&self) -> Result<Instance> {
        let k = self.k.unwrap_or(self.sizes.len());
        Ok(Instance::normalized(self.n, k, self.sizes.clone())?)
    }
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = SearchParams::default().max_restarts)]
    max_restarts: u64,
    /// Zero-delta moves per plateau; defaults to 2n.
    #[arg(long)]
    max_plateau_steps: Option<u64>,
    /// Node budget for the exact fallback.
    #[arg(long, default_value_t = SearchParams::default().exact_node_budget)]
    exact_budget: u64,
    /// Largest n for which the exact fallback runs.
    #[arg(long, default_value_t = SearchParams::default().exact_cutoff_n)]
    exact_cutoff_n: u32,
}

impl SearchArgs {
    fn params(&self) -> SearchParams {
        SearchParams {
            seed: self.seed,
            max_restarts: self.max_restarts,
            max_plateau_steps: self.max_plateau_steps,
            exact_node_budget: self.exact_budget,
            exact_cutoff_n: self.exact_cutoff_n,
        }
    }
}

#[derive(Args, Debug)]
struct LabArgs {
    /// Node budget per instance.
    #[arg(long, default_value_t = 100_000_000)]
    budget: u64,
    /// Worker threads; output does not depend on it.
    #[arg(long, default_value_t = default_workers())]
    workers: usize,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn read_input(path: Option<&PathBuf>) -> Result<String> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        }
        _ => {
            io::stdin()
                .read_to_string(&mut text)
                .context("reading stdin")?;
        }
    }
    Ok(text)
}

fn run(cli: &Cli) -> Result<Outcome> {
    Ok(match &cli.command {
        Command::Check(instance) => commands::check(&instance.instance()?),
        Command::Solve { instance, search } => {
            commands::solve(&instance.instance()?, &search.params())
        }
        Command::Label { instance, search } => {
            commands::label(&instance.instance()?, &search.params())
        }
        Command::Verify { input, closed } => {
            commands::verify(&read_input(input.as_ref())?, *closed)?
        }
        Command::Sweep {
            nmax,
            k,
            min_part,
            lab,
        } => {
            if k.contains(&0) {
                bail!("--k values must be at least 1");
            }
            commands::sweep(&SweepConfig {
                n_max: *nmax,
                k_set: k.clone(),
                min_part: *min_part,
                budget: lab.budget,
                workers: lab.workers.max(1),
            })
        }
        Command::Symmetric { max_total, lab } => commands::symmetric(&SymmetricConfig {
            max_total: *max_total,
            budget: lab.budget,
            workers: lab.workers.max(1),
        }),
    })
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<()> {
    let body = match cli.format {
        Format::Text => outcome.text.clone(),
        Format::Json => format!("{}\n", outcome.json),
    };
    match &cli.output {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|outcome| emit(&cli, &outcome).map(|()| outcome.exit));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::Exit::Usage as u8)
        }
    }
}
