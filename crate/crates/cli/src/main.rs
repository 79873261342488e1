//! `rankwl`: canonisation, isomorphism, WL colourings, rank width, pebble
//! games, split pairs and the verification suites from the command line.
//!
//! Exit status: 0 on success (or "isomorphic"), 1 for "non-isomorphic" or a
//! failing suite, 2 for usage and input errors, 3 when an input exceeds a
//! size guard.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use rankwl_core::graph::{parse_graph, to_edge_list, Graph, VertexSet};
use rankwl_core::split::{
    comp_flip_extension, find_flip_extension, find_split_pair, flip_extension_graph, respects_cut,
};
use rankwl_core::{canon, decomposition, pebble, verify, wl};

#[derive(Parser)]
#[command(name = "rankwl", version, about = "WL isomorphism and canonisation for graphs of bounded rank width")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical string of a graph.
    Canon {
        file: PathBuf,
        /// Dimension parameter; canonisation runs (dim + 1)-WL.
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Decide isomorphism by comparing canonical strings.
    Iso {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Print the stable k-WL colour histogram.
    Wl {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Exact rank width and a witness decomposition.
    Rankwidth { file: PathBuf },
    /// Evaluate a clique-width expression to an edge list and label map.
    Cwexpr { file: PathBuf },
    /// Solve the bijective pebble game.
    Pebble {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long)]
        pebbles: usize,
    },
    /// First-fit ordered split pair for a vertex set.
    Splitpair {
        file: PathBuf,
        /// Comma-separated vertices, e.g. "0,1,2".
        #[arg(long)]
        set: String,
    },
    /// Flip extension for a vertex set, with the components it induces.
    Flipext {
        file: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Run one acceptance suite by name or number.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Guard(String),
}

impl From<rankwl_core::Error> for Failure {
    fn from(e: rankwl_core::Error) -> Self {
        if e.is_guard() {
            Failure::Guard(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<rankwl_core::GuardError> for Failure {
    fn from(e: rankwl_core::GuardError) -> Self {
        Failure::Guard(e.to_string())
    }
}

impl From<decomposition::DecompositionError> for Failure {
    fn from(e: decomposition::DecompositionError) -> Self {
        rankwl_core::Error::from(e).into()
    }
}

impl From<rankwl_core::split::SplitError> for Failure {
    fn from(e: rankwl_core::split::SplitError) -> Self {
        rankwl_core::Error::from(e).into()
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse_set(text: &str, n: usize) -> Result<VertexSet, Failure> {
    let mut members = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let v: usize = part
            .parse()
            .map_err(|_| Failure::Usage(format!("--set: {part:?} is not a vertex")))?;
        if v >= n {
            return Err(Failure::Usage(format!("--set: vertex {v} is not below n = {n}")));
        }
        members.push(v);
    }
    Ok(VertexSet::new(members))
}

/// Output text and exit status of one command.
fn run(command: Command) -> Result<(String, u8), Failure> {
    let mut out = String::new();
    let mut status = 0;
    match command {
        Command::Canon { file, dim } => {
            let g = load(&file)?;
            out = canon::canonical_string(&canon::canonise(&g, dim)?);
        }
        Command::Iso { file1, file2, dim } => {
            let (g, h) = (load(&file1)?, load(&file2)?);
            if canon::iso_test(&g, &h, dim)? {
                out.push_str("isomorphic");
            } else {
                out.push_str("non-isomorphic");
                status = 1;
            }
        }
        Command::Wl { file, dim } => {
            if dim == 0 {
                return Err(Failure::Usage("--dim: must be at least 1".into()));
            }
            let g = load(&file)?;
            let col = wl::wl_stable_k(&g, dim)?;
            out = format!("dimension {dim}, {} rounds, {} colours", col.rounds(), col.class_count());
            for (c, count) in wl::colour_histogram(&col) {
                out.push_str(&format!("\n{c} {count}"));
            }
        }
        Command::Rankwidth { file } => {
            let g = load(&file)?;
            let (w, witness) = decomposition::rank_width_exact(&g)?;
            out = format!("{w}\n{witness}");
        }
        Command::Cwexpr { file } => {
            let e = decomposition::parse_expression(&read(&file)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let (g, labels) = decomposition::evaluate_expression(&e);
            out = to_edge_list(&g);
            if !out.ends_with('\n') {
                out.push('\n');
            }
            let labels: Vec<String> = labels.iter().map(u32::to_string).collect();
            out.push_str(&format!("# labels {}", labels.join(" ")));
        }
        Command::Pebble { file1, file2, pebbles } => {
            if pebbles == 0 {
                return Err(Failure::Usage("--pebbles: must be at least 1".into()));
            }
            let (g, h) = (load(&file1)?, load(&file2)?);
            out = pebble::spoiler_wins(&g, &h, pebbles)?.winner.to_string();
        }
        Command::Splitpair { file, set } => {
            let g = load(&file)?;
            let x = parse_set(&set, g.n())?;
            out = find_split_pair(&g, &x)?.to_string();
        }
        Command::Flipext { file, set } => {
            let g = load(&file)?;
            let x = parse_set(&set, g.n())?;
            let sp = find_split_pair(&g, &x)?;
            let ext = find_flip_extension(&g, &sp)?;
            out = ext.to_string();
            let blocks = rankwl_core::graph::connected_components(&flip_extension_graph(&g, &ext)?);
            debug_assert!((0..g.n()).all(|v| blocks
                .iter()
                .any(|b| b.contains(v) && comp_flip_extension(&g, &ext, v).ok().as_ref() == Some(b))));
            let listed: Vec<String> = blocks.iter().map(|b| b.to_string()).collect();
            out.push_str(&format!("components: {}\n", listed.join(" ")));
            let verdict = if respects_cut(&blocks, &x) { "yes" } else { "no" };
            out.push_str(&format!("respects cut: {verdict}"));
        }
        Command::Verify { suite, seed } => {
            let report = verify::run_suite(&suite, seed).ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown suite {suite:?}; expected one of {} or 1-9",
                    verify::suite_names().join(", ")
                ))
            })??;
            out = report.to_string();
            if !report.passed() {
                status = 1;
            }
        }
    }
    Ok((out, status))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, status)) => {
            println!("{}", out.trim_end());
            ExitCode::from(status)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
