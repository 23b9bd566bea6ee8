//! continuum-lab: finite-scale continuum constructions from the command
//! line.
//!
//! Every subcommand loads JSON inputs, runs the corresponding library
//! operation, and emits a deterministic report (JSON or text). Exit code 0
//! means every requested verification passed, 1 means some verification
//! failed or stayed unknown within budget, 2 means unusable input.

mod commands;
mod inputs;
mod report;

use clap::{Parser, Subcommand};
use continuum_core::budget::Budget;

#[derive(Parser)]
#[command(
    name = "continuum-lab",
    about = "finite lattices, Wallman spaces, grid complexes, the crooked partition and hyperspace tools",
    version
)]
struct Cli {
    /// Output format for the run report.
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "text"])]
    format: String,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Search-node budget for exhaustive searches.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u64,
    /// Element cap for lattices and model search bounds.
    #[arg(long, global = true, default_value_t = 4096)]
    cap: usize,
    /// Cell cap for grid complexes.
    #[arg(long, global = true, default_value_t = 200_000)]
    grid_cap: usize,
    /// Seed recorded in the report (reserved for sampling subcommands).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the lattice axioms of a meet/join table file.
    ValidateLattice {
        #[arg(long)]
        lattice: String,
    },
    /// Evaluate a sentence over a finite lattice.
    Eval {
        #[arg(long)]
        lattice: String,
        /// Builtin name (normal, conn, hi, dim_le_1, distributive,
        /// disjunctive, nontrivial, proper_middle) or an inline sentence.
        #[arg(long)]
        formula: String,
        /// Constant bindings `name=element`, repeatable.
        #[arg(long = "bind")]
        bindings: Vec<String>,
    },
    /// Search for a lattice model of a theory up to a size bound.
    ModelSearch {
        /// Theory file (`name: sentence` lines, `#` comments, `const` decls).
        #[arg(long)]
        theory: Option<String>,
        /// Comma-separated builtin sentence names to conjoin.
        #[arg(long)]
        formulas: Option<String>,
        #[arg(long)]
        bound: usize,
    },
    /// Emit the atomic diagram of a lattice as a theory file.
    Diagram {
        #[arg(long)]
        lattice: String,
    },
    /// Wallman space of a distributive lattice with the representation map.
    Wallman {
        #[arg(long)]
        lattice: String,
    },
    /// Connected components of a cell set.
    Components {
        #[arg(long)]
        grid: String,
        #[arg(long)]
        cells: String,
        #[arg(long, default_value = "closed", value_parser = ["closed", "open"])]
        mode: String,
    },
    /// Urysohn function between two disjoint cell sets.
    Urysohn {
        #[arg(long)]
        grid: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        d: String,
    },
    /// Is L a partition between A and B?
    PartitionCheck {
        #[arg(long)]
        grid: String,
        #[arg(long)]
        l: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Three-valued essentiality of a family of pairs.
    EssentialCheck {
        #[arg(long)]
        grid: String,
        /// JSON list of [A-cells, B-cells] pairs.
        #[arg(long)]
        pairs: String,
    },
    /// Monotone-light factorization of a labeled cell map.
    MlFactorize {
        #[arg(long)]
        grid: String,
        /// JSON list of [cell, label] pairs covering the domain.
        #[arg(long)]
        map: String,
    },
    /// Crooked-partition constructions.
    Crooked {
        #[command(subcommand)]
        command: CrookedCommand,
    },
    /// Hausdorff distance between two point sets of a metric space.
    Hausdorff {
        #[arg(long)]
        metric: String,
        /// JSON list of point names.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Whitney map values or Whitney level bands.
    Whitney {
        /// Metric space file (for --set evaluation).
        #[arg(long)]
        metric: Option<String>,
        /// Evaluate the map on this JSON list of point names.
        #[arg(long)]
        set: Option<String>,
        /// Grid complex (for level enumeration with the graph metric).
        #[arg(long)]
        grid: Option<String>,
        /// Level center (rational, e.g. 1/4).
        #[arg(long)]
        r: Option<String>,
        /// Band tolerance (rational).
        #[arg(long, default_value = "0")]
        tol: String,
        /// Connected-set enumeration cap.
        #[arg(long, default_value_t = 100_000)]
        enum_cap: usize,
    },
    /// Intersection graph degree of a cover.
    CoverDegree {
        /// JSON list of subsets (lists of integers).
        #[arg(long)]
        cover: Option<String>,
        /// Generate the l-cut grid cover of I^dim instead.
        #[arg(long)]
        cube: Option<usize>,
        #[arg(long)]
        cuts: Option<u32>,
    },
    /// Small-mesh witness search on a grid with an essential family.
    SmallMesh {
        #[arg(long)]
        grid: String,
        #[arg(long)]
        pairs: String,
        /// JSON list of cell sets (the disjoint small-mesh family).
        #[arg(long)]
        family: String,
    },
    /// The connected closed sets through a point, with the chain verdict.
    OrderChain {
        #[arg(long)]
        grid: String,
        /// Cell coordinates, e.g. 1,2.
        #[arg(long)]
        cell: String,
        #[arg(long, default_value_t = 100_000)]
        enum_cap: usize,
    },
}

#[derive(Subcommand)]
enum CrookedCommand {
    /// Verify all crooked-partition invariants.
    Validate {
        /// Optional JSON file of five rectangles with rational corners.
        #[arg(long)]
        geometry: Option<String>,
        /// Comma-separated grid resolutions for the separation check.
        #[arg(long, default_value = "14,28")]
        res: String,
    },
    /// Build and verify a chicane from maps into P.
    Chicane {
        #[arg(long, default_value_t = 14)]
        res: u32,
        /// JSON object {"c": [...], "d": [...], "f": [...], "g": [...]}
        /// of cell lists; defaults to the edge bands of the P-grid.
        #[arg(long)]
        foursome: Option<String>,
        #[arg(long)]
        geometry: Option<String>,
    },
    /// Intersection of crooked preimages on a 2k-dimensional grid.
    Bing {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 14)]
        res: u32,
        /// Optional JSON list of cell-function files, one per step.
        #[arg(long)]
        fs: Option<String>,
        #[arg(long)]
        geometry: Option<String>,
    },
    /// Iterated Bing partition between two closed cell sets.
    BingPartition {
        #[arg(long, default_value_t = 14)]
        res: u32,
        #[arg(long)]
        steps: usize,
        /// Cell set files; default left/right faces.
        #[arg(long)]
        f0: Option<String>,
        #[arg(long)]
        f1: Option<String>,
        #[arg(long)]
        geometry: Option<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    let budget = Budget {
        search_nodes: cli.budget,
        lattice_cap: cli.cap,
        grid_cell_cap: cli.grid_cap,
        model_size_cap: cli.cap.min(9),
    };
    let result = commands::dispatch(&cli.command, &budget, cli.seed);
    match result {
        Ok(mut report) => {
            report.seed = cli.seed;
            report.finalize(start.elapsed().as_millis());
            let text = match cli.format.as_str() {
                "text" => report.to_text(),
                _ => report.to_json(),
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("cannot write {path}: {e}");
                        std::process::exit(2);
                    }
                }
                None => println!("{text}"),
            }
            std::process::exit(report.exit_code);
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(2);
        }
    }
}
