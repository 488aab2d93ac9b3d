use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use grounded_cliques::cliques::{
    max_clique, max_clique_one_sided, max_clique_square, max_clique_two_sided, Clique,
};
use grounded_cliques::gen::{generate, GenConfig};
use grounded_cliques::geometry::ClassTag;
use grounded_cliques::graph::max_clique_rep_bruteforce;
use grounded_cliques::io::{emit_shapes, parse_graph, parse_shapes};
use grounded_cliques::reductions::{build_ymonotone_rep, verify_reduction, CubicGraph};

#[derive(Parser)]
#[command(name = "grounded-cliques", about = "Maximum cliques of grounded L-shapes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Auto,
    TwoSided,
    Square,
    OneSided,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    TwoSided,
    Square,
    OneSided,
}

impl From<Class> for ClassTag {
    fn from(c: Class) -> ClassTag {
        match c {
            Class::TwoSided => ClassTag::TwoSidedL,
            Class::Square => ClassTag::SquareL,
            Class::OneSided => ClassTag::OneSidedL,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute a maximum clique of a shape file's intersection graph
    Clique {
        #[arg(long, value_enum, default_value = "auto")]
        algo: Algo,
        shapes: PathBuf,
    },
    /// Generate a random instance of one of the L-shape classes
    Gen {
        #[arg(long, value_enum)]
        class: Class,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the hardness-reduction representation for a cubic graph
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
    },
    /// Median wall times of the class algorithm over generated instances
    Bench {
        #[arg(long, value_enum)]
        class: Class,
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        trials: usize,
    },
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn read(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Clique { algo, shapes } => {
            let text = match read(&shapes) {
                Ok(t) => t,
                Err(e) => return fail(1, e),
            };
            let rep = match parse_shapes(&text) {
                Ok(r) => r,
                Err(e) => return fail(1, e),
            };
            let result = match algo {
                Algo::Auto => max_clique(&rep),
                Algo::TwoSided => max_clique_two_sided(&rep),
                Algo::Square => max_clique_square(&rep),
                Algo::OneSided => max_clique_one_sided(&rep),
                Algo::Brute => Ok(Clique {
                    members: max_clique_rep_bruteforce(&rep),
                }),
            };
            match result {
                Ok(clique) => {
                    println!("size={}", clique.size());
                    for id in &clique.members {
                        println!("{id}");
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail(1, e),
            }
        }
        Command::Gen {
            class,
            n,
            seed,
            output,
        } => {
            let rep = generate(&GenConfig::new(class.into(), n, seed));
            match write_out(&output, &emit_shapes(&rep)) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(1, e),
            }
        }
        Command::Reduce {
            graph,
            output,
            verify,
        } => {
            let text = match read(&graph) {
                Ok(t) => t,
                Err(e) => return fail(1, e),
            };
            let g = match parse_graph(&text) {
                Ok(g) => g,
                Err(e) => return fail(1, e),
            };
            let h = match CubicGraph::new(g) {
                Ok(h) => h,
                Err(e) => return fail(1, e),
            };
            let art = build_ymonotone_rep(&h);
            if verify {
                if let Err(report) = verify_reduction(&art) {
                    for m in &report {
                        eprintln!(
                            "mismatch: shapes {} and {} should {}",
                            m.u,
                            m.v,
                            if m.expected_adjacent {
                                "intersect"
                            } else {
                                "be disjoint"
                            }
                        );
                    }
                    return fail(2, format!("{} mismatched pairs", report.len()));
                }
            }
            match write_out(&output, &emit_shapes(&art.rep)) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(1, e),
            }
        }
        Command::Bench {
            class,
            sizes,
            trials,
        } => {
            let trials = trials.max(1);
            println!("class,n,median_ms");
            let name = match class {
                Class::TwoSided => "two-sided",
                Class::Square => "square",
                Class::OneSided => "one-sided",
            };
            for n in sizes {
                let run_trial = |seed: usize| -> f64 {
                    let rep = generate(&GenConfig::new(class.into(), n, seed as u64));
                    let start = Instant::now();
                    let r = match class {
                        Class::TwoSided => max_clique_two_sided(&rep),
                        Class::Square => max_clique_square(&rep),
                        Class::OneSided => max_clique_one_sided(&rep),
                    };
                    r.expect("generated instance must be solvable");
                    start.elapsed().as_secs_f64() * 1e3
                };
                #[cfg(feature = "parallel")]
                let mut times: Vec<f64> = {
                    use rayon::prelude::*;
                    (0..trials).into_par_iter().map(run_trial).collect()
                };
                #[cfg(not(feature = "parallel"))]
                let mut times: Vec<f64> = (0..trials).map(run_trial).collect();
                times.sort_by(|a, b| a.total_cmp(b));
                println!("{name},{n},{:.3}", times[times.len() / 2]);
            }
            ExitCode::SUCCESS
        }
    }
}
