//! Command line surface. Every command prints one JSON document on stdout
//! (value, witness, timing); logs and warnings go to stderr. Exit codes:
//! 0 success, 1 infeasible / absent, 2 input error, 3 size cap exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use thinkit::io;
use thinkit::problems::{self, RainbowRoute};
use thinkit::rep::{is_consistent, is_strongly_consistent, Mode, ThinRepresentation};
use thinkit::search::SearchLimits;
use thinkit::spec::combination_to_indices;
use thinkit::{dp, families, incompat, nonbetween, proper, search, widths, Graph};

#[derive(Parser)]
#[command(
    name = "thinkit",
    about = "Exact thinness and proper thinness toolkit",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum WhichWidth {
    Cutw,
    Lmimw,
    Isop,
}

#[derive(Subcommand)]
enum Command {
    /// Exact thinness of a graph with a witness representation
    Thinness { graph: PathBuf },
    /// Exact proper thinness of a graph with a witness representation
    Pthinness { graph: PathBuf },
    /// Check a representation document against a graph
    CheckRep {
        graph: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        /// check strong consistency regardless of the document's mode line
        #[arg(long)]
        strong: bool,
    },
    /// Minimum partition consistent with a fixed ordering
    MinPartition {
        graph: PathBuf,
        #[arg(long)]
        order: PathBuf,
        #[arg(long)]
        strong: bool,
    },
    /// Search for an ordering consistent with a fixed partition
    OrderForPartition {
        graph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        strong: bool,
    },
    /// Solve a problem document over a consistent representation
    Solve {
        graph: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        rep: PathBuf,
    },
    /// Solve a problem document with neighborhood bounds over a strongly
    /// consistent representation
    SolveProper {
        graph: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        rep: PathBuf,
    },
    /// Emit a named family as a graph document (stdout or --out)
    Generate {
        #[arg(long)]
        family: String,
        #[arg(long, num_args = 0.., value_delimiter = ' ')]
        params: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// where to write the companion representation, for families that
        /// ship one
        #[arg(long)]
        rep_out: Option<PathBuf>,
    },
    /// Brute-force width oracles
    Widths {
        graph: PathBuf,
        #[arg(long, value_enum)]
        which: WhichWidth,
    },
    /// Reduce a non-betweenness instance to a graph plus partition
    ReduceNb {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[arg(long)]
        partition_out: Option<PathBuf>,
    },
    /// Minimum t-rainbow domination via the product with a complete graph
    Rainbow {
        graph: PathBuf,
        #[arg(long)]
        t: usize,
        /// representation of the input graph; found by exact search when absent
        #[arg(long)]
        rep: Option<PathBuf>,
    },
}

enum CliError {
    /// exit 1: a well-posed question whose answer is "no" / "none"
    Infeasible(Value),
    /// exit 2
    Input(String),
    /// exit 3
    SizeCap(String),
}

impl From<io::ParseError> for CliError {
    fn from(e: io::ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<search::SearchError> for CliError {
    fn from(e: search::SearchError) -> Self {
        CliError::SizeCap(e.to_string())
    }
}

impl From<dp::SolveError> for CliError {
    fn from(e: dp::SolveError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<families::FamilyError> for CliError {
    fn from(e: families::FamilyError) -> Self {
        match e {
            families::FamilyError::SizeCap { .. } => CliError::SizeCap(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<problems::RainbowError> for CliError {
    fn from(e: problems::RainbowError) -> Self {
        match e {
            problems::RainbowError::Family(families::FamilyError::SizeCap { .. })
            | problems::RainbowError::Oracle(_) => CliError::SizeCap(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let text = read_file(path)?;
    let (doc, warnings) = io::parse_graph(&text)?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    Ok(doc.graph)
}

/// THINKIT_SIZE_CAP overrides both exact-search vertex caps.
fn limits() -> SearchLimits {
    let mut limits = SearchLimits::default();
    if let Ok(value) = std::env::var("THINKIT_SIZE_CAP") {
        match value.parse::<usize>() {
            Ok(cap) => {
                limits.exact_thinness_n = cap;
                limits.order_search_n = cap;
            }
            Err(_) => eprintln!("warning: ignoring non-numeric THINKIT_SIZE_CAP {value:?}"),
        }
    }
    limits
}

fn rep_json(rep: &ThinRepresentation) -> (Value, Value) {
    (
        json!(rep.ordering().sequence()),
        json!(rep.partition().assignment()),
    )
}

fn solution_json(solution: &dp::Solution) -> Value {
    json!({
        "objective": solution.objective,
        "sets": solution.sets,
        "trace": solution.trace.iter().map(|&c| combination_to_indices(c)).collect::<Vec<_>>(),
    })
}

fn run(command: Command) -> Result<Value, CliError> {
    match command {
        Command::Thinness { graph } => {
            let g = load_graph(&graph)?;
            let (k, rep) = search::thinness_exact_with_limit(&g, limits().exact_thinness_n)?;
            let (ordering, classes) = rep_json(&rep);
            Ok(json!({"thinness": k, "ordering": ordering, "classes": classes}))
        }
        Command::Pthinness { graph } => {
            let g = load_graph(&graph)?;
            let (k, rep) =
                search::proper_thinness_exact_with_limit(&g, limits().exact_thinness_n)?;
            let (ordering, classes) = rep_json(&rep);
            Ok(json!({"properThinness": k, "ordering": ordering, "classes": classes}))
        }
        Command::CheckRep { graph, rep, strong } => {
            let g = load_graph(&graph)?;
            let text = read_file(&rep)?;
            let parsed = io::parse_representation(&text, &g);
            let (consistent, mode) = match parsed {
                Ok(rep) => {
                    let mode = if strong { Mode::Strong } else { rep.mode() };
                    let ok = match mode {
                        Mode::Weak => is_consistent(&g, rep.ordering(), rep.partition()),
                        Mode::Strong => is_strongly_consistent(&g, rep.ordering(), rep.partition()),
                    }
                    .map_err(|e| CliError::Input(e.to_string()))?;
                    (ok, mode)
                }
                // a syntactically fine document that fails its own mode check
                Err(io::ParseError::Rep(
                    thinkit::RepError::NotConsistent | thinkit::RepError::NotStronglyConsistent,
                )) => (false, if strong { Mode::Strong } else { Mode::Weak }),
                Err(other) => return Err(other.into()),
            };
            let value = json!({
                "consistent": consistent,
                "mode": match mode { Mode::Weak => "weak", Mode::Strong => "strong" },
            });
            if consistent {
                Ok(value)
            } else {
                Err(CliError::Infeasible(value))
            }
        }
        Command::MinPartition {
            graph,
            order,
            strong,
        } => {
            let g = load_graph(&graph)?;
            let ord = io::parse_ordering(&read_file(&order)?, g.n())?;
            let part = incompat::min_consistent_partition(&g, &ord, strong)
                .map_err(|e| CliError::Input(e.to_string()))?;
            Ok(json!({
                "count": part.num_classes(),
                "classes": part.assignment(),
            }))
        }
        Command::OrderForPartition {
            graph,
            partition,
            strong,
        } => {
            let g = load_graph(&graph)?;
            let part = io::parse_partition(&read_file(&partition)?, g.n())?;
            let found = search::consistent_order_for_partition_with_limit(
                &g,
                &part,
                strong,
                limits().order_search_n,
            )?;
            match found {
                Some(ord) => Ok(json!({"ordering": ord.sequence()})),
                None => Err(CliError::Infeasible(json!({"ordering": null}))),
            }
        }
        Command::Solve { graph, spec, rep } => {
            let g = load_graph(&graph)?;
            let (problem, nb) = io::parse_spec(&read_file(&spec)?)?;
            if nb.is_some() {
                return Err(CliError::Input(
                    "document carries neighborhood bounds; use solve-proper".into(),
                ));
            }
            let rep = io::parse_representation(&read_file(&rep)?, &g)?;
            let outcome = dp::solve(&g, &rep, &problem)?;
            match outcome.solution {
                Some(solution) => {
                    let mut value = solution_json(&solution);
                    value["states"] = json!(outcome.states);
                    Ok(value)
                }
                None => Err(CliError::Infeasible(
                    json!({"feasible": false, "states": outcome.states}),
                )),
            }
        }
        Command::SolveProper { graph, spec, rep } => {
            let g = load_graph(&graph)?;
            let (problem, nb) = io::parse_spec(&read_file(&spec)?)?;
            let nb = nb.unwrap_or_else(|| proper::NeighborhoodBounds::none(problem.num_sets));
            let rep = io::parse_representation(&read_file(&rep)?, &g)?;
            let outcome = proper::solve_proper(&g, &rep, &problem, &nb)?;
            match outcome.solution {
                Some(solution) => {
                    let mut value = solution_json(&solution);
                    value["states"] = json!(outcome.states);
                    Ok(value)
                }
                None => Err(CliError::Infeasible(
                    json!({"feasible": false, "states": outcome.states}),
                )),
            }
        }
        Command::Generate {
            family,
            params,
            out,
            rep_out,
        } => {
            let arg = |i: usize| -> Result<usize, CliError> {
                params.get(i).copied().ok_or_else(|| {
                    CliError::Input(format!("family {family:?} needs parameter {}", i + 1))
                })
            };
            let (g, rep): (Graph, Option<ThinRepresentation>) = match family.as_str() {
                "complement-matching" => (families::gen_complement_matching(arg(0)?)?, None),
                "claw" => {
                    let (g, rep) = families::gen_claw_h(arg(0)?)?;
                    (g, Some(rep))
                }
                "gk" => {
                    let (g, rep) = families::gen_gk(arg(0)?)?;
                    (g, Some(rep))
                }
                "grid" => (families::gen_grid(arg(0)?)?, None),
                "mary-tree" => (families::gen_mary_tree(arg(0)?, arg(1)?)?, None),
                "path" => (
                    Graph::path(arg(0)?).map_err(|e| CliError::Input(e.to_string()))?,
                    None,
                ),
                "cycle" => (
                    Graph::cycle(arg(0)?).map_err(|e| CliError::Input(e.to_string()))?,
                    None,
                ),
                "complete" => (
                    Graph::complete(arg(0)?).map_err(|e| CliError::Input(e.to_string()))?,
                    None,
                ),
                other => {
                    return Err(CliError::Input(format!(
                        "unknown family {other:?} (families: complement-matching, claw, gk, grid, mary-tree, path, cycle, complete)"
                    )))
                }
            };
            let doc = io::write_graph(&g, None);
            if let Some(rep_path) = rep_out {
                match &rep {
                    Some(rep) => write_file(&rep_path, &io::write_representation(rep))?,
                    None => {
                        return Err(CliError::Input(format!(
                            "family {family:?} ships no representation"
                        )))
                    }
                }
            }
            match out {
                Some(path) => {
                    write_file(&path, &doc)?;
                    Ok(json!({
                        "family": family, "n": g.n(), "m": g.m(),
                        "writtenTo": path.display().to_string(),
                    }))
                }
                None => {
                    print!("{doc}");
                    Ok(Value::Null) // the document itself is the output
                }
            }
        }
        Command::Widths { graph, which } => {
            let g = load_graph(&graph)?;
            match which {
                WhichWidth::Cutw => Ok(json!({"cutwidth": widths::cutwidth_bruteforce(&g)?})),
                WhichWidth::Lmimw => Ok(json!({"lmimw": widths::lmimw_bruteforce(&g)?})),
                WhichWidth::Isop => Ok(json!({
                    "isoperimetricPeak": widths::isoperimetric_peak(&g)?
                })),
            }
        }
        Command::ReduceNb {
            instance,
            graph_out,
            partition_out,
        } => {
            let inst = io::parse_nb_instance(&read_file(&instance)?)?;
            let (g, part) = nonbetween::reduce_non_betweenness(&inst);
            if let Some(path) = graph_out {
                write_file(&path, &io::write_graph(&g, None))?;
            }
            if let Some(path) = partition_out {
                let line = part
                    .assignment()
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                write_file(&path, &format!("classes {line}\n"))?;
            }
            Ok(json!({
                "n": g.n(),
                "edges": g.edges(),
                "classes": part.assignment(),
            }))
        }
        Command::Rainbow { graph, t, rep } => {
            let g = load_graph(&graph)?;
            let rep = match rep {
                Some(path) => io::parse_representation(&read_file(&path)?, &g)?,
                None => {
                    search::proper_thinness_exact_with_limit(&g, limits().exact_thinness_n)?.1
                }
            };
            let out = problems::t_rainbow_domination(&g, &rep, t, 4096, 24)?;
            Ok(json!({
                "weight": out.weight,
                "assignment": out.assignment,
                "route": match out.route {
                    RainbowRoute::ProperDp => "proper-dp",
                    RainbowRoute::BruteForce => "bruteforce",
                },
            }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let elapsed_ms = |start: Instant| start.elapsed().as_millis() as u64;
    match run(cli.command) {
        Ok(Value::Null) => ExitCode::SUCCESS,
        Ok(mut value) => {
            value["elapsedMs"] = json!(elapsed_ms(started));
            println!("{value}");
            ExitCode::SUCCESS
        }
        Err(CliError::Infeasible(mut value)) => {
            value["elapsedMs"] = json!(elapsed_ms(started));
            println!("{value}");
            ExitCode::from(1)
        }
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::SizeCap(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}
