use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use labelkit::constructions::{self, ConstructionError};
use labelkit::experiment::{run_gnp_experiment, ExperimentConfig};
use labelkit::graph::{bipartition, edge_coloring, greedy_coloring, Graph};
use labelkit::reductions::{self as red, GadgetSpec, ReductionError, ReductionOutput};
use labelkit::semantics::{induced_coloring, verify_proper, Labeling, LabelingRule, Verdict};
use labelkit::solvers::{
    brute_force_decide_with_budget, degree_label_from_2, edge_gap_planar_bipartite, tsv_find, vertex_gap_algorithm1,
    SolveError, SolveOutcome, DEFAULT_BUDGET,
};
use labelkit::{Formula, Mode};

#[derive(Parser)]
#[command(name = "labelkit", version, about = "Proper graph labelings: verify, solve, construct, reduce")]
struct Cli {
    /// Print human-readable summaries to stderr.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a labeling induces a proper colouring.
    Verify {
        graph: PathBuf,
        labeling: PathBuf,
        #[arg(long)]
        rule: LabelingRule,
    },
    /// Decide whether a graph has a proper labeling from {1..k}.
    Solve {
        graph: PathBuf,
        #[arg(long)]
        rule: LabelingRule,
        #[arg(long = "labels")]
        k: u64,
        #[arg(long, value_enum, default_value_t = SolveMethod::Auto)]
        method: SolveMethod,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Build a labeling with one of the closed-form constructions.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        /// Input graph (every family except kn-gap).
        graph: Option<PathBuf>,
        /// Order of the complete graph for kn-gap.
        #[arg(long)]
        n: Option<usize>,
        /// 1-based root for tree-gap.
        #[arg(long, default_value_t = 1)]
        root: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Write the labeling here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// For kn-gap, also write K_n here.
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Generate a reduction instance.
    Reduce {
        #[arg(long, value_enum)]
        reduction: Reduction,
        /// DIMACS CNF for formula reductions, graph file otherwise.
        input: PathBuf,
        /// Gadget files: the relay for nae3sat-edge-sum; the variable then
        /// the clause gadget for 1in3-edge-product.
        #[arg(long)]
        gadget: Vec<PathBuf>,
        #[arg(long)]
        k: Option<u64>,
        /// Graph output path; the sidecar goes next to it as `<out>.map.json`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// For class1-vertex-max, write the labeling built from a 3-edge-colouring.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Check a gadget file's declared properties by enumeration.
    Gadget {
        file: PathBuf,
        #[arg(long)]
        rule: LabelingRule,
        #[arg(long = "labels", default_value_t = 2)]
        k: u64,
    },
    /// Search for triangular-structured vertices.
    Tsv { graph: PathBuf },
    /// Run the G(n, p) prime-labeling experiment.
    Experiment {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveMethod {
    Auto,
    Brute,
    Fast,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    TreeGap,
    KnGap,
    BipGap,
    Pow2EdgeGap,
    PrimeProduct,
    BipMax,
    RegBipGap,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Reduction {
    #[value(name = "nae3sat-edge-sum")]
    Nae3satEdgeSum,
    #[value(name = "1in3-edge-product")]
    OneInThreeEdgeProduct,
    #[value(name = "1in3-vertex-product")]
    OneInThreeVertexProduct,
    #[value(name = "3col-vertex-product")]
    ThreeColVertexProduct,
    #[value(name = "3sat2-edge-gap")]
    ThreeSatEdgeGap,
    #[value(name = "nae3sat-vertex-gap")]
    Nae3satVertexGap,
    #[value(name = "kcol-edge-gap")]
    KcolEdgeGap,
    #[value(name = "3col-degree")]
    ThreeColDegree,
    #[value(name = "class1-vertex-max")]
    Class1VertexMax,
    #[value(name = "lift-max")]
    LiftMax,
}

const YES: u8 = 0;
const NO: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: USAGE,
        message: message.to_string(),
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = if matches!(e, SolveError::Budget(_)) { BUDGET } else { USAGE };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        let code = if matches!(e, ConstructionError::Budget(_)) { BUDGET } else { USAGE };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        let budget = matches!(e, ReductionError::Gadget(red::GadgetError::Budget(_)));
        Failure {
            code: if budget { BUDGET } else { USAGE },
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::parse(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_formula(path: &Path, mode: Mode) -> Result<Formula, Failure> {
    Formula::parse_dimacs(&read(path)?, mode).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn print(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let verbose = cli.verbose;
    match cli.command {
        Command::Verify { graph, labeling, rule } => {
            let g = load_graph(&graph)?;
            let f = Labeling::from_json(&read(&labeling)?, &g).map_err(usage)?;
            let verdict = verify_proper(&g, rule, &f).map_err(usage)?;
            let colors = induced_coloring(&g, rule, &f).map_err(usage)?.colors;
            match verdict {
                Verdict::Proper => {
                    print(&json!({"proper": true, "colors": colors}));
                    Ok(YES)
                }
                Verdict::Violation { edge: (u, v), color } => {
                    print(&json!({
                        "proper": false,
                        "violation": {"u": u + 1, "v": v + 1, "color": color},
                        "colors": colors,
                    }));
                    Ok(NO)
                }
            }
        }
        Command::Solve {
            graph,
            rule,
            k,
            method,
            budget,
        } => {
            let g = load_graph(&graph)?;
            let outcome = solve(&g, rule, k, method, budget)?;
            let mut out = json!({
                "answer": if outcome.is_yes() { "yes" } else { "no" },
                "method": outcome.method().name(),
            });
            if let Some(w) = outcome.witness() {
                out["labeling"] = w.to_json(&g);
            }
            print(&out);
            Ok(if outcome.is_yes() { YES } else { NO })
        }
        Command::Construct {
            family,
            graph,
            n,
            root,
            budget,
            out,
            graph_out,
        } => {
            let (g, f) = construct(family, graph.as_deref(), n, root, budget)?;
            let text = serde_json::to_string_pretty(&f.to_json(&g)).expect("json");
            if let Some(path) = graph_out {
                write(&path, &g.to_dimacs())?;
            }
            match out {
                Some(path) => write(&path, &text)?,
                None => println!("{text}"),
            }
            Ok(YES)
        }
        Command::Reduce {
            reduction,
            input,
            gadget,
            k,
            out,
            certificate,
        } => {
            let result = reduce(reduction, &input, &gadget, k)?;
            let mut summary = json!({
                "vertices": result.graph.vertex_count(),
                "edges": result.graph.edge_count(),
            });
            if let Some(path) = certificate {
                if reduction != Reduction::Class1VertexMax {
                    return Err(usage("--certificate is only available for class1-vertex-max"));
                }
                let g = load_graph(&input)?;
                let colors = edge_coloring(&g, 3).ok_or_else(|| usage("graph has no proper 3-edge-colouring"))?;
                let f = red::class1_certificate(&g, &colors)?;
                if !verify_proper(&result.graph, LabelingRule::VertexMaximum, &f).map_err(usage)?.is_proper() {
                    return Err(usage("internal error: certificate is not proper"));
                }
                write(&path, &serde_json::to_string_pretty(&f.to_json(&result.graph)).expect("json"))?;
                summary["certificate"] = json!(path);
            }
            match out {
                Some(path) => {
                    let sidecar = PathBuf::from(format!("{}.map.json", path.display()));
                    write(&path, &result.graph.to_dimacs())?;
                    write(&sidecar, &serde_json::to_string_pretty(&result.sidecar()).expect("json"))?;
                    summary["graph"] = json!(path);
                    summary["sidecar"] = json!(sidecar);
                }
                None => {
                    summary["dimacs"] = json!(result.graph.to_dimacs());
                    summary["sidecar"] = result.sidecar();
                }
            }
            if verbose {
                eprintln!(
                    "{}: {} vertices, {} edges",
                    result.meta["reduction"], result.graph.vertex_count(), result.graph.edge_count()
                );
            }
            print(&summary);
            Ok(YES)
        }
        Command::Gadget { file, rule, k } => {
            let spec = GadgetSpec::from_json(&read(&file)?).map_err(usage)?;
            let check = red::check_gadget(&spec, rule, k).map_err(ReductionError::from)?;
            print(&serde_json::to_value(&check).expect("json"));
            Ok(if check.passed() { YES } else { NO })
        }
        Command::Tsv { graph } => {
            let g = load_graph(&graph)?;
            let r = tsv_find(&g);
            let set: Vec<usize> = r.set.iter().map(|v| v + 1).collect();
            print(&json!({"found": r.found, "set": set}));
            Ok(YES)
        }
        Command::Experiment { n, p, trials, seed } => {
            let report = run_gnp_experiment(ExperimentConfig { n, p, trials, seed }).map_err(usage)?;
            if verbose {
                eprint!("{}", report.table());
            }
            print(&serde_json::to_value(&report).expect("json"));
            Ok(YES)
        }
    }
}

/// The fast decider for `(rule, k)` on `g`, if one applies.
fn fast_path(g: &Graph, rule: LabelingRule, k: u64) -> Option<Result<SolveOutcome, SolveError>> {
    if k != 2 {
        return None;
    }
    match rule {
        LabelingRule::VertexDegree => Some(degree_label_from_2(g)),
        LabelingRule::VertexGap if bipartition(g).is_ok() => Some(vertex_gap_algorithm1(g)),
        LabelingRule::EdgeGap
            if g.vertex_count() > 0 && g.is_connected() && g.min_degree() >= 2 && bipartition(g).is_ok() =>
        {
            Some(edge_gap_planar_bipartite(g))
        }
        _ => None,
    }
}

fn solve(g: &Graph, rule: LabelingRule, k: u64, method: SolveMethod, budget: u64) -> Result<SolveOutcome, Failure> {
    if k == 0 {
        return Err(usage("--labels must be at least 1"));
    }
    let fast = match method {
        SolveMethod::Brute => None,
        _ => fast_path(g, rule, k),
    };
    match (method, fast) {
        (_, Some(r)) => Ok(r?),
        (SolveMethod::Fast, None) => Err(usage(format!("no fast algorithm for {rule} with k={k} on this graph"))),
        _ => Ok(brute_force_decide_with_budget(g, rule, k, budget)?),
    }
}

fn construct(
    family: Family,
    graph: Option<&Path>,
    n: Option<usize>,
    root: usize,
    budget: u64,
) -> Result<(Graph, Labeling), Failure> {
    if family == Family::KnGap {
        let n = n.ok_or_else(|| usage("kn-gap needs --n"))?;
        return Ok((Graph::complete(n), constructions::complete_gap_labeling(n)?));
    }
    let g = load_graph(graph.ok_or_else(|| usage("this family needs an input graph"))?)?;
    let not_bipartite = |_| ConstructionError::NotBipartite;
    let f = match family {
        Family::TreeGap => {
            let r = root.checked_sub(1).ok_or(ConstructionError::BadRoot(root))?;
            constructions::tree_gap_labeling(&g, r)?
        }
        Family::BipGap => constructions::bipartite_vertex_gap(&g, &bipartition(&g).map_err(not_bipartite)?)?,
        Family::Pow2EdgeGap => constructions::powers_of_two_edge_gap(&g)?,
        Family::PrimeProduct => constructions::prime_product_labeling(&g, &greedy_coloring(&g))?,
        Family::BipMax => constructions::bipartite_vertex_maximum(&g, &bipartition(&g).map_err(not_bipartite)?)?,
        Family::RegBipGap => constructions::regular_bipartite_vertex_gap(&g, budget)?,
        Family::KnGap => unreachable!(),
    };
    Ok((g, f))
}

fn reduce(reduction: Reduction, input: &Path, gadgets: &[PathBuf], k: Option<u64>) -> Result<ReductionOutput, Failure> {
    let load_gadgets = || -> Result<Vec<GadgetSpec>, Failure> {
        gadgets
            .iter()
            .map(|p| GadgetSpec::from_json(&read(p)?).map_err(|e| usage(format!("{}: {e}", p.display()))))
            .collect()
    };
    use Reduction::*;
    let out = match reduction {
        Nae3satEdgeSum => {
            let phi = load_formula(input, Mode::Nae)?;
            let relay = match load_gadgets()?.as_slice() {
                [] => red::default_sum_relay(),
                [g] => g.clone(),
                _ => return Err(usage("nae3sat-edge-sum takes one --gadget")),
            };
            red::reduce_nae3sat_to_edge_sum(&phi, &relay)?
        }
        OneInThreeEdgeProduct => {
            let phi = load_formula(input, Mode::OneInThree)?;
            let (h, i) = match load_gadgets()?.as_slice() {
                [] => (red::default_variable_gadget(), red::default_clause_gadget()),
                [h, i] => (h.clone(), i.clone()),
                _ => return Err(usage("1in3-edge-product takes two --gadget files: variable, then clause")),
            };
            red::reduce_1in3_to_edge_product(&phi, &h, &i)?
        }
        OneInThreeVertexProduct => red::reduce_1in3_to_vertex_product(&load_formula(input, Mode::OneInThree)?)?,
        ThreeColVertexProduct => red::reduce_3col_to_vertex_product_k(&load_graph(input)?, k.unwrap_or(3))?,
        ThreeSatEdgeGap => red::reduce_3sat2_to_edge_gap2(&load_formula(input, Mode::Sat)?)?,
        Nae3satVertexGap => red::reduce_nae3sat_to_vertex_gap2(&load_formula(input, Mode::Nae)?)?,
        KcolEdgeGap => red::reduce_kcol_to_edge_gap_k(&load_graph(input)?, k.unwrap_or(3))?,
        ThreeColDegree => red::reduce_3col_to_degree_label_k(&load_graph(input)?, k.unwrap_or(4))?,
        Class1VertexMax => red::reduce_class1_to_vertex_max3(&load_graph(input)?)?,
        LiftMax => {
            let g = load_graph(input)?;
            let n = g.vertex_count();
            ReductionOutput {
                graph: red::lift_max_labeling(&g),
                var_map: (0..n).map(|v| vec![v]).collect(),
                clause_map: Vec::new(),
                meta: json!({"reduction": "lift-max", "apex": n + 1, "pendant": n + 2}),
            }
        }
    };
    Ok(out)
}
