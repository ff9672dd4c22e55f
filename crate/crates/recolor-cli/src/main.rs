//! Command-line front end for the recolouring library.
//!
//! Exit codes: 0 success; 1 domain rejection (a documented precondition
//! failed); 2 malformed input; 3 state-space budget exceeded.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use recolor_core::graph::{check_list_surplus, gen_shatter_instance};
use recolor_core::io::{
    from_json, to_json, ColouringDoc, CoverDoc, InstanceDoc, PlanDoc, SummaryDoc,
};
use recolor_core::kernel::verify_plan;
use recolor_core::oracle::{
    explore, frozen_census, reconf_distance, DEFAULT_BUDGET,
};
use recolor_core::planner::{
    plan_key_lemma, plan_main, plan_small_case, winding_number, PlanOutcome,
};
use recolor_core::{Colour, Colouring, Error, Graph, ListAssignment};

#[derive(Parser)]
#[command(name = "recolor", version, about = "List-colouring reconfiguration toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance file: {"schema":"instance/1","n":..,"edges":[[u,v],..],"lists":{..}?}
    #[arg(long)]
    instance: PathBuf,
    /// List synthesis policy when the instance file has no lists:
    /// deg1-shared | uniform:K | deg1-extra:V
    #[arg(long, default_value = "deg1-shared")]
    lists: String,
    /// Reject uniform:K when K < max degree + 1.
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Plan a recolouring sequence between two colourings.
    Plan {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Verify a plan file (or standard input) from a start colouring.
    Verify {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        from: PathBuf,
        /// Plan file; read from standard input when omitted.
        #[arg(long)]
        plan: Option<PathBuf>,
        /// Expected end colouring (optional).
        #[arg(long)]
        to: Option<PathBuf>,
    },
    /// Enumerate the whole reconfiguration graph and report its components.
    Explore {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Exact recolouring distance between two colourings.
    Distance {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Count frozen colourings and check the frozen-ratio bound.
    Frozen {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Census of full correspondence covers of a clique up to isomorphism.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Include class representatives in the report.
        #[arg(long)]
        reps: bool,
    },
    /// Generate built-in instances and covers.
    Generate {
        #[command(subcommand)]
        what: GenerateCommand,
    },
    /// Winding number of a proper 3-colouring of a cycle.
    Winding {
        /// Colouring file; vertices 0..n-1 in cycle order.
        #[arg(long)]
        colouring: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenerateCommand {
    /// Clique with pendant leaves whose state space shatters into n!
    /// components of size p.
    Shatter {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
    },
    /// Twisted-clique correspondence cover of K_n.
    TwistedClique {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
    },
    /// The Möbius–Kantor correspondence cover of K4.
    MobiusKantor,
    /// Fully straight cover of K_n with the given fold.
    Straight {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        fold: usize,
    },
}

/// Domain failure (exit 1), malformed input (exit 2), budget (exit 3).
enum CliError {
    Domain(String),
    Input(String),
    Budget(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_text(path: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn read_doc<T: for<'de> serde::Deserialize<'de>>(path: &PathBuf) -> CliResult<T> {
    from_json(&read_text(path)?).map_err(|e| CliError::Input(e.to_string()))
}

/// Builds a list assignment per the policy string.
fn synthesize_lists(g: &Graph, policy: &str, strict: bool) -> CliResult<ListAssignment> {
    let lists: Vec<Vec<Colour>> = if policy == "deg1-shared" {
        (0..g.n())
            .map(|v| (1..=g.degree(v) as Colour + 1).collect())
            .collect()
    } else if let Some(k) = policy.strip_prefix("uniform:") {
        let k: Colour = k
            .parse()
            .map_err(|_| CliError::Input(format!("bad uniform policy {policy:?}")))?;
        if strict && (k as usize) < g.max_degree() + 1 {
            return Err(CliError::Domain(format!(
                "uniform:{k} is below max degree + 1 = {}",
                g.max_degree() + 1
            )));
        }
        vec![(1..=k).collect(); g.n()]
    } else if let Some(v) = policy.strip_prefix("deg1-extra:") {
        let v: usize = v
            .parse()
            .map_err(|_| CliError::Input(format!("bad deg1-extra policy {policy:?}")))?;
        if v >= g.n() {
            return Err(CliError::Domain(format!("vertex {v} out of range")));
        }
        // One fresh colour, disjoint from every degree list, granting the
        // designated vertex surplus 2.
        let extra = g.max_degree() as Colour + 2;
        (0..g.n())
            .map(|u| {
                let mut l: Vec<Colour> = (1..=g.degree(u) as Colour + 1).collect();
                if u == v {
                    l.push(extra);
                }
                l
            })
            .collect()
    } else {
        return Err(CliError::Input(format!("unknown list policy {policy:?}")));
    };
    ListAssignment::new(lists).map_err(CliError::from)
}

fn load_instance(args: &InstanceArgs) -> CliResult<(Graph, ListAssignment)> {
    let doc: InstanceDoc = read_doc(&args.instance)?;
    let g = doc.to_graph()?;
    let l = match doc.to_lists()? {
        Some(l) => l,
        None => synthesize_lists(&g, &args.lists, args.strict)?,
    };
    Ok((g, l))
}

fn load_colouring(path: &PathBuf, n: usize) -> CliResult<Colouring> {
    let doc: ColouringDoc = read_doc(path)?;
    Ok(doc.to_colouring(n)?)
}

/// Planner routing: spare list room takes the direct procedure, branching
/// graphs the block-induction planner, and paths/cycles the small cases.
fn route_plan(
    g: &Graph,
    l: &ListAssignment,
    a: &Colouring,
    b: &Colouring,
) -> recolor_core::Result<PlanOutcome> {
    if !check_list_surplus(g, l).surplus_ge2.is_empty() {
        plan_key_lemma(g, l, a, b)
    } else if g.max_degree() >= 3 {
        plan_main(g, l, a, b)
    } else {
        plan_small_case(g, l, a, b)
    }
}

fn emit(text: String, output: Option<&PathBuf>) -> CliResult<()> {
    match output {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Plan {
            instance,
            from,
            to,
            output,
        } => {
            let (g, l) = load_instance(&instance)?;
            let a = load_colouring(&from, g.n())?;
            let b = load_colouring(&to, g.n())?;
            let out = route_plan(&g, &l, &a, &b)?;
            emit(to_json(&PlanDoc::new(&out.plan, &out.lemma_trace)), output.as_ref())
        }
        Command::Verify {
            instance,
            from,
            plan,
            to,
        } => {
            let (g, l) = load_instance(&instance)?;
            let a = load_colouring(&from, g.n())?;
            let text = match plan {
                Some(p) => read_text(&p)?,
                None => {
                    let mut buf = String::new();
                    std::io::stdin()
                        .read_to_string(&mut buf)
                        .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
                    buf
                }
            };
            let doc: PlanDoc = from_json(&text).map_err(|e| CliError::Input(e.to_string()))?;
            let p = doc.to_plan()?;
            let outcome = verify_plan(&g, &l, &a, &p);
            if !outcome.ok {
                return Err(CliError::Domain(format!(
                    "plan invalid at step {}",
                    outcome.failing_index.unwrap()
                )));
            }
            if let Some(to) = to {
                let b = load_colouring(&to, g.n())?;
                if outcome.end != b {
                    return Err(CliError::Domain(
                        "plan does not end at the requested colouring".into(),
                    ));
                }
            }
            emit(to_json(&ColouringDoc::new(&outcome.end)), None)
        }
        Command::Explore { instance, budget } => {
            let (g, l) = load_instance(&instance)?;
            let s = explore(&g, &l, budget)?;
            emit(to_json(&SummaryDoc::new(&s)), None)
        }
        Command::Distance {
            instance,
            from,
            to,
            budget,
        } => {
            let (g, l) = load_instance(&instance)?;
            let a = load_colouring(&from, g.n())?;
            let b = load_colouring(&to, g.n())?;
            let d = reconf_distance(&g, &l, &a, &b, budget)?;
            emit(
                to_json(&serde_json::json!({"schema": "distance/1", "distance": d})),
                None,
            )
        }
        Command::Frozen { instance, budget } => {
            let (g, l) = load_instance(&instance)?;
            let c = frozen_census(&g, &l, budget)?;
            let mut v = serde_json::to_value(&c)
                .map_err(|e| CliError::Input(e.to_string()))?;
            v["schema"] = serde_json::json!("frozen/1");
            emit(to_json(&v), None)
        }
        Command::Census { n, budget, reps } => {
            let census = recolor_core::correspondence::census_covers(n, budget)?;
            let mut report = serde_json::json!({
                "schema": "census/1",
                "n": census.n,
                "fold": census.fold,
                "classes": census.total_isomorphism_classes,
                "bad": census.bad_classes,
                "universe": "full covers (perfect matching per edge) only",
            });
            if reps {
                let mut arr = Vec::new();
                for cl in &census.class_reps {
                    let cd = CoverDoc::new(&cl.representative)?;
                    arr.push(serde_json::json!({
                        "cover": cd,
                        "bad": cl.bad,
                        "summary": SummaryDoc::new(&cl.summary),
                    }));
                }
                report["class_reps"] = serde_json::json!(arr);
            }
            emit(to_json(&report), None)
        }
        Command::Generate { what } => match what {
            GenerateCommand::Shatter { n, p } => {
                let (g, l) = gen_shatter_instance(n, p)?;
                emit(to_json(&InstanceDoc::new(&g, Some(&l))), None)
            }
            GenerateCommand::TwistedClique { n, q } => {
                let c = recolor_core::correspondence::make_twisted_clique_cover(n, q)?;
                emit(to_json(&CoverDoc::new(&c)?), None)
            }
            GenerateCommand::MobiusKantor => {
                let c = recolor_core::correspondence::make_mobius_kantor_cover();
                emit(to_json(&CoverDoc::new(&c)?), None)
            }
            GenerateCommand::Straight { n, fold } => {
                let mut edges = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        edges.push((i, j));
                    }
                }
                let g = recolor_core::graph::build_graph(n, &edges)?;
                let c = recolor_core::correspondence::make_straight_cover(&g, fold);
                emit(to_json(&CoverDoc::new(&c)?), None)
            }
        },
        Command::Winding { colouring } => {
            let doc: ColouringDoc = read_doc(&colouring)?;
            let n = doc.colours.len();
            let c = doc.to_colouring(n)?;
            let f = winding_number(&c)?;
            emit(
                to_json(&serde_json::json!({"schema": "winding/1", "winding": f})),
                None,
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("{}", to_json(&serde_json::json!({"error": "domain", "reason": msg})).trim_end());
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("{}", to_json(&serde_json::json!({"error": "input", "reason": msg})).trim_end());
            ExitCode::from(2)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("{}", to_json(&serde_json::json!({"error": "budget", "reason": msg})).trim_end());
            ExitCode::from(3)
        }
    }
}
