//! `qcg`: command-line front end.
//!
//! Exit status is 0 on success or a passing check, 1 when a check fails and
//! 2 on bad input.

use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use qcg::cocycle::{self, CocycleJson, CocycleSpec, TwistedCocycle};
use qcg::embedding::RotationSystem;
use qcg::fixtures;
use qcg::graph::{Graph, GraphJson};
use qcg::heisenberg::{self, HeisenbergElement, QConvention};
use qcg::nonplanar::builtin_nonplanar_specs;
use qcg::orbit::{OrbitCocycle, Representative};
use qcg::verlinde;
use qcg::weights::{self, WeightSet};

#[derive(Parser)]
#[command(
    name = "qcg",
    version,
    about = "Heisenberg actions on SU(2) conformal blocks of trivalent graphs"
)]
struct Cli {
    /// Worker threads for parallel checks (output does not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of admissible weights.
    Dim(LevelArgs),
    /// All admissible weights as a JSON array, values in doubled units.
    Enumerate {
        #[command(flatten)]
        at: LevelArgs,
        /// Doubled units `a = 2j`; the only supported convention.
        #[arg(long)]
        doubled: bool,
    },
    /// Closed-form Verlinde dimension with its raw float value.
    Verlinde {
        #[command(flatten)]
        at: LevelArgs,
        /// Use this genus instead of the graph's.
        #[arg(long)]
        genus: Option<usize>,
    },
    /// Cut-and-sum identity for one internal edge, or all of them.
    Factorize {
        #[command(flatten)]
        at: LevelArgs,
        #[arg(long)]
        edge: Option<String>,
    },
    /// Build, check and compare twisted cocycles
    #[command(subcommand)]
    Cocycle(CocycleCommand),
    /// Traces, matrices and identities of the Heisenberg action
    #[command(subcommand)]
    Heisenberg(HeisenbergCommand),
    /// Bundled example graphs
    #[command(subcommand)]
    Fixtures(FixturesCommand),
}

#[derive(Subcommand)]
enum CocycleCommand {
    /// Face construction from a planar rotation system, as cocycle JSON.
    BuildPlanar {
        #[command(flatten)]
        source: GraphArgs,
        /// Index of the traced face treated as unbounded.
        #[arg(long, default_value_t = 0)]
        outer: usize,
    },
    /// Twisted law and external edge condition.
    Check {
        #[command(flatten)]
        at: LevelArgs,
        #[command(flatten)]
        pick: CocycleArgs,
    },
    /// Whether the difference of two cocycles vanishes on all fixed points.
    DiffCoboundary {
        #[command(flatten)]
        at: LevelArgs,
        /// First cocycle (same choices as --cocycle).
        #[arg(long)]
        a: String,
        /// Second cocycle.
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum HeisenbergCommand {
    /// Traces of every `(1, μ, λ)` against the closed form.
    Character {
        #[command(flatten)]
        at: LevelArgs,
        #[command(flatten)]
        pick: CocycleArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Sparse representation matrix of one element.
    Matrix {
        #[command(flatten)]
        at: LevelArgs,
        #[command(flatten)]
        pick: CocycleArgs,
        /// Element as `c=i^t;mu=f1,f2;lambda=f1,f2` (`e<n>` names a basis class of mu).
        #[arg(long)]
        element: String,
    },
    /// Homomorphism and commutator identities, on all pairs or random ones.
    Homomorphism {
        #[command(flatten)]
        at: LevelArgs,
        #[command(flatten)]
        pick: CocycleArgs,
        /// Check this many random pairs instead of all of them.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Cocycle-level reduction of the Z/4 extension to a Z/2 one.
    VerifyQ {
        #[command(flatten)]
        source: GraphArgs,
        #[arg(long, value_enum, default_value_t = Convention::Normalized)]
        convention: Convention,
    },
}

#[derive(Subcommand)]
enum FixturesCommand {
    /// Bundled graphs.
    List,
    /// One fixture as graph JSON (with its rotation, if planar).
    Show {
        #[arg(long)]
        fixture: String,
    },
}

#[derive(Args, Clone)]
struct GraphArgs {
    /// Bundled fixture name (see `fixtures list`).
    #[arg(long, conflicts_with = "graph")]
    fixture: Option<String>,
    /// Graph JSON file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Rotation JSON file; defaults to the fixture's own.
    #[arg(long)]
    rotation: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct LevelArgs {
    #[command(flatten)]
    source: GraphArgs,
    #[arg(long)]
    level: u32,
    /// Doubled leg labels, comma separated, in leg order.
    #[arg(long, value_delimiter = ',')]
    labels: Vec<u32>,
}

#[derive(Args, Clone)]
struct CocycleArgs {
    /// planar, zero, orbit, stated, builtin, twisted or a cocycle JSON file.
    /// `builtin` is planar for planar fixtures and orbit otherwise;
    /// `twisted` is orbit plus a random coboundary drawn from --seed.
    #[arg(long, default_value = "builtin")]
    cocycle: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Naive,
    Normalized,
}

/// Bad input, reported with exit status 2.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<bool, InputError>;

struct Loaded {
    name: Option<String>,
    graph: Graph,
    rotation: Option<RotationSystem>,
}

fn load(args: &GraphArgs) -> Result<Loaded, InputError> {
    let (name, graph, rotation) = match (&args.fixture, &args.graph) {
        (Some(name), _) => {
            let fx = fixtures::fixture(name)
                .ok_or_else(|| InputError(format!("unknown fixture `{name}`")))?;
            (Some(fx.name), fx.graph, fx.rotation)
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            let json: GraphJson = serde_json::from_str(&text)
                .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            (None, Graph::from_json(&json)?, None)
        }
        (None, None) => return Err(InputError("give --fixture or --graph".into())),
    };
    let rotation = match &args.rotation {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            let tokens: HashMap<String, Vec<String>> = serde_json::from_str(&text)
                .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            Some(RotationSystem::from_tokens(&graph, &tokens)?)
        }
        None => rotation,
    };
    Ok(Loaded {
        name,
        graph,
        rotation,
    })
}

/// Writes one line to stdout; a closed pipe ends the process quietly.
macro_rules! emit {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout().lock(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

fn print_json<T: Serialize>(value: &T) -> Result<(), InputError> {
    emit!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

/// Resolves a cocycle choice against a loaded graph and weight table.
fn pick_cocycle(
    choice: &str,
    seed: u64,
    src: &Loaded,
    ws: &Arc<WeightSet>,
) -> Result<Box<dyn TwistedCocycle>, InputError> {
    let g = &src.graph;
    let planar = || -> Result<Box<dyn TwistedCocycle>, InputError> {
        let rot = src
            .rotation
            .as_ref()
            .ok_or_else(|| InputError("planar cocycle needs a rotation system".into()))?;
        Ok(Box::new(cocycle::build_planar(g, rot)?))
    };
    let orbit = || -> Result<OrbitCocycle, InputError> {
        Ok(OrbitCocycle::build(g, ws.clone(), Representative::Min)?)
    };
    Ok(match choice {
        "planar" => planar()?,
        "zero" => Box::new(CocycleSpec::zero(g)?),
        "orbit" => Box::new(orbit()?),
        "twisted" => Box::new(orbit()?.twisted(seed)),
        "builtin" if src.rotation.is_some() => planar()?,
        "builtin" => Box::new(orbit()?),
        "stated" => {
            let name = src.name.as_deref().unwrap_or("");
            let b = builtin_nonplanar_specs()
                .into_iter()
                .find(|b| b.name == name)
                .ok_or_else(|| {
                    InputError(
                        "stated formulas exist only for nonplanar-g4 and nonplanar-g5".into(),
                    )
                })?;
            Box::new(b.stated)
        }
        path => {
            let text = fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))?;
            let json: CocycleJson =
                serde_json::from_str(&text).map_err(|e| InputError(format!("{path}: {e}")))?;
            Box::new(CocycleSpec::from_json(g, &json)?)
        }
    })
}

fn weights_at(src: &Loaded, at: &LevelArgs) -> Result<Arc<WeightSet>, InputError> {
    Ok(Arc::new(WeightSet::enumerate(
        &src.graph, at.level, &at.labels,
    )?))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Dim(at) => {
            let src = load(&at.source)?;
            emit!("{}", weights::count(&src.graph, at.level, &at.labels)?);
            Ok(true)
        }
        Command::Enumerate { at, doubled: _ } => {
            let src = load(&at.source)?;
            let ws = WeightSet::enumerate(&src.graph, at.level, &at.labels)?;
            let rows: Vec<&[u8]> = ws.iter().collect();
            emit!("{}", serde_json::to_string(&rows)?);
            Ok(true)
        }
        Command::Verlinde { at, genus } => {
            let src = load(&at.source)?;
            let g = genus.unwrap_or_else(|| src.graph.genus());
            let v = verlinde::verlinde_dim(g, at.level, &at.labels)?;
            print_json(&json!({ "dim": v.dim, "raw_float": v.raw }))?;
            Ok(true)
        }
        Command::Factorize { at, edge } => {
            let src = load(&at.source)?;
            let g = &src.graph;
            let edges: Vec<usize> = match edge {
                Some(id) => vec![g
                    .edge_index(&id)
                    .ok_or_else(|| InputError(format!("unknown edge `{id}`")))?],
                None => (0..g.num_edges()).filter(|&e| !g.is_leg(e)).collect(),
            };
            let mut all = true;
            for e in edges {
                let r = verlinde::check_factorization(g, e, at.level, &at.labels)?;
                all &= r.holds;
                emit!(
                    "{} {} lhs={} rhs={} {}",
                    r.edge,
                    if r.separating {
                        "separating"
                    } else {
                        "non-separating"
                    },
                    r.lhs,
                    r.rhs,
                    if r.holds { "PASS" } else { "FAIL" }
                );
            }
            Ok(all)
        }
        Command::Cocycle(c) => run_cocycle(c),
        Command::Heisenberg(h) => run_heisenberg(h),
        Command::Fixtures(FixturesCommand::List) => {
            let list: Vec<_> = fixtures::NAMES
                .iter()
                .map(|&name| match fixtures::fixture(name) {
                    Some(fx) => json!({
                        "name": name,
                        "genus": fx.graph.genus(),
                        "vertices": fx.graph.num_vertices(),
                        "edges": fx.graph.num_edges(),
                        "planar_rotation": fx.rotation.is_some(),
                        "note": fx.note,
                    }),
                    None => json!({
                        "name": name,
                        "genus": "g",
                        "planar_rotation": true,
                        "note": "planar ladder family, any g >= 2",
                    }),
                })
                .collect();
            print_json(&list)?;
            Ok(true)
        }
        Command::Fixtures(FixturesCommand::Show { fixture }) => {
            let fx = fixtures::fixture(&fixture)
                .ok_or_else(|| InputError(format!("unknown fixture `{fixture}`")))?;
            let rotation: Option<HashMap<String, Vec<String>>> = fx
                .rotation
                .as_ref()
                .map(|r| r.to_tokens(&fx.graph).into_iter().collect());
            print_json(&json!({ "graph": fx.graph.to_json(), "rotation": rotation }))?;
            Ok(true)
        }
    }
}

fn run_cocycle(c: CocycleCommand) -> Outcome {
    match c {
        CocycleCommand::BuildPlanar { source, outer } => {
            let src = load(&source)?;
            let rot = src
                .rotation
                .as_ref()
                .ok_or_else(|| InputError("build-planar needs a rotation system".into()))?;
            let spec = cocycle::build_planar_with_outer(&src.graph, rot, outer)?;
            print_json(&spec.to_json(&src.graph))?;
            Ok(true)
        }
        CocycleCommand::Check { at, pick } => {
            let src = load(&at.source)?;
            let ws = weights_at(&src, &at)?;
            let delta = pick_cocycle(&pick.cocycle, pick.seed, &src, &ws)?;
            let law = cocycle::check_cocycle(&src.graph, delta.as_ref(), &ws)?;
            let ex = cocycle::check_external_edge_condition(&src.graph, delta.as_ref(), &ws)?;
            let ok = law.ok && ex.ok;
            print_json(&json!({
                "level": at.level,
                "weights": ws.len(),
                "cocycle": law,
                "external_edge_condition": ex,
            }))?;
            Ok(ok)
        }
        CocycleCommand::DiffCoboundary { at, a, b, seed } => {
            let src = load(&at.source)?;
            let ws = weights_at(&src, &at)?;
            let da = pick_cocycle(&a, seed, &src, &ws)?;
            let db = pick_cocycle(&b, seed, &src, &ws)?;
            let diff = cocycle::Difference {
                a: da.as_ref(),
                b: db.as_ref(),
            };
            let report = cocycle::is_coboundary(&src.graph, &diff, &ws)?;
            let ok = report.ok;
            print_json(&report)?;
            Ok(ok)
        }
    }
}

fn run_heisenberg(h: HeisenbergCommand) -> Outcome {
    match h {
        HeisenbergCommand::Character { at, pick, format } => {
            let src = load(&at.source)?;
            let ws = weights_at(&src, &at)?;
            let delta = pick_cocycle(&pick.cocycle, pick.seed, &src, &ws)?;
            let rows = heisenberg::character_table(&src.graph, delta.as_ref(), &ws)?;
            match format {
                Format::Json => print_json(&rows)?,
                Format::Csv => {
                    emit!("mu,lambda,trace,target,pass");
                    let ids = |v: &[String]| {
                        if v.is_empty() {
                            "0".to_string()
                        } else {
                            v.join("+")
                        }
                    };
                    for r in &rows {
                        emit!(
                            "{},{},{},{},{}",
                            ids(&r.mu),
                            ids(&r.lambda),
                            r.trace,
                            r.target,
                            if r.pass { "PASS" } else { "FAIL" }
                        );
                    }
                }
            }
            Ok(rows.iter().all(|r| r.pass))
        }
        HeisenbergCommand::Matrix { at, pick, element } => {
            let src = load(&at.source)?;
            let ws = weights_at(&src, &at)?;
            let delta = pick_cocycle(&pick.cocycle, pick.seed, &src, &ws)?;
            let e = HeisenbergElement::parse(&src.graph, &element)?;
            let m = heisenberg::represent(&e, delta.as_ref(), &ws)?;
            let sign = |p: u8| ["1", "i", "-1", "-i"][p as usize];
            let triplets: Vec<_> = m
                .triplets()
                .into_iter()
                .map(|(r, c, p)| json!([r, c, sign(p)]))
                .collect();
            print_json(&json!({
                "element": e.display(&src.graph),
                "dim": m.dim(),
                "triplets": triplets,
            }))?;
            Ok(true)
        }
        HeisenbergCommand::Homomorphism { at, pick, samples } => {
            let src = load(&at.source)?;
            let ws = weights_at(&src, &at)?;
            let delta = pick_cocycle(&pick.cocycle, pick.seed, &src, &ws)?;
            let elems = heisenberg::elements(&src.graph)?;
            let n = elems.len();
            let pairs: Vec<(usize, usize)> = match samples {
                Some(s) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(pick.seed);
                    (0..s)
                        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                        .collect()
                }
                None => (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect(),
            };
            let report =
                heisenberg::check_homomorphism(&src.graph, delta.as_ref(), &ws, &elems, &pairs)?;
            let ok = report.ok();
            print_json(&report)?;
            Ok(ok)
        }
        HeisenbergCommand::VerifyQ { source, convention } => {
            let src = load(&source)?;
            let conv = match convention {
                Convention::Naive => QConvention::Naive,
                Convention::Normalized => QConvention::Normalized,
            };
            let report = heisenberg::verify_q_reduction(&src.graph, conv)?;
            let ok = report.ok();
            print_json(&report)?;
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
