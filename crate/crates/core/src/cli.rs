//! Command-line front end: graph sources, dispatch, JSON output.
//!
//! Exit codes: 0 success (and "equal"/"positive"/"clean" where checked),
//! 1 failed check, 2 usage or bad input, 3 resource cap, 4 internal panic
//! (mapped in the binary).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::algebra::{ESym, Int};
use crate::formulas::{b_formula, chain_csf, cycle_csf, generic_b, two_cycle_csf};
use crate::forest_triples::{
    count_forest_triples, csf_forest_triples, enumerate_forest_triples, ft_prime_members,
};
use crate::graph::{ChainSpec, LabeledGraph, SegmentKind};
use crate::involution::{
    audit_involution, composed_involution, cycle_involution, cycle_tree_involution,
    derived_involution, CycleTreeHost,
};
use crate::oracle::{csf_coloring_oracle, matches_oracle, ORACLE_DEFAULT_MAX_N};
use crate::{domain_err, Error, Result};

/// Vertex bound for the closed-formula paths; the composition sums behind
/// them grow exponentially with the degree.
const FORMULA_DEGREE_CAP: usize = 32;

/// Exact chromatic symmetric functions in the elementary basis.
#[derive(Parser, Debug)]
#[command(name = "csf", version, about)]
pub struct Cli {
    /// Cap on worker threads for parallel sections (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Render expansions as readable text instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Vertex cap for the coloring oracle.
    #[arg(long, global = true, value_name = "N", default_value_t = ORACLE_DEFAULT_MAX_N)]
    max_n: usize,

    /// Cap on enumerated forest triples.
    #[arg(long, global = true, value_name = "N", default_value_t = 1_000_000)]
    max_triples: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand X_G as a signed sum over forest triples.
    Compute {
        #[command(flatten)]
        source: GraphSource,
        /// Fail (exit 1) unless every coefficient is nonnegative.
        #[arg(long)]
        require_positive: bool,
    },
    /// Evaluate a closed formula.
    Formula(FormulaArgs),
    /// Compare an expansion against the proper-coloring oracle.
    Verify {
        #[command(flatten)]
        source: GraphSource,
        /// One of `forest-triples`, `formula:cycle`, `formula:two-cycles`,
        /// `formula:chain`.
        #[arg(long, value_name = "METHOD")]
        against: String,
    },
    /// Exhaustively audit a sign-reversing involution.
    Audit(AuditArgs),
    /// Count NBC forests and forest triples.
    Enumerate {
        #[command(flatten)]
        source: GraphSource,
    },
}

/// Where the graph comes from; exactly one source.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Graph file: `n <count>`, then `e <u> <v>` lines in edge order.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,

    /// Chain such as `C2+C4+C3` (C = cycle, K = clique).
    #[arg(long, value_name = "SPEC")]
    chain: Option<String>,

    /// Cycle with this many vertices.
    #[arg(long, value_name = "A")]
    cycle: Option<usize>,
}

impl GraphSource {
    fn load(&self) -> Result<LabeledGraph> {
        if let Some(path) = &self.graph {
            read_graph_file(path)
        } else if let Some(spec) = &self.chain {
            spec.parse::<ChainSpec>()?.to_graph()
        } else {
            let a = self.cycle.expect("clap enforces one source");
            checked_cycle(a)
        }
    }

    /// The source as a chain, for the formula-based verify methods.
    fn chain_spec(&self) -> Result<ChainSpec> {
        if let Some(spec) = &self.chain {
            spec.parse()
        } else if let Some(a) = self.cycle {
            checked_cycle(a)?;
            Ok(ChainSpec { segments: vec![(SegmentKind::Cycle, a)] })
        } else {
            domain_err("this method needs --chain or --cycle, not a graph file")
        }
    }
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("which").required(true)))]
struct FormulaArgs {
    /// X of the cycle with this many vertices.
    #[arg(long, value_name = "A", group = "which")]
    cycle: Option<usize>,

    /// The transfer series B_{a,k} for a cycle with a k-vertex attachment.
    #[arg(long, num_args = 2, value_names = ["A", "K"], group = "which")]
    b: Option<Vec<usize>>,

    /// X of two cycles glued at one vertex.
    #[arg(long, num_args = 2, value_names = ["A", "B"], group = "which")]
    two_cycles: Option<Vec<usize>>,

    /// X of a chain such as `C2+C4+C3`.
    #[arg(long, value_name = "SPEC", group = "which")]
    chain: Option<String>,

    /// B_{A,k} for the head graph in FILE, by direct enumeration
    /// (experimental: no positivity promise for non-cycle heads).
    #[arg(long, num_args = 2, value_names = ["FILE", "K"], group = "which")]
    generic_b: Option<Vec<String>>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("target").required(true)))]
struct AuditArgs {
    /// The cycle involution on FT(C_a).
    #[arg(long, value_name = "A", group = "target")]
    cycle: Option<usize>,

    /// The cycle-with-tree involution on FT'(C_a + U_k).
    #[arg(long, num_args = 2, value_names = ["A", "K"], group = "target")]
    cycle_tree: Option<Vec<usize>>,

    /// The composed involution on FT(C_a + G'), with the derived pairing
    /// on the attachment; G' comes from --graph or --chain.
    #[arg(long, value_name = "A", group = "target")]
    composed: Option<usize>,

    /// Attachment tree shape for --cycle-tree.
    #[arg(long, value_enum, default_value_t = Shape::Path)]
    shape: Shape,

    /// Attachment graph file for --composed.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,

    /// Attachment chain spec for --composed.
    #[arg(long, value_name = "SPEC")]
    chain: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Shape {
    Path,
    Star,
}

/// Parses the process arguments and runs; returns the exit code.
pub fn run_from_env() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Domain(_) => ExitCode::from(2),
                Error::Resource(_) => ExitCode::from(3),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Domain(format!("cannot set up {n} worker threads: {e}")))?;
    }
    match &cli.command {
        Command::Compute { source, require_positive } => {
            run_compute(cli, source, *require_positive)
        }
        Command::Formula(args) => run_formula(cli, args),
        Command::Verify { source, against } => run_verify(cli, source, against),
        Command::Audit(args) => run_audit(cli, args),
        Command::Enumerate { source } => run_enumerate(source),
    }
}

fn run_compute(cli: &Cli, source: &GraphSource, require_positive: bool) -> Result<ExitCode> {
    let g = source.load()?;
    guard_triples(&g, cli.max_triples)?;
    let x = csf_forest_triples(&g);
    emit_expansion(cli, &x, &[]);
    if require_positive && !x.is_nonneg() {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_formula(cli: &Cli, args: &FormulaArgs) -> Result<ExitCode> {
    let mut extra: Vec<(&str, Value)> = Vec::new();
    let x = if let Some(a) = args.cycle {
        checked_cycle(a)?;
        guard_degree(a)?;
        cycle_csf(a)
    } else if let Some(ak) = &args.b {
        let (a, k) = (ak[0], ak[1]);
        if a < 2 || k < 1 {
            return domain_err("the B series needs a >= 2 and k >= 1");
        }
        guard_degree(a + k - 1)?;
        b_formula(a, k as u32)
    } else if let Some(ab) = &args.two_cycles {
        let (a, b) = (ab[0], ab[1]);
        if a < 2 || b < 2 {
            return domain_err("both cycles need at least two vertices");
        }
        guard_degree(a + b - 1)?;
        two_cycle_csf(a, b)
    } else if let Some(spec) = &args.chain {
        let spec: ChainSpec = spec.parse()?;
        guard_degree(spec.vertex_count())?;
        chain_csf(&spec)?
    } else {
        let pair = args.generic_b.as_ref().expect("clap enforces one choice");
        let head = read_graph_file(Path::new(&pair[0]))?;
        let k: usize = pair[1]
            .parse()
            .map_err(|_| Error::Domain(format!("bad attachment size {:?}", pair[1])))?;
        if k < 1 {
            return domain_err("the attachment needs at least one vertex");
        }
        extra.push(("experimental", true.into()));
        generic_b(&head, &LabeledGraph::path(k), cli.max_triples)?
    };
    emit_expansion(cli, &x, &extra);
    Ok(ExitCode::SUCCESS)
}

fn run_verify(cli: &Cli, source: &GraphSource, against: &str) -> Result<ExitCode> {
    let g = source.load()?;
    let x = match against {
        "forest-triples" => {
            guard_triples(&g, cli.max_triples)?;
            csf_forest_triples(&g)
        }
        "formula:cycle" => match source.chain_spec()?.segments[..] {
            [(SegmentKind::Cycle, a)] => cycle_csf(a),
            _ => return domain_err("formula:cycle needs a single-cycle source"),
        },
        "formula:two-cycles" => match source.chain_spec()?.segments[..] {
            [(SegmentKind::Cycle, a), (SegmentKind::Cycle, b)] => two_cycle_csf(a, b),
            _ => return domain_err("formula:two-cycles needs a chain of exactly two cycles"),
        },
        "formula:chain" => chain_csf(&source.chain_spec()?)?,
        other => return domain_err(format!("unknown verify method {other:?}")),
    };
    let oracle = csf_coloring_oracle(&g, cli.max_n)?;
    let equal = matches_oracle(&x, &oracle)?;
    println!("{}", json!({ "equal": equal }));
    Ok(if equal { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_audit(cli: &Cli, args: &AuditArgs) -> Result<ExitCode> {
    let report = if let Some(a) = args.cycle {
        no_attachment(args)?;
        checked_cycle(a)?;
        let g = LabeledGraph::cycle(a);
        let domain = enumerate_forest_triples(&g, cli.max_triples)?;
        audit_involution(&domain, |f| cycle_involution(a, f))
    } else if let Some(ak) = &args.cycle_tree {
        no_attachment(args)?;
        let (a, k) = (ak[0], ak[1]);
        if k < 1 {
            return domain_err("the attachment needs at least one vertex");
        }
        let u = match args.shape {
            Shape::Path => LabeledGraph::path(k),
            Shape::Star => LabeledGraph::star(k),
        };
        let host = CycleTreeHost::new(a, u.clone())?;
        let (_, domain) = ft_prime_members(a, &u, cli.max_triples)?;
        audit_involution(&domain, |f| cycle_tree_involution(&host, f))
    } else {
        let a = args.composed.expect("clap enforces one target");
        checked_cycle(a)?;
        let attachment = match (&args.graph, &args.chain) {
            (Some(path), None) => read_graph_file(path)?,
            (None, Some(spec)) => spec.parse::<ChainSpec>()?.to_graph()?,
            (Some(_), Some(_)) => {
                return domain_err("give the attachment as --graph or --chain, not both")
            }
            (None, None) => {
                return domain_err("--composed needs the attachment as --graph or --chain")
            }
        };
        let inner = enumerate_forest_triples(&attachment, cli.max_triples)?;
        let phi = derived_involution(&inner)?;
        let g = LabeledGraph::cycle(a).graph_sum(&attachment)?;
        let domain = enumerate_forest_triples(&g, cli.max_triples)?;
        audit_involution(&domain, |f| composed_involution(a, &phi, f))
    };
    let value = json!({
        "domain_size": report.domain_size,
        "fixed_points": report.fixed_points(),
        "violations": report.violations,
    });
    println!("{value}");
    Ok(if report.is_clean() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_enumerate(source: &GraphSource) -> Result<ExitCode> {
    let g = source.load()?;
    let mut nbc = 0u64;
    g.visit_nbc_forests(|_| nbc += 1);
    let value = json!({
        "vertices": g.n(),
        "edges": g.m(),
        "nbc_forests": nbc,
        "forest_triples": big_json(count_forest_triples(&g)),
    });
    println!("{value}");
    Ok(ExitCode::SUCCESS)
}

fn checked_cycle(a: usize) -> Result<LabeledGraph> {
    if a < 2 {
        return domain_err("a cycle needs at least two vertices");
    }
    Ok(LabeledGraph::cycle(a))
}

fn read_graph_file(path: &Path) -> Result<LabeledGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    LabeledGraph::from_text(&text)
}

fn guard_triples(g: &LabeledGraph, cap: u64) -> Result<()> {
    let total = count_forest_triples(g);
    if total > u128::from(cap) {
        return Err(Error::Resource(format!(
            "{total} forest triples exceed the cap of {cap}; raise --max-triples"
        )));
    }
    Ok(())
}

fn guard_degree(n: usize) -> Result<()> {
    if n > FORMULA_DEGREE_CAP {
        return Err(Error::Resource(format!(
            "degree {n} exceeds the closed-formula bound of {FORMULA_DEGREE_CAP}"
        )));
    }
    Ok(())
}

fn no_attachment(args: &AuditArgs) -> Result<()> {
    if args.graph.is_some() || args.chain.is_some() {
        return domain_err("only --composed takes an attachment");
    }
    Ok(())
}

/// Prints an e-expansion: JSON (`degree`, descending-lex `terms`,
/// `e_positive`, plus any extras) or plain text under --pretty.
fn emit_expansion(cli: &Cli, x: &ESym, extra: &[(&str, Value)]) {
    if cli.pretty {
        println!("{x}");
        return;
    }
    let mut terms = Map::new();
    for (key, coeff) in x.iter_desc() {
        terms.insert(key.label(), int_json(coeff));
    }
    let mut obj = Map::new();
    obj.insert("degree".into(), x.degree().unwrap_or(0).into());
    obj.insert("terms".into(), Value::Object(terms));
    obj.insert("e_positive".into(), x.is_nonneg().into());
    for (k, v) in extra {
        obj.insert((*k).into(), v.clone());
    }
    println!("{}", Value::Object(obj));
}

fn int_json(c: &Int) -> Value {
    match c.to_i64() {
        Some(v) => v.into(),
        None => c.to_string().into(),
    }
}

fn big_json(v: u128) -> Value {
    match u64::try_from(v) {
        Ok(small) => small.into(),
        Err(_) => v.to_string().into(),
    }
}
