use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use gcohom::cohomology::module_generators;
use gcohom::graph::{
    cartesian_product, complete_graph, cycle_graph, edgeless, path_graph, random_general_position,
    single_edge, RandomSpec,
};
use gcohom::profile::{betti_generic, check_ordering_bound, dim_hk, ordering_indices};
use gcohom::structure::{edge_connectivity, trim_traced, vertex_connectivity, TrimOrder, TrimStep};
use gcohom::verify::{exit_code, run_suite_with, CorpusSpec, Verdict};
use gcohom::{char_profile, EmbeddedGraph, Rat};

#[derive(Parser)]
#[command(name = "gcohom", version, about = "Exact graph cohomology of plane-embedded graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct Input {
    /// Graph file, or `-` for stdin
    file: PathBuf,
    /// Accept raw-slope fixture files
    #[arg(long)]
    slopes_unchecked: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Ranks, relation counts, characteristic numbers and vertex indices
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Report dim H^k up to this degree (default: one past the vanishing index)
        #[arg(long)]
        k: Option<usize>,
        /// Direction for the Betti count, as `p,q`
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        /// Vertex ordering for the ordering indices, as `v1,v2,...`
        #[arg(long)]
        ordering: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Homogeneous module generators
    Generators {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Cartesian product with coordinates a*phi1 + b*phi2
    Product {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        a: Rat,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        b: Rat,
    },
    /// Maximal k-trimmed subgraph
    Trim {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Minimum edge and vertex cuts
    Connectivity {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the check suite, one JSON report per line
    Verify(VerifyArgs),
    /// Generate a graph file
    Gen(GenArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Fixture graphs plus a seeded random sample
    #[arg(long, conflicts_with_all = ["complete", "random"])]
    default: bool,
    /// Complete graphs K_2 through K_n
    #[arg(long, value_name = "N")]
    complete: Option<usize>,
    /// Number of random instances
    #[arg(long, value_name = "N")]
    random: Option<usize>,
    /// Largest vertex count for random instances
    #[arg(long, default_value_t = 8)]
    max_m: usize,
    /// Number of random products
    #[arg(long, default_value_t = 0)]
    products: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "kind")]
struct GenKind {
    #[arg(long, value_name = "M")]
    complete: Option<usize>,
    #[arg(long, value_name = "M")]
    cycle: Option<usize>,
    #[arg(long, value_name = "M")]
    path: Option<usize>,
    #[arg(long, value_name = "M")]
    edgeless: Option<usize>,
    /// A single edge
    #[arg(long)]
    edge: bool,
    /// Random graph on M vertices in general position
    #[arg(long, value_name = "M")]
    random: Option<usize>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    kind: GenKind,
    /// Degree of a random regular graph
    #[arg(long, requires = "random", conflicts_with = "density")]
    regular: Option<usize>,
    /// Edge probability in percent for a random graph
    #[arg(long, requires = "random")]
    density: Option<u32>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

/// Marks errors caused by the input (exit status 2).
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input_err(e: gcohom::Error) -> anyhow::Error {
    if e.is_input_error() {
        InputError(e.to_string()).into()
    } else {
        e.into()
    }
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())).into())
    }
}

fn load(path: &Path, slopes_unchecked: bool) -> anyhow::Result<EmbeddedGraph> {
    let text = read_text(path)?;
    let g = EmbeddedGraph::from_json(&text)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    if g.is_unchecked() && !slopes_unchecked {
        return Err(InputError(format!(
            "{} is a raw-slope fixture; pass --slopes-unchecked to accept it",
            path.display()
        ))
        .into());
    }
    Ok(g)
}

fn load_input(input: &Input) -> anyhow::Result<EmbeddedGraph> {
    load(&input.file, input.slopes_unchecked)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> anyhow::Result<Vec<T>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| InputError(format!("bad {what} entry {part:?}")).into())
        })
        .collect()
}

fn graph_json(g: &EmbeddedGraph) -> String {
    serde_json::to_string_pretty(&gcohom::graph::GraphFile::from_graph(g)).expect("graph serializes")
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn analyze(
    input: &Input,
    k: Option<usize>,
    xi: Option<&str>,
    ordering: Option<&str>,
    format: Format,
) -> anyhow::Result<String> {
    let g = load_input(input)?;
    let profile = char_profile(&g)?;
    let xi = match xi {
        Some(s) => {
            let v: Vec<Rat> = parse_list(s, "xi")?;
            if v.len() != 2 {
                bail!(InputError("--xi takes two rationals `p,q`".into()));
            }
            Some((v[0].clone(), v[1].clone()))
        }
        None => None,
    };
    let ordering: Option<Vec<usize>> = ordering.map(|s| parse_list(s, "ordering")).transpose()?;
    let betti = match betti_generic(&g, xi) {
        Ok(b) => Some(b),
        Err(gcohom::Error::NoCoordinates) => None,
        Err(e) => return Err(input_err(e)),
    };
    let ord = ordering_indices(&g, ordering.as_deref()).map_err(input_err)?;
    let comparison = check_ordering_bound(&g, ordering.as_deref())?;
    let top = k.unwrap_or(profile.k_max + 1);
    let dims: Vec<usize> = (0..=top).map(|k| dim_hk(&g, k)).collect();

    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "profile": profile,
            "dims": dims,
            "betti": betti,
            "ordering": ord,
            "cumulative": comparison,
        }))?,
        Format::Table => {
            let mut out = String::new();
            writeln!(out, "m = {}, |E| = {}, K = {}", g.m(), g.num_edges(), profile.k_max)?;
            if let Some(t) = g.applied_shear() {
                writeln!(out, "shear t = {t}")?;
            }
            writeln!(out, "r    : {}", list(&profile.r))?;
            writeln!(out, "s    : {}  (from s_-1)", list(&profile.s))?;
            writeln!(out, "c    : {}", list(&profile.c))?;
            writeln!(out, "pi0  : {}", profile.pi0)?;
            writeln!(out, "dim H: {}", list(&dims))?;
            match &betti {
                Some(b) => writeln!(out, "beta : {}  (xi = {}, {})", list(&b.beta), b.xi.0, b.xi.1)?,
                None => writeln!(out, "beta : n/a (no coordinates)")?,
            }
            writeln!(out, "mu   : {}  (ordering {})", list(&ord.mu), list(&ord.ordering))?;
            writeln!(out, "b    : {}", list(&ord.b))?;
            out.truncate(out.trim_end().len());
            out
        }
    })
}

fn generators(input: &Input, format: Format) -> anyhow::Result<String> {
    let g = load_input(input)?;
    let gens = module_generators(&g)?;
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "counts": gens.counts(),
            "generators": gens
                .generators
                .iter()
                .map(|(d, f)| json!({ "degree": d, "element": f }))
                .collect::<Vec<_>>(),
        }))?,
        Format::Table => {
            let mut out = String::new();
            for (d, f) in &gens.generators {
                writeln!(out, "{d}: {f}")?;
            }
            out.truncate(out.trim_end().len());
            out
        }
    })
}

fn product(first: &Path, second: &Path, a: &Rat, b: &Rat) -> anyhow::Result<String> {
    let g1 = load(first, false)?;
    let g2 = load(second, false)?;
    let g = cartesian_product(&g1, &g2, a, b).map_err(input_err)?;
    Ok(graph_json(&g))
}

fn trim(input: &Input, k: usize, format: Format) -> anyhow::Result<String> {
    if k == 0 {
        bail!(InputError("--k must be at least 1".into()));
    }
    let g = load_input(input)?;
    let trace = trim_traced(&g, k, TrimOrder::Ascending);
    Ok(match format {
        Format::Json => graph_json(&trace.graph),
        Format::Table => {
            let mut out = String::new();
            for step in &trace.steps {
                match step {
                    TrimStep::Vertex(v) => writeln!(out, "delete vertex {v}")?,
                    TrimStep::Edges(es) => {
                        let es: Vec<String> = es.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                        writeln!(out, "delete edges {}", es.join(", "))?
                    }
                }
            }
            writeln!(out, "kept vertices: {}", list(&trace.labels))?;
            write!(out, "kept edges: {}", trace.graph.num_edges())?;
            out
        }
    })
}

fn connectivity(input: &Input, format: Format) -> anyhow::Result<String> {
    let g = load_input(input)?;
    let (lambda, ecut) = edge_connectivity(&g);
    let (kappa, vcut) = vertex_connectivity(&g);
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "components": g.num_components(),
            "edge_connectivity": lambda,
            "edge_cut": ecut,
            "vertex_connectivity": kappa,
            "vertex_cut": vcut,
        }))?,
        Format::Table => {
            let edges: Vec<String> = ecut.edges.iter().map(|e| e.to_string()).collect();
            format!(
                "components: {}\nedge connectivity: {lambda} (cut {})\nvertex connectivity: {kappa} (cut {})",
                g.num_components(),
                edges.join(", "),
                list(&vcut.vertices)
            )
        }
    })
}

fn verify(args: &VerifyArgs) -> anyhow::Result<ExitCode> {
    let corpus = if args.default {
        CorpusSpec::default_corpus()
    } else if args.complete.is_none() && args.random.is_none() && args.products == 0 {
        bail!(InputError(
            "choose a corpus: --default, --complete N, --random N or --products N".into()
        ));
    } else {
        CorpusSpec {
            fixtures: false,
            complete_max: args.complete.unwrap_or(0),
            random: args.random.unwrap_or(0),
            random_max_m: args.max_m,
            random_products: args.products,
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut worst = Vec::new();
    let mut write_err = None;
    run_suite_with(&corpus, args.seed, |r| {
        let line = match args.format {
            Format::Json => serde_json::to_string(r).expect("report serializes"),
            Format::Table => format!("{:<18} {:<28} {:<20} {} vs {}", r.verdict, r.check, r.instance, r.lhs, r.rhs),
        };
        if let Err(e) = writeln!(out, "{line}") {
            if e.kind() != io::ErrorKind::BrokenPipe {
                write_err.get_or_insert(e);
            }
        }
        if r.verdict != Verdict::Pass {
            worst.push(r.clone());
        }
    })
    .map_err(input_err)?;
    if let Some(e) = write_err {
        return Err(e.into());
    }
    Ok(ExitCode::from(exit_code(&worst) as u8))
}

fn gen(args: &GenArgs) -> anyhow::Result<String> {
    let k = &args.kind;
    let g = if let Some(m) = k.complete {
        complete_graph(m)
    } else if let Some(m) = k.cycle {
        if m < 3 {
            bail!(InputError("a cycle needs at least 3 vertices".into()));
        }
        cycle_graph(m)
    } else if let Some(m) = k.path {
        path_graph(m)
    } else if let Some(m) = k.edgeless {
        edgeless(m)
    } else if k.edge {
        single_edge()
    } else if let Some(m) = k.random {
        let spec = match args.regular {
            Some(d) => RandomSpec::regular(m, d),
            None => RandomSpec::density(m, args.density.unwrap_or(50)),
        };
        random_general_position(&spec, args.seed).map_err(input_err)?
    } else {
        unreachable!("clap requires one generator kind")
    };
    Ok(graph_json(&g))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let text = match &cli.command {
        Command::Analyze {
            input,
            k,
            xi,
            ordering,
            format,
        } => analyze(input, *k, xi.as_deref(), ordering.as_deref(), *format)?,
        Command::Generators { input, format } => generators(input, *format)?,
        Command::Product { first, second, a, b } => product(first, second, a, b)?,
        Command::Trim { input, k, format } => trim(input, *k, *format)?,
        Command::Connectivity { input, format } => connectivity(input, *format)?,
        Command::Verify(args) => return verify(args),
        Command::Gen(args) => gen(args)?,
    };
    match writeln!(io::stdout(), "{text}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(ExitCode::SUCCESS),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<InputError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
