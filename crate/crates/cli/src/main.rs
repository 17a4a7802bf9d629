//! `atcert`: validate graphs, expand capped graph polynomials, produce and
//! verify monomial certificates, generate test families, and run list
//! colouring checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use atcert::certifier::{
    certify_k5free, certify_theorem1, certify_theorem2, certify_theorem3, parse_roles, verify_certificate, Certificate,
    CertifyOptions, Construction, MatchedCertificates, CERTIFICATE_HEADER,
};
use atcert::oracle::{
    adversarial_choosability, capped_expand_p, capped_expand_z, check_prime, laurent_z, mod_report,
    solve_list_coloring, AdversaryOptions, CapVariant, DegreeCaps, ExpandOptions, ListAssignment, DEFAULT_MAX_TERMS,
};
use atcert::planar::{generate, Edge, Family, Graph, NearTriangulation, RawGraph, RoleAssignment};
use atcert::{Error, Ledger};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "atcert", version, about = "Degree-bounded nonvanishing monomial certificates for planar graphs")]
struct Cli {
    /// Worker threads for the capped expansion (output does not depend on it)
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,

    /// Abort an expansion once this many live terms are held
    #[arg(long, global = true, env = "ATCERT_MAX_TERMS", default_value_t = DEFAULT_MAX_TERMS,
          value_parser = positive)]
    max_terms: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a graph file; near-triangulations are checked in full
    Validate { graph: PathBuf },
    /// Expand the graph polynomial under degree caps and print the ledger
    Expand {
        graph: PathBuf,
        /// Cap vector: theorem1, theorem2_doublestar, theorem3_triplestar, ...
        #[arg(long)]
        caps: String,
        /// Edge left out of the product (`u-v`, or `uv` for one-letter names); repeatable
        #[arg(long = "exclude", value_name = "EDGE")]
        excluded: Vec<String>,
        #[command(flatten)]
        matching: MatchingArg,
        #[arg(long, value_enum, default_value_t = Form::P)]
        form: Form,
        /// Also write the ledger to this file
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Build a certificate for one of the four statements
    Certify {
        graph: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        theorem: u8,
        /// Write the certificate(s) here as well as to standard output
        #[arg(long)]
        out: Option<PathBuf>,
        /// Search nodes before the matched search gives up
        #[arg(long, default_value_t = 1_000_000)]
        max_search_nodes: u64,
    },
    /// Re-derive every claim of one or more certificates
    Verify {
        graph: PathBuf,
        certificate: PathBuf,
        /// Primes to report the coefficient's residue for
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        primes: Vec<u64>,
    },
    /// Write a generated family member as a graph file
    Generate {
        /// fan:M, wheel:M, stacked:D, octahedron, v8, clique-sum(G1,G2,K), ...
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check list colourability for given lists or against every assignment
    Choosable(ChoosableArgs),
}

#[derive(Args)]
struct MatchingArg {
    /// Matching as `r=RED g=GREEN; ...`; defaults to the graph file's matching
    #[arg(long)]
    matching: Option<String>,
}

#[derive(Args)]
struct ChoosableArgs {
    graph: PathBuf,
    /// List file: one `vertex: c1 c2 ...` line per vertex
    #[arg(long, conflicts_with_all = ["adversary", "universe"], required_unless_present = "adversary")]
    lists: Option<PathBuf>,
    /// List size every vertex receives
    #[arg(long, requires = "universe")]
    adversary: Option<u32>,
    /// Colours the adversary draws lists from
    #[arg(long)]
    universe: Option<u32>,
    /// Give red vertices of the matching one extra colour
    #[arg(long)]
    enlarge_red: bool,
    /// Delete the matching's edges before colouring
    #[arg(long)]
    minus_matching: bool,
    #[command(flatten)]
    matching: MatchingArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    /// Coefficients of `P` within the caps
    P,
    /// Nice part of `Z = Q·R`
    Z,
    /// Every term of `Z`, before the nice filter
    ZFull,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// Why a command did not succeed, with its exit code.
enum Failure {
    /// A well-formed question with a negative answer.
    Negative(String),
    Usage(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Negative(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Negative(m) | Failure::Usage(m) | Failure::Budget(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget(_) => Failure::Budget(e.to_string()),
            Error::Internal(_) => Failure::Negative(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("atcert: {failure}");
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let expand = ExpandOptions::default().with_workers(cli.workers as usize).with_max_terms(cli.max_terms);
    match cli.command {
        Command::Validate { graph } => validate(&graph),
        Command::Expand { graph, caps, excluded, matching, form, export } => {
            expand_cmd(&graph, &caps, &excluded, &matching, form, export.as_deref(), &expand)
        }
        Command::Certify { graph, theorem, out, max_search_nodes } => {
            let opts = CertifyOptions { max_search_nodes, ..CertifyOptions::default().with_expand(expand) };
            certify(&graph, theorem, out.as_deref(), &opts)
        }
        Command::Verify { graph, certificate, primes } => verify(&graph, &certificate, &primes, &expand),
        Command::Generate { family, out } => generate_cmd(&family, out.as_deref()),
        Command::Choosable(args) => choosable(&args),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<RawGraph, Failure> {
    RawGraph::from_text(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// The near-triangulation when the file names an outer cycle.
fn frame(raw: &RawGraph) -> Result<Option<NearTriangulation>, Failure> {
    if raw.outer_cycle.is_none() && raw.distinguished_edge.is_none() {
        return Ok(None);
    }
    Ok(Some(NearTriangulation::validate(raw)?))
}

fn near(raw: &RawGraph, what: &str) -> Result<NearTriangulation, Failure> {
    frame(raw)?.ok_or_else(|| Failure::Usage(format!("{what} needs a graph file with an outer cycle")))
}

fn roles(g: &Graph, raw: &RawGraph, arg: &MatchingArg) -> Result<RoleAssignment, Failure> {
    let roles = match (&arg.matching, &raw.matching) {
        (Some(s), _) => parse_roles(g, s)?,
        (None, Some(pairs)) => {
            let pairs =
                pairs.iter().map(|[r, gr]| Ok((g.vertex(r)?, g.vertex(gr)?))).collect::<Result<Vec<_>, Error>>()?;
            RoleAssignment::new(pairs)
        }
        (None, None) => RoleAssignment::empty(),
    };
    roles.check_matching(g).map_err(Failure::Usage)?;
    Ok(roles)
}

fn validate(path: &Path) -> Outcome {
    let raw = load(path)?;
    let g = raw.graph()?;
    let no_matching = MatchingArg { matching: None };
    let roles = roles(&g, &raw, &no_matching)?;
    match frame(&raw)? {
        Some(nt) => {
            if !roles.is_empty() {
                roles.check_planar(&nt).map_err(Failure::Usage)?;
            }
            println!(
                "near-triangulation n={} m={} s={} outer={} distinguished={}",
                nt.n(),
                g.num_edges(),
                nt.s(),
                nt.outer_cycle().iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(" "),
                g.render_edge(nt.distinguished_edge()),
            );
        }
        None => println!("graph n={} m={}", g.num_vertices(), g.num_edges()),
    }
    if !roles.is_empty() {
        println!("matching: {}", roles.render(&g));
    }
    println!("fingerprint: {}", g.fingerprint());
    Ok(())
}

fn expand_cmd(
    path: &Path,
    caps: &str,
    excluded: &[String],
    matching: &MatchingArg,
    form: Form,
    export: Option<&Path>,
    opts: &ExpandOptions,
) -> Outcome {
    let raw = load(path)?;
    let g = raw.graph()?;
    let variant: CapVariant = caps.parse()?;
    let roles = roles(&g, &raw, matching)?;
    let caps = match variant {
        CapVariant::Theorem1 => DegreeCaps::theorem1(&near(&raw, "theorem1 caps")?),
        CapVariant::Theorem2(s) => DegreeCaps::theorem2(&near(&raw, "theorem2 caps")?, &roles, s),
        CapVariant::Theorem3(s) => DegreeCaps::theorem3(&near(&raw, "theorem3 caps")?, &roles, s),
        CapVariant::Theorem4(s) => DegreeCaps::theorem4(&g, &roles, s),
        CapVariant::Exact | CapVariant::Custom => {
            return Err(Failure::Usage(format!("caps variant {variant} cannot be derived from a graph")))
        }
    };
    let excluded: Vec<Edge> = excluded.iter().map(|e| g.parse_edge(e)).collect::<Result<_, _>>()?;
    let ledger: Ledger = match form {
        Form::P => capped_expand_p(&g, &caps, &excluded, opts)?,
        Form::Z => capped_expand_z(&g, &caps, &excluded, opts)?,
        Form::ZFull => laurent_z(&g, &caps, &excluded, opts)?,
    };
    let text = ledger.to_text();
    print!("{text}");
    if let Some(p) = export {
        write(p, &text)?;
    }
    Ok(())
}

fn certify(path: &Path, theorem: u8, out: Option<&Path>, opts: &CertifyOptions) -> Outcome {
    let raw = load(path)?;
    let g = raw.graph()?;
    let certs: Vec<Certificate> = match theorem {
        1 => vec![certify_theorem1(&near(&raw, "theorem 1")?, opts)?],
        2 => paired(certify_theorem2(&near(&raw, "theorem 2")?, opts)?),
        3 => paired(certify_theorem3(&near(&raw, "theorem 3")?, opts)?),
        _ => {
            // A graph file records no construction: a triangulation takes the
            // outer-triangle route, anything else the direct search.
            let construction = match frame(&raw)? {
                Some(nt) if nt.s() == 3 => Construction::Triangulation(nt),
                _ => Construction::Unstructured(g.clone()),
            };
            paired(certify_k5free(&construction, opts)?)
        }
    };
    let text = certs.iter().map(|c| c.to_text(&g)).collect::<Vec<_>>().join("\n");
    print!("{text}");
    if let Some(p) = out {
        write(p, &text)?;
    }
    Ok(())
}

fn paired(r: MatchedCertificates) -> Vec<Certificate> {
    vec![r.double, r.triple]
}

/// Splits a file holding one or more certificates at their header lines.
fn split_certificates(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for line in text.lines() {
        if line.trim_end() == CERTIFICATE_HEADER || out.is_empty() {
            out.push(String::new());
        }
        let last = out.last_mut().expect("pushed above");
        last.push_str(line);
        last.push('\n');
    }
    out
}

fn verify(graph: &Path, certificate: &Path, primes: &[u64], opts: &ExpandOptions) -> Outcome {
    for &p in primes {
        check_prime(p)?;
    }
    let g = load(graph)?.graph()?;
    let text = read(certificate)?;
    let mut failed = 0;
    for (i, block) in split_certificates(&text).iter().enumerate() {
        let cert = Certificate::from_text(block, &g)
            .map_err(|e| Failure::Usage(format!("{} certificate {}: {e}", certificate.display(), i + 1)))?;
        let verdict = verify_certificate(&g, &cert, opts);
        println!("certificate {} ({})", i + 1, cert.variant());
        println!("{verdict}");
        if let Some(c) = &verdict.recomputed {
            for s in mod_report(c, primes)? {
                println!("{}", s.render());
            }
        }
        if let Some(budget) = verdict.failures().find(|c| c.detail.starts_with("size guard exceeded")) {
            return Err(Failure::Budget(budget.detail.clone()));
        }
        if !verdict.passed() {
            failed += 1;
        }
    }
    match failed {
        0 => Ok(()),
        n => Err(Failure::Negative(format!("{n} certificate(s) failed verification"))),
    }
}

fn generate_cmd(spec: &str, out: Option<&Path>) -> Outcome {
    let family: Family = spec.parse()?;
    let text = generate(&family)?.to_text();
    match out {
        Some(p) => write(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_lists(g: &Graph, text: &str) -> Result<ListAssignment, Failure> {
    let mut lists = ListAssignment::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |what: String| Failure::Usage(format!("list file line {}: {what}", i + 1));
        let (v, colours) = line.split_once(':').ok_or_else(|| bad("expected `vertex: c1 c2 ...`".into()))?;
        let v = g.vertex(v.trim()).map_err(|e| bad(e.to_string()))?;
        let colours: BTreeSet<u32> = colours
            .split_whitespace()
            .map(|c| c.parse().map_err(|e| bad(format!("colour {c:?}: {e}"))))
            .collect::<Result<_, _>>()?;
        if lists.insert(v, colours).is_some() {
            return Err(bad(format!("second list for {}", g.name(v))));
        }
    }
    if let Some(v) = g.vertices().find(|v| !lists.contains_key(v)) {
        return Err(Failure::Usage(format!("no list for {}", g.name(v))));
    }
    Ok(lists)
}

fn choosable(args: &ChoosableArgs) -> Outcome {
    let raw = load(&args.graph)?;
    let full = raw.graph()?;
    let roles = roles(&full, &raw, &args.matching)?;
    let g = if args.minus_matching { full.remove_edges(&roles.edges()) } else { full };

    if let Some(path) = &args.lists {
        let lists = parse_lists(&g, &read(path)?)?;
        return match solve_list_coloring(&g, &lists) {
            Some(colouring) => {
                println!("colorable");
                for (v, c) in colouring {
                    println!("  {}: {c}", g.name(v));
                }
                Ok(())
            }
            None => Err(Failure::Negative("not colorable from the given lists".into())),
        };
    }

    let (k, universe) = match (args.adversary, args.universe) {
        (Some(k), Some(u)) => (k, u),
        _ => return Err(Failure::Usage("give --lists, or --adversary with --universe".into())),
    };
    let sizes: BTreeMap<_, _> =
        g.vertices().map(|v| (v, if args.enlarge_red && roles.is_red(v) { k + 1 } else { k })).collect();
    let verdict = adversarial_choosability(&g, &sizes, &AdversaryOptions::new(universe))?;
    print!("{}", verdict.render(&g));
    if verdict.colorable_for_all {
        Ok(())
    } else {
        Err(Failure::Negative("some list assignment admits no colouring".into()))
    }
}
