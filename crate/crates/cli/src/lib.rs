//! The `bicay` command line: argument parsing, dispatch and output.

pub mod catalog;
pub mod formats;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use bicay_core::graph::Graph;
use bicay_core::havt::{self, HavtParams, Sign};
use bicay_core::metacyclic::{GroupElem, GroupParams};
use bicay_core::symmetry::{self, PermGroup};
use bicay_core::{verify, BiCayleyGraph, BiCayleySpec, Limits};
use clap::{Args, Parser, Subcommand};

use catalog::CatalogRecord;
use formats::Format;

#[derive(Debug, Parser)]
#[command(name = "bicay", version, about = "Bi-Cayley graphs over split metacyclic p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a half-arc-transitive graph and print it.
    Construct {
        #[command(flatten)]
        havt: HavtArgs,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Classify the graph and append a record to this file.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Solve the quadratic that selects n.
    #[command(name = "solve-eq3")]
    SolveEq3 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        alpha: u32,
        /// Defaults to alpha - gamma; the solutions do not depend on it.
        #[arg(long)]
        beta: Option<u32>,
        #[arg(long)]
        gamma: u32,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        l: u64,
    },
    /// Transitivity classification of a graph.
    Classify {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Automorphism group order and generators.
    Aut {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Normalizer of the right regular action, from F and I.
    Normalizer {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// List group parameters, or constructible graphs.
    #[command(name = "enumerate-params")]
    EnumerateParams {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 243)]
        max_order: u64,
        /// List constructible graphs with at most this many vertices instead.
        #[arg(long)]
        instances: Option<u64>,
    },
    /// Classify BiCay(G, ∅, ∅, S) for all small generating S up to Aut(G).
    Survey {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        max_size: usize,
    },
    /// Run the built-in property suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        small: bool,
    },
    /// Convert a graph between formats.
    Export {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct GroupArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    alpha: u32,
    #[arg(long)]
    beta: u32,
    #[arg(long)]
    gamma: u32,
}

impl GroupArgs {
    fn params(&self) -> Result<GroupParams, CliError> {
        Ok(GroupParams::new(self.p, self.alpha, self.beta, self.gamma).map_err(bicay_core::Error::from)?)
    }
}

#[derive(Debug, Args)]
struct HavtArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long)]
    m: u64,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    l: u64,
    #[arg(long, value_parser = parse_sign)]
    sign: Sign,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.parse()
}

impl HavtArgs {
    fn params(&self) -> Result<HavtParams, CliError> {
        let group = self.group.params()?;
        Ok(HavtParams::new(group, self.m, self.k, self.l, self.sign).map_err(bicay_core::Error::from)?)
    }
}

/// A graph read from a file, given by a connection set, or constructed.
#[derive(Debug, Args)]
struct SourceArgs {
    /// Edge list, or graph6 for `.g6` files.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long = "in-format", value_enum)]
    in_format: Option<Format>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    alpha: Option<u32>,
    #[arg(long)]
    beta: Option<u32>,
    #[arg(long)]
    gamma: Option<u32>,
    /// Connection set as `j:i` pairs for `b^j a^i`, comma separated.
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    l: Option<u64>,
    #[arg(long, value_parser = parse_sign)]
    sign: Option<Sign>,
}

enum Source {
    File(Graph),
    BiCayley(BiCayleyGraph),
}

impl Source {
    fn graph(&self) -> &Graph {
        match self {
            Source::File(g) => g,
            Source::BiCayley(bc) => bc.graph(),
        }
    }

    fn labels(&self) -> Vec<String> {
        match self {
            Source::File(g) => (0..g.vertex_count()).map(|v| v.to_string()).collect(),
            Source::BiCayley(bc) => bicayley_labels(bc),
        }
    }
}

fn bicayley_labels(bc: &BiCayleyGraph) -> Vec<String> {
    (0..bc.vertex_count())
        .map(|v| {
            let (g, part) = bc.vertex_label(v);
            format!("{g}_{part}")
        })
        .collect()
}

fn require<T: Copy>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
}

impl SourceArgs {
    fn resolve(&self) -> Result<Source, CliError> {
        if let Some(path) = &self.input {
            let format = self.in_format.unwrap_or_else(|| Format::from_path(&path.to_string_lossy()));
            let text = read_file(path)?;
            let graph = formats::read(&text, format).map_err(|msg| CliError::Input {
                path: path.clone(),
                msg,
            })?;
            return Ok(Source::File(graph));
        }
        let group = GroupArgs {
            p: require(self.p, "p")?,
            alpha: require(self.alpha, "alpha")?,
            beta: require(self.beta, "beta")?,
            gamma: require(self.gamma, "gamma")?,
        }
        .params()?;
        if let Some(s) = &self.s {
            let set = parse_set(s)?;
            let spec = BiCayleySpec::bipartite(group, set).map_err(bicay_core::Error::from)?;
            return Ok(Source::BiCayley(BiCayleyGraph::build(spec)));
        }
        let hp = HavtArgs {
            group: GroupArgs {
                p: group.p(),
                alpha: group.alpha(),
                beta: group.beta(),
                gamma: group.gamma(),
            },
            m: require(self.m, "m")?,
            k: require(self.k, "k")?,
            l: require(self.l, "l")?,
            sign: require(self.sign, "sign")?,
        }
        .params()?;
        let c = havt::construct_havt(hp).map_err(bicay_core::Error::from)?;
        Ok(Source::BiCayley(c.graph))
    }
}

fn parse_set(s: &str) -> Result<Vec<GroupElem>, CliError> {
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let (j, i) = tok
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("--s entry {tok:?} is not j:i")))?;
            let num = |x: &str| {
                x.trim()
                    .parse::<u64>()
                    .map_err(|_| CliError::Usage(format!("--s entry {tok:?} is not j:i")))
            };
            Ok(GroupElem::new(num(j)?, num(i)?))
        })
        .collect()
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(bicay_core::Error),
    File { path: PathBuf, msg: String },
    Input { path: PathBuf, msg: String },
    Write(std::io::Error),
    VerifyFailed(usize),
}

impl From<bicay_core::Error> for CliError {
    fn from(e: bicay_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Write(e)
    }
}

impl CliError {
    fn name(&self) -> String {
        match self {
            CliError::Usage(_) => "cli::Usage".into(),
            CliError::Core(e) => e.name(),
            CliError::File { .. } => "cli::FileError".into(),
            CliError::Input { .. } => "cli::InputError".into(),
            CliError::Write(_) => "cli::WriteError".into(),
            CliError::VerifyFailed(_) => "verify::Failed".into(),
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(msg) => msg.clone(),
            CliError::Core(e) => e.to_string(),
            CliError::File { path, msg } => format!("{}: {msg}", path.display()),
            CliError::Input { path, msg } => format!("{}: {msg}", path.display()),
            CliError::Write(e) => e.to_string(),
            CliError::VerifyFailed(n) => format!("{n} checks failed"),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::File {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })
}

fn emit(out: &mut dyn Write, target: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match target {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::File {
            path: path.clone(),
            msg: e.to_string(),
        }),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn encode(graph: &Graph, labels: &[String], format: Format) -> Result<String, CliError> {
    match format {
        Format::Edgelist => Ok(formats::write_edgelist(graph)),
        Format::Graph6 => formats::write_graph6(graph)
            .map(|s| s + "\n")
            .map_err(CliError::Usage),
        Format::Dot => Ok(formats::write_dot(graph, labels)),
    }
}

fn automorphisms(graph: &Graph, limits: &Limits) -> Result<PermGroup, CliError> {
    Ok(symmetry::automorphism_group(graph, limits).map_err(bicay_core::Error::from)?)
}

/// Runs the command line in `args` (program name first); returns the exit
/// code: 0 on success, 1 on a domain error, 2 on a usage error.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match run(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {}", e.name(), e.message());
            match e {
                CliError::Usage(_) => 2,
                _ => 1,
            }
        }
    }
}

fn run(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    let limits = Limits::from_env()?;
    match command {
        Command::Construct {
            havt: args,
            format,
            out: target,
            catalog,
        } => {
            let hp = args.params()?;
            let c = havt::construct_havt(hp).map_err(bicay_core::Error::from)?;
            let text = encode(c.graph.graph(), &bicayley_labels(&c.graph), format)?;
            emit(out, &target, &text)?;
            if let Some(path) = catalog {
                let aut = automorphisms(c.graph.graph(), &limits)?;
                let report = symmetry::report_for(c.graph.graph(), &aut);
                let record = CatalogRecord {
                    p: hp.params().p(),
                    alpha: hp.params().alpha(),
                    beta: hp.params().beta(),
                    gamma: hp.params().gamma(),
                    m: hp.m(),
                    k: hp.k(),
                    l: hp.l(),
                    sign: hp.sign().to_string(),
                    n: c.n.value(),
                    vertices: c.graph.vertex_count(),
                    valency: 2 * hp.k() as usize,
                    aut_order: report.aut_order.to_string(),
                    label: report.label.to_string(),
                    timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
                };
                catalog::append(&path, &record).map_err(|e| CliError::File {
                    path: path.clone(),
                    msg: e.to_string(),
                })?;
            }
        }
        Command::SolveEq3 {
            p,
            alpha,
            beta,
            gamma,
            m,
            k,
            l,
        } => {
            let beta = beta.unwrap_or(alpha.saturating_sub(gamma));
            let params = GroupParams::new(p, alpha, beta, gamma).map_err(bicay_core::Error::from)?;
            match havt::solve_eq3(params, m, k, l).map_err(bicay_core::Error::from)? {
                None => writeln!(out, "no solution")?,
                Some(s) => {
                    writeln!(out, "u {}", s.u.value())?;
                    writeln!(out, "plus {}", s.plus.value())?;
                    writeln!(out, "minus {}", s.minus.value())?;
                }
            }
        }
        Command::Classify { source } => {
            let source = source.resolve()?;
            let graph = source.graph();
            let aut = automorphisms(graph, &limits)?;
            let r = symmetry::report_for(graph, &aut);
            writeln!(out, "vertices {}", graph.vertex_count())?;
            writeln!(out, "edges {}", graph.edge_count())?;
            writeln!(out, "vertex-transitive {}", r.vertex_transitive)?;
            writeln!(out, "edge-transitive {}", r.edge_transitive)?;
            writeln!(out, "arc-transitive {}", r.arc_transitive)?;
            writeln!(out, "label {}", r.label)?;
            writeln!(out, "aut-order {}", r.aut_order)?;
            writeln!(out, "stabilizer-order {}", r.stabilizer_order)?;
            writeln!(out, "stabilizer-cyclic {}", r.stabilizer_is_cyclic)?;
            if let Source::BiCayley(bc) = &source {
                writeln!(out, "sylow-condition {}", symmetry::sylow_condition_holds(bc, &aut))?;
                let normal = symmetry::is_normal_subgroup(&bc.hat_group(), &aut).map_err(bicay_core::Error::from)?;
                writeln!(out, "hat-g-normal {normal}")?;
            }
        }
        Command::Aut { source } => {
            let source = source.resolve()?;
            let aut = automorphisms(source.graph(), &limits)?;
            writeln!(out, "order {}", aut.order())?;
            let base: Vec<String> = aut.base().iter().map(|b| b.to_string()).collect();
            writeln!(out, "base {}", base.join(" "))?;
            for g in aut.generators() {
                writeln!(out, "{g}")?;
            }
        }
        Command::Normalizer { source } => {
            let Source::BiCayley(bc) = source.resolve()? else {
                return Err(CliError::Usage("normalizer needs group parameters, not --in".into()));
            };
            let f = bc.compute_f(&limits).map_err(bicay_core::Error::from)?;
            let i = bc.compute_i(&limits).map_err(bicay_core::Error::from)?;
            let n = bc.normalizer_decomposition(&limits).map_err(bicay_core::Error::from)?;
            writeln!(out, "F-order {}", f.group.order())?;
            writeln!(out, "I-size {}", i.len())?;
            writeln!(out, "normalizer-order {}", n.order())?;
            let aut = automorphisms(bc.graph(), &limits)?;
            match bc.brute_force_normalizer(&aut, &limits) {
                Some(brute) => writeln!(out, "matches-brute-force {}", brute.same_group(&n))?,
                None => writeln!(out, "matches-brute-force skipped (|Aut| = {})", aut.order())?,
            }
        }
        Command::EnumerateParams { p, max_order, instances } => match instances {
            Some(max_vertices) => {
                for hp in havt::constructible_instances(max_vertices).into_iter().filter(|hp| hp.params().p() == p) {
                    let g = hp.params();
                    writeln!(
                        out,
                        "p={} alpha={} beta={} gamma={} m={} k={} l={} sign={} vertices={}",
                        g.p(),
                        g.alpha(),
                        g.beta(),
                        g.gamma(),
                        hp.m(),
                        hp.k(),
                        hp.l(),
                        hp.sign(),
                        2 * g.order()
                    )?;
                }
            }
            None => {
                if !bicay_core::residue::is_prime(p) || p < 3 {
                    return Err(CliError::Core(
                        bicay_core::ResidueError::NotAnOddPrime(p).into(),
                    ));
                }
                for g in GroupParams::enumerate(p, max_order) {
                    writeln!(
                        out,
                        "p={} alpha={} beta={} gamma={} order={} aut-order={}",
                        g.p(),
                        g.alpha(),
                        g.beta(),
                        g.gamma(),
                        g.order(),
                        g.aut_order_formula()
                    )?;
                }
            }
        },
        Command::Survey { group, max_size } => {
            let params = group.params()?;
            let report = symmetry::survey_small_connection_sets(params, max_size, &limits)
                .map_err(bicay_core::Error::from)?;
            writeln!(out, "generating-sets {}", report.generating_sets)?;
            writeln!(out, "classes {}", report.classes.len())?;
            for class in &report.classes {
                let s: Vec<String> = class.s.iter().map(|x| x.to_string()).collect();
                writeln!(
                    out,
                    "S={{{}}} label={} aut-order={} locally-transitive={}",
                    s.join(","),
                    class.label,
                    class.aut_order,
                    class.locally_transitive
                )?;
            }
            writeln!(out, "locally-transitive-hits {}", report.locally_transitive_hits().len())?;
        }
        Command::Verify { suite, small } => {
            let outcomes = verify::run_suite(&suite, small, &limits)?;
            for o in &outcomes {
                writeln!(out, "{o}")?;
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            writeln!(out, "{} checks, {failed} failed", outcomes.len())?;
            if failed > 0 {
                return Err(CliError::VerifyFailed(failed));
            }
        }
        Command::Export {
            source,
            format,
            out: target,
        } => {
            let source = source.resolve()?;
            let text = encode(source.graph(), &source.labels(), format)?;
            emit(out, &target, &text)?;
        }
    }
    Ok(())
}
