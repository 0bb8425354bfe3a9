//! The `eci` command line.
//!
//! [`run`] takes its arguments and streams explicitly so the binary and
//! the tests drive exactly the same code. Output is assembled in memory and
//! written once, so error paths never leave a partial report behind.
//!
//! Exit codes: 0 success, 1 a lower-bound violation in the asserted range
//! (or a closed-form mismatch), 2 unusable input or parameters, 3 a
//! disconnected graph.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::enumerate::{verify_bound, SweepConfig, VerificationReport};
use crate::error::Error;
use crate::families::{Family, FamilySpec};
use crate::graph::{find_diametral_path, profile, Graph};
use crate::indices::{eci, eci_from_profile, eci_path_closed_form, eci_volcano_closed_form};
use crate::io::{parse_graph, to_edge_list, to_graph6, Format};
use crate::structure::{
    build_chain, check_chain_deltas, check_lemma1, check_lemma2, partition, partition_lower_bound,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DISCONNECTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "eci", version, about = "Eccentric connectivity index toolkit")]
struct Cli {
    /// Emit machine-readable JSON instead of aligned tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Degree, eccentricity and index of one graph.
    Compute(InputArgs),
    /// Build a member of a graph family.
    Family(FamilyArgs),
    /// Exhaustively check the volcano lower bound.
    Verify(VerifyArgs),
    /// Incremental induced-subgraph chain from a diametral path.
    Chain(InputArgs),
    /// Vertex partition relative to the default diametral path.
    Partition(InputArgs),
    /// Minimum-eccentricity lemma checks.
    Lemmas(InputArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InputFormat {
    Auto,
    Graph6,
    Edgelist,
}

impl From<InputFormat> for Format {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::Auto => Format::Auto,
            InputFormat::Graph6 => Format::Graph6,
            InputFormat::Edgelist => Format::EdgeList,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Graph6,
    Edgelist,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Path,
    Volcano,
    Broom,
    Lollipop,
    Star,
    Cycle,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Path => Family::Path,
            FamilyArg::Volcano => Family::Volcano,
            FamilyArg::Broom => Family::Broom,
            FamilyArg::Lollipop => Family::Lollipop,
            FamilyArg::Star => Family::Star,
            FamilyArg::Cycle => Family::Cycle,
        }
    }
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Input file; standard input when absent or `-`.
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    format: InputFormat,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(value_enum)]
    family: FamilyArg,
    #[arg(short = 'n')]
    n: usize,
    #[arg(short = 'd')]
    d: Option<usize>,
    /// Pendants on the lower and upper center of an odd-diameter volcano.
    #[arg(long, value_parser = parse_split)]
    split: Option<(usize, usize)>,
    /// Also print the index, next to the closed form where one exists.
    #[arg(long)]
    eci: bool,
    #[arg(long = "output-format", value_enum, default_value_t = OutputFormat::Graph6)]
    output_format: OutputFormat,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(short = 'n')]
    n: usize,
    /// Restrict the sweep to one diameter.
    #[arg(short = 'd')]
    d: Option<usize>,
    /// Sweep free trees instead of all connected graphs.
    #[arg(long)]
    trees: bool,
    /// Sweep isomorphism classes instead of labeled graphs.
    #[arg(long)]
    dedup: bool,
    #[arg(long, env = "ECI_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Write every equality witness to this file as graph6 lines.
    #[arg(long = "witness-out")]
    witness_out: Option<PathBuf>,
}

fn parse_split(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `a,b`, got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// A finished command: what to print and how to exit.
struct Outcome {
    stdout: String,
    code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            code: EXIT_OK,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(msg) if msg.contains("disconnected") => EXIT_DISCONNECTED,
        _ => EXIT_USAGE,
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, stdin) {
        Ok(out) => {
            let _ = stdout.write_all(out.stdout.as_bytes());
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Compute(input) => cmd_compute(&read_graph(input, stdin)?, cli.json),
        Command::Family(args) => cmd_family(args, cli.json),
        Command::Verify(args) => cmd_verify(args, cli.json),
        Command::Chain(input) => cmd_chain(&read_graph(input, stdin)?, cli.json),
        Command::Partition(input) => cmd_partition(&read_graph(input, stdin)?, cli.json),
        Command::Lemmas(input) => cmd_lemmas(&read_graph(input, stdin)?, cli.json),
    }
}

fn read_graph(input: &InputArgs, stdin: &mut dyn Read) -> Result<Graph, Error> {
    let text = match &input.input {
        Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?,
        _ => {
            let mut buf = String::new();
            stdin
                .read_to_string(&mut buf)
                .map_err(|e| Error::Input(format!("cannot read standard input: {e}")))?;
            buf
        }
    };
    parse_graph(&text, input.format.into())
}

fn json_line(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn cmd_compute(g: &Graph, as_json: bool) -> Result<Outcome, Error> {
    let p = profile(g)?;
    let index = eci(g)?;
    if as_json {
        let vertices: Vec<_> = (0..g.order())
            .map(|v| json!({"vertex": v, "degree": p.degree[v], "eccentricity": p.eccentricity[v]}))
            .collect();
        return Ok(Outcome::ok(json_line(json!({
            "n": g.order(),
            "m": g.size(),
            "diameter": p.diameter,
            "radius": p.radius,
            "center": p.center,
            "eci": index,
            "vertices": vertices,
        }))));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "n {}  m {}  diameter {}  radius {}  eci {}",
        g.order(),
        g.size(),
        p.diameter,
        p.radius,
        index
    );
    let _ = writeln!(out, "center {:?}", p.center);
    let _ = writeln!(
        out,
        "{:>6} {:>6} {:>12}",
        "vertex", "degree", "eccentricity"
    );
    for v in 0..g.order() {
        let _ = writeln!(out, "{:>6} {:>6} {:>12}", v, p.degree[v], p.eccentricity[v]);
    }
    Ok(Outcome::ok(out))
}

fn cmd_family(args: &FamilyArgs, as_json: bool) -> Result<Outcome, Error> {
    let spec = FamilySpec {
        family: args.family.into(),
        n: args.n,
        d: args.d,
        split: args.split,
    };
    let g = spec.build()?;
    let serialized = match args.output_format {
        OutputFormat::Graph6 => format!("{}\n", to_graph6(&g)),
        OutputFormat::Edgelist => to_edge_list(&g),
    };
    let (index, closed) = if args.eci {
        let index = eci(&g)?;
        let closed = match spec.family {
            Family::Path => Some(eci_path_closed_form(args.n as u64)?),
            Family::Volcano => Some(eci_volcano_closed_form(
                args.n as u64,
                args.d.unwrap_or(0) as u64,
            )?),
            _ => None,
        };
        (Some(index), closed)
    } else {
        (None, None)
    };
    let code = match (index, closed) {
        (Some(a), Some(b)) if a != b => EXIT_VIOLATION,
        _ => EXIT_OK,
    };
    let stdout = if as_json {
        json_line(json!({
            "spec": spec,
            "graph": serialized.trim_end(),
            "eci": index,
            "closed_form": closed,
        }))
    } else {
        let mut out = serialized;
        if let Some(index) = index {
            let _ = writeln!(out, "eci {index}");
        }
        if let Some(closed) = closed {
            let _ = writeln!(out, "closed_form {closed}");
        }
        out
    };
    Ok(Outcome { stdout, code })
}

fn render_report(report: &VerificationReport, config: &SweepConfig) -> String {
    let mut out = String::new();
    let kind = if config.trees_only {
        "free trees"
    } else if config.dedup {
        "isomorphism classes"
    } else {
        "labeled graphs"
    };
    let _ = writeln!(
        out,
        "order {}  sweep {}  workers {}",
        report.order, kind, config.workers
    );
    let _ = writeln!(
        out,
        "{:>3} {:>9} {:>8} {:>8} {:>8} {:>10} {:>9} {:>11}  status",
        "d", "graphs", "classes", "min_eci", "volcano", "violations", "witnesses", "all_volcano"
    );
    for b in &report.buckets {
        let status = match (b.asserted, b.violating_graphs) {
            (true, 0) => "ok",
            (true, _) => "VIOLATION",
            (false, 0) => "report-only: holds",
            (false, _) => "report-only: fails",
        };
        let classes = b
            .isomorphism_classes
            .map_or_else(|| "-".to_string(), |c| c.to_string());
        let _ = writeln!(
            out,
            "{:>3} {:>9} {:>8} {:>8} {:>8} {:>10} {:>9} {:>11}  {}",
            b.diameter,
            b.graphs_checked,
            classes,
            b.min_eci,
            b.volcano_eci,
            b.violating_graphs,
            b.equality_witnesses.len(),
            b.equality_all_volcano,
            status
        );
    }
    for b in &report.buckets {
        if let Some(note) = &b.note {
            let verdict = if b.violating_graphs == 0 {
                "holds"
            } else {
                "fails"
            };
            let _ = writeln!(
                out,
                "finding d = {}: bound {verdict} (min_eci {} vs volcano {}); {note}",
                b.diameter, b.min_eci, b.volcano_eci
            );
        }
        for v in &b.violations {
            let _ = writeln!(out, "violation d = {}: {v}", b.diameter);
        }
    }
    if report.buckets.is_empty() {
        let _ = writeln!(out, "no graphs in the requested diameter range");
    }
    let verdict = if report.passed() {
        "no violations for d >= 3"
    } else {
        "VIOLATIONS FOUND for d >= 3"
    };
    let _ = writeln!(out, "verdict: {verdict}");
    out
}

fn cmd_verify(args: &VerifyArgs, as_json: bool) -> Result<Outcome, Error> {
    let config = SweepConfig {
        order: args.n,
        diameter_filter: args.d.map(|d| (d, d)),
        dedup: args.dedup,
        trees_only: args.trees,
        workers: args.workers,
    };
    let report = verify_bound(&config)?;
    if let Some(path) = &args.witness_out {
        let lines: String = report
            .buckets
            .iter()
            .flat_map(|b| b.equality_witnesses.iter())
            .map(|w| format!("{w}\n"))
            .collect();
        std::fs::write(path, lines)
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    let stdout = if as_json {
        json_line(json!({"config": config, "report": report, "passed": report.passed()}))
    } else {
        render_report(&report, &config)
    };
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    Ok(Outcome { stdout, code })
}

fn cmd_chain(g: &Graph, as_json: bool) -> Result<Outcome, Error> {
    let d = profile(g)?.diameter;
    let chain = build_chain(g)?;
    let report = check_chain_deltas(&chain, d)?;
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    if as_json {
        return Ok(Outcome {
            stdout: json_line(json!({"steps": chain, "check": report})),
            code,
        });
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>4} {:>5} {:>5} {:>8} {:>6} {:>7} {:>6} {:>8}",
        "step", "added", "order", "diameter", "eci", "volcano", "delta", "floor_ok"
    );
    for s in &chain {
        let added = s.added_vertex.map_or_else(|| "-".into(), |v| v.to_string());
        let delta = s.delta.map_or_else(|| "-".into(), |x| x.to_string());
        let floor_ok = match s.delta {
            Some(x) => (x >= report.floor).to_string(),
            None => "-".into(),
        };
        let _ = writeln!(
            out,
            "{:>4} {:>5} {:>5} {:>8} {:>6} {:>7} {:>6} {:>8}",
            s.step_index,
            added,
            s.subgraph_order,
            s.subgraph_diameter,
            s.subgraph_eci,
            s.volcano_reference,
            delta,
            floor_ok
        );
    }
    let _ = writeln!(
        out,
        "final: eci {} vs volcano {} (d = {}): {}{}",
        report.final_eci,
        report.final_reference,
        d,
        if report.final_holds { "holds" } else { "fails" },
        if report.asserted {
            ""
        } else {
            " (report-only, d < 3)"
        }
    );
    Ok(Outcome { stdout: out, code })
}

fn cmd_partition(g: &Graph, as_json: bool) -> Result<Outcome, Error> {
    let p = profile(g)?;
    let path = find_diametral_path(g)?;
    let part = partition(g, &path)?;
    let index = eci_from_profile(&p);
    let bound = if p.diameter >= 3 {
        Some(partition_lower_bound(&part)?)
    } else {
        None
    };
    let volcano = if p.diameter >= 2 {
        Some(eci_volcano_closed_form(
            g.order() as u64,
            p.diameter as u64,
        )?)
    } else {
        None
    };
    let code = match bound {
        Some(b) if index < b => EXIT_VIOLATION,
        _ => EXIT_OK,
    };
    if as_json {
        return Ok(Outcome {
            stdout: json_line(json!({
                "partition": part,
                "identities_hold": part.identities_hold(),
                "eci": index,
                "partition_bound": bound,
                "volcano_eci": volcano,
            })),
            code,
        });
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "diametral path {:?}  d = {}",
        path.vertices(),
        p.diameter
    );
    let _ = writeln!(out, "{:>6} {:>12}  class", "vertex", "eccentricity");
    for v in 0..g.order() {
        let _ = writeln!(
            out,
            "{:>6} {:>12}  {}",
            v,
            p.eccentricity[v],
            part.classes[v].label()
        );
    }
    let c = part.counts;
    let _ = writeln!(
        out,
        "n1 {}  n2 {}  n11 {}  n12 {}  n21 {}  n22 {}  identities {}",
        c.n1,
        c.n2,
        c.n11,
        c.n12,
        c.n21,
        c.n22,
        if part.identities_hold() {
            "hold"
        } else {
            "FAIL"
        }
    );
    let show =
        |x: Option<crate::indices::EciValue>| x.map_or_else(|| "n/a".into(), |v| v.to_string());
    let _ = writeln!(
        out,
        "eci {}  partition_bound {}  volcano {}",
        index,
        show(bound),
        show(volcano)
    );
    Ok(Outcome { stdout: out, code })
}

fn cmd_lemmas(g: &Graph, as_json: bool) -> Result<Outcome, Error> {
    let path = find_diametral_path(g)?;
    let lemma1 = check_lemma1(g, &path)?;
    let lemma2 = if lemma1.diameter >= 2 {
        Some(check_lemma2(g)?)
    } else {
        None
    };
    if as_json {
        return Ok(Outcome::ok(json_line(
            json!({"lemma1": lemma1, "lemma2": lemma2}),
        )));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "diametral path {:?}  d = {}",
        lemma1.path, lemma1.diameter
    );
    if lemma1.checks.is_empty() {
        let _ = writeln!(out, "lemma1: no off-path vertex has eccentricity ceil(d/2)");
    }
    for c in &lemma1.checks {
        let what = match &c.outcome {
            crate::structure::Lemma1Outcome::OnDiametralPath { witness } => {
                format!("on geodesic {witness:?}")
            }
            crate::structure::Lemma1Outcome::AdjacentToBothCenters => {
                "adjacent to both path centers".into()
            }
            crate::structure::Lemma1Outcome::Violation => "VIOLATION".into(),
        };
        let _ = writeln!(
            out,
            "lemma1: vertex {} (ecc {}): {}",
            c.vertex, c.eccentricity, what
        );
    }
    match &lemma2 {
        Some(r) => {
            let _ = writeln!(
                out,
                "lemma2: {} vertices of eccentricity ceil(d/2), violations {:?}",
                r.checked.len(),
                r.violations
            );
        }
        None => {
            let _ = writeln!(out, "lemma2: n/a (diameter < 2)");
        }
    }
    Ok(Outcome::ok(out))
}
