use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use qdw_core::cauchy::{cauchy_completion, is_cauchy_complete, l_closure};
use qdw_core::docs::{parse_documents, DocError, Document, Workspace};
use qdw_core::duality::dual_object;
use qdw_core::priestley::{is_priestley, reflect_pi0};
use qdw_core::verify::{run_suite, Config, Suite, SuiteReport};
use qdw_core::{Error, VCat, DEFAULT_BUDGET};

mod exit {
    pub const FAILURE: u8 = 1;
    pub const SEARCH_SPACE: u8 = 2;
    pub const PARSE: u8 = 3;
    pub const UNKNOWN_QUANTALE: u8 = 4;
    pub const IO: u8 = 5;
    pub const DUPLICATE: u8 = 6;
    pub const INVALID_DOCUMENT: u8 = 7;
    pub const OTHER: u8 = 8;
    pub const USAGE: u8 = 64;
}

#[derive(Parser, Debug)]
#[command(name = "qdw", version, about = "Finite quantale-enriched categories and their duals")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest search space any enumeration may visit.
    #[arg(long, global = true, env = "QDW_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Caps the number of points of generated instances.
    #[arg(long, global = true)]
    max_size: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate quantale, vcat and poset documents.
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Report whether a V-category is Priestley.
    Priestley(Target),
    /// The Priestley reflection of a V-category.
    Reflect(Target),
    /// The dual object CX.
    Dualize(Target),
    /// The Cauchy completion.
    Complete(Target),
    /// The L-closure of a set of points.
    Closure {
        #[command(flatten)]
        target: Target,
        /// Points, by label or index, separated by commas.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        subset: Vec<String>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
    },
}

#[derive(clap::Args, Debug)]
struct Target {
    /// Files to load; quantales may live in separate files.
    #[arg(required = true)]
    paths: Vec<PathBuf>,
    /// The V-category to use when more than one is loaded.
    #[arg(long)]
    name: Option<String>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

#[derive(Debug)]
enum CliError {
    Io(PathBuf, std::io::Error),
    Doc(DocError),
    Core(Error),
    Usage(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(..) => exit::IO,
            CliError::Doc(DocError::Parse { .. } | DocError::Schema { .. }) => exit::PARSE,
            CliError::Doc(DocError::UnknownQuantaleRef { .. }) => exit::UNKNOWN_QUANTALE,
            CliError::Doc(DocError::DuplicateName { .. }) => exit::DUPLICATE,
            CliError::Doc(DocError::Invalid { .. }) => exit::INVALID_DOCUMENT,
            CliError::Core(Error::SearchSpaceTooLarge { .. }) => exit::SEARCH_SPACE,
            CliError::Core(_) => exit::OTHER,
            CliError::Usage(_) => exit::USAGE,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Io(..) => "io",
            CliError::Doc(DocError::Parse { .. }) => "parse",
            CliError::Doc(DocError::Schema { .. }) => "schema",
            CliError::Doc(DocError::UnknownQuantaleRef { .. }) => "unknown_quantale_ref",
            CliError::Doc(DocError::DuplicateName { .. }) => "duplicate_name",
            CliError::Doc(DocError::Invalid { .. }) => "invalid_document",
            CliError::Core(Error::SearchSpaceTooLarge { .. }) => "search_space_too_large",
            CliError::Core(_) => "error",
            CliError::Usage(_) => "usage",
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Doc(e) => e.fmt(f),
            CliError::Core(e) => e.fmt(f),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        CliError::Doc(e)
    }
}

/// What a command prints, and whether it counts as success.
struct Report {
    json: Value,
    text: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(exit::USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(report) => {
            emit(cli.format, &report.json, &report.text);
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(exit::FAILURE)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Json => println!("{}", pretty(&json!({ "error": e.kind(), "message": e.to_string() }))),
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(e.code())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn emit(format: Format, json: &Value, text: &str) {
    match format {
        Format::Json => println!("{}", pretty(json)),
        Format::Text => print!("{text}"),
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let budget = cli.budget;
    match &cli.command {
        Command::Check { paths } => check(paths),
        Command::Priestley(t) => {
            let x = load_target(t)?;
            let r = is_priestley(&x, budget)?;
            let text = format!(
                "priestley: {}\npoint separating: {}\ninitial: {}\ncone size: {}\n",
                r.holds(),
                r.point_separating,
                r.initial,
                r.cone_size
            );
            Ok(Report {
                json: json!({ "vcat": x.name(), "priestley": r.holds(), "report": r }),
                text,
                ok: true,
            })
        }
        Command::Reflect(t) => {
            let x = load_target(t)?;
            let r = reflect_pi0(&x, budget)?;
            let classes: Vec<Vec<&str>> = (0..r.space.size())
                .map(|c| {
                    x.points()
                        .filter(|&p| r.quotient.apply(p) == c)
                        .map(|p| x.labels()[p].as_str())
                        .collect()
                })
                .collect();
            let mut text = format!("reflection: {} point(s)\n", r.space.size());
            for (c, members) in classes.iter().enumerate() {
                let _ = writeln!(text, "  {}: {}", r.space.labels()[c], members.join(" "));
            }
            text.push_str(&matrix_text(&r.space));
            Ok(Report {
                json: json!({
                    "vcat": x.name(),
                    "points": r.space.size(),
                    "classes": classes,
                    "quotient": r.quotient.map(),
                    "a": labelled_matrix(&r.space),
                }),
                text,
                ok: true,
            })
        }
        Command::Dualize(t) => {
            let x = load_target(t)?;
            let cx = dual_object(&x, budget)?;
            let q = x.quantale();
            let carrier: Vec<Vec<&str>> = cx
                .carrier()
                .iter()
                .map(|phi| phi.iter().map(|&u| q.label(u)).collect())
                .collect();
            let labels: Vec<String> = (0..carrier.len()).map(|i| cx.label(i)).collect();
            let text = format!(
                "C{} has {} element(s), the functors {} -> V^op:\n  {}\n{}",
                x.name(),
                labels.len(),
                x.name(),
                labels.join(" "),
                matrix_text(&cx.as_vcat())
            );
            Ok(Report {
                json: json!({
                    "vcat": x.name(),
                    "points": x.labels(),
                    "size": carrier.len(),
                    "carrier": carrier,
                    "structure": labelled_matrix(&cx.as_vcat()),
                }),
                text,
                ok: true,
            })
        }
        Command::Complete(t) => {
            let x = load_target(t)?;
            let c = cauchy_completion(&x, budget)?;
            let complete = is_cauchy_complete(&x, budget)?;
            let text = format!(
                "adjoint pairs: {}\ncauchy complete: {complete}\nyoneda: {:?}\n{}",
                c.pairs.len(),
                c.yoneda.map(),
                matrix_text(&c.space)
            );
            Ok(Report {
                json: json!({
                    "vcat": x.name(),
                    "adjoint_pairs": c.pairs,
                    "cauchy_complete": complete,
                    "yoneda": c.yoneda.map(),
                    "a": labelled_matrix(&c.space),
                }),
                text,
                ok: true,
            })
        }
        Command::Closure { target, subset } => {
            let x = load_target(target)?;
            let points = resolve_points(&x, subset)?;
            let closed = l_closure(&x, &points, budget)?;
            let names = |ps: &[usize]| ps.iter().map(|&p| x.labels()[p].clone()).collect::<Vec<_>>();
            let dense = closed.len() == x.size();
            let text = format!(
                "subset: {{{}}}\nclosure: {{{}}}\ndense: {dense}\n",
                names(&points).join(", "),
                names(&closed).join(", ")
            );
            Ok(Report {
                json: json!({ "vcat": x.name(), "subset": names(&points), "closure": names(&closed), "dense": dense }),
                text,
                ok: true,
            })
        }
        Command::Verify { suite } => {
            let cfg = Config {
                seed: cli.seed,
                max_size: cli.max_size,
                budget,
            };
            let report = run_suite(*suite, &cfg);
            Ok(Report {
                json: serde_json::to_value(&report).expect("report serializes"),
                text: verify_text(&report),
                ok: report.all_passed(),
            })
        }
    }
}

fn verify_text(r: &SuiteReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let tag = match c.criterion {
            Some(n) => format!("{n:>2}"),
            None => " -".into(),
        };
        let status = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "[{status}] {tag} {:<22} {:>7} instances  {:>8.2?}  {}",
            c.name, c.instances, c.runtime, c.detail
        );
        if let Some(w) = &c.witness {
            let _ = writeln!(out, "        witness: {w}");
        }
    }
    let _ = writeln!(out, "{} passed, {} failed", r.passed, r.failed);
    out
}

fn read(path: &PathBuf) -> Result<Vec<Document>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e))?;
    Ok(parse_documents(&text, &path.display().to_string())?)
}

#[derive(Serialize)]
struct DocStatus {
    file: String,
    kind: &'static str,
    name: String,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn check(paths: &[PathBuf]) -> Result<Report, CliError> {
    let mut docs = Vec::new();
    let mut files = Vec::new();
    for p in paths {
        for d in read(p)? {
            files.push(p.display().to_string());
            docs.push(d);
        }
    }
    let mut ws = Workspace::default();
    let results = ws.add(&docs);
    if let Some(e) = results.iter().find_map(|r| {
        r.as_ref()
            .err()
            .filter(|e| matches!(e, DocError::UnknownQuantaleRef { .. }))
    }) {
        return Err(CliError::Doc(e.clone()));
    }
    let statuses: Vec<DocStatus> = docs
        .iter()
        .zip(&results)
        .zip(files)
        .map(|((d, r), file)| DocStatus {
            file,
            kind: d.kind(),
            name: d.name().to_string(),
            valid: r.is_ok(),
            error: r.as_ref().err().map(ToString::to_string),
        })
        .collect();
    let ok = statuses.iter().all(|s| s.valid);
    let mut text = String::new();
    for s in &statuses {
        match &s.error {
            None => {
                let _ = writeln!(text, "ok    {} {} ({})", s.kind, s.name, s.file);
            }
            Some(e) => {
                let _ = writeln!(text, "FAIL  {} {} ({}): {e}", s.kind, s.name, s.file);
            }
        }
    }
    let invalid = statuses.iter().filter(|s| !s.valid).count();
    let _ = writeln!(text, "{} document(s), {invalid} invalid", statuses.len());
    Ok(Report {
        json: json!({ "valid": ok, "documents": statuses }),
        text,
        ok,
    })
}

fn load_target(t: &Target) -> Result<VCat, CliError> {
    let mut docs = Vec::new();
    for p in &t.paths {
        docs.extend(read(p)?);
    }
    let mut ws = Workspace::default();
    for r in ws.add(&docs) {
        r?;
    }
    match &t.name {
        Some(n) => ws
            .vcats
            .get(n)
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("no vcat named `{n}`"))),
        None if ws.vcats.len() == 1 => Ok(ws.vcats.into_values().next().expect("one vcat")),
        None if ws.vcats.is_empty() => Err(CliError::Usage("no vcat document given".into())),
        None => Err(CliError::Usage(format!(
            "several vcats loaded ({}); pick one with --name",
            ws.vcats.keys().cloned().collect::<Vec<_>>().join(", ")
        ))),
    }
}

fn resolve_points(x: &VCat, names: &[String]) -> Result<Vec<usize>, CliError> {
    let mut out: Vec<usize> = names
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| {
            x.labels()
                .iter()
                .position(|l| l == s)
                .or_else(|| s.parse().ok().filter(|&i| i < x.size()))
                .ok_or_else(|| CliError::Usage(format!("`{s}` is not a point of {}", x.name())))
        })
        .collect::<Result<_, _>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn labelled_matrix(x: &VCat) -> Vec<Vec<String>> {
    let q = x.quantale();
    x.points()
        .map(|s| x.points().map(|t| q.label(x.a(s, t)).to_string()).collect())
        .collect()
}

fn matrix_text(x: &VCat) -> String {
    let rows = labelled_matrix(x);
    let width = rows
        .iter()
        .flatten()
        .chain(x.labels())
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1);
    let mut out = format!("{:>width$} |", "");
    for l in x.labels() {
        let _ = write!(out, " {l:>width$}");
    }
    out.push('\n');
    for (l, row) in x.labels().iter().zip(&rows) {
        let _ = write!(out, "{l:>width$} |");
        for v in row {
            let _ = write!(out, " {v:>width$}");
        }
        out.push('\n');
    }
    out
}
