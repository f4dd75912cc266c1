//! The `equicoh` command surface.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use equicoh_core::deduce::DEFAULT_SEARCH_CAP;
use equicoh_core::{
    enumerate_cells, forgetful, multiply_ring, normal_form, restrict, run_filtration, Bidegree,
    DeduceOptions, DeductionReport, Error, FlagSymbol, FreeModule, GrassmannianDesc,
    ProjRingElement, SpaceId, Verdict, Window,
};
use serde::Serialize;

use crate::cache::Cache;
use crate::checks;
use crate::dsl::{parse_complex, ComplexDocument, Diagnostic, DiagnosticCode};
use crate::render::{degree_list, render, Format, RenderSpec, Renderable, SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(
    name = "equicoh",
    version,
    about = "Z/2-equivariant cohomology of Rep(Z/2)-complexes"
)]
pub struct Cli {
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Window as `pmin,pmax,qmin,qmax`.
    #[arg(long, global = true, value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Option<Window>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the Schubert cells of G_n(R^{p,q}) for one flag.
    Cells {
        n: u32,
        p: u32,
        q: u32,
        /// Flag symbol, e.g. `2,4`; defaults to (2,4,…,2q).
        #[arg(long)]
        flag: Option<String>,
        /// Print a `.eqc` document instead of a table.
        #[arg(long)]
        dsl: bool,
    },
    /// Render the E1 page (the free module on the cells).
    E1 {
        n: u32,
        p: u32,
        q: u32,
        #[arg(long)]
        flag: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        #[arg(long)]
        no_overlay: bool,
    },
    /// Run the cellular filtration of a `.eqc` file and render the result.
    Cohomology {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        #[arg(long)]
        no_overlay: bool,
        /// Print one line per attachment stage first.
        #[arg(long)]
        log: bool,
    },
    /// Intersect the admissible outcomes over flag symbols.
    Deduce {
        n: u32,
        p: u32,
        q: u32,
        /// Flag symbols to use, e.g. `--flags 2,3 2,4`; all by default.
        #[arg(long, num_args = 1..)]
        flags: Vec<String>,
        /// Attachment budget per flag.
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: usize,
        /// Write the JSON report here and print only the verdict.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
    },
    /// Arithmetic in the cohomology of projective spaces.
    Ring {
        /// s11, rptw<n>, rpinf or p41.
        space: String,
        #[command(flatten)]
        op: RingOp,
    },
    /// Run the built-in reproductions.
    Check,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct RingOp {
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_hyphen_values = true)]
    pub mul: Option<Vec<String>>,
    #[arg(long, value_name = "X")]
    pub forgetful: Option<String>,
    #[arg(long, value_name = "X")]
    pub normal: Option<String>,
    #[arg(long, num_args = 2, value_names = ["TO", "X"])]
    pub restrict: Option<Vec<String>>,
}

fn parse_window(s: &str) -> Result<Window, String> {
    let parts: Vec<i32> = s
        .split(',')
        .map(|x| x.trim().parse::<i32>().map_err(|e| format!("`{x}`: {e}")))
        .collect::<Result<_, _>>()?;
    let [p0, p1, q0, q1] = parts[..] else {
        return Err("expected pmin,pmax,qmin,qmax".into());
    };
    Window::new(p0, p1, q0, q1).map_err(|e| e.to_string())
}

pub fn parse_flag(s: &str, p: u32) -> Result<FlagSymbol, Error> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    let entries = if s.trim().is_empty() {
        Vec::new()
    } else {
        s.split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Argument(format!("flag entry `{x}`: {e}")))
            })
            .collect::<Result<_, _>>()?
    };
    FlagSymbol::new(entries, p)
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug)]
pub enum Failure {
    Diagnostics {
        source: String,
        diagnostics: Vec<Diagnostic>,
    },
    Core(Error),
    Io(String),
    /// `check` found failures; the report still goes to stdout.
    Checks(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(Error::SearchCap { .. }) => 2,
            _ => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Diagnostics {
                source,
                diagnostics,
            } => diagnostics
                .iter()
                .map(|d| format!("{source}:{d}\n"))
                .collect(),
            Failure::Core(e @ Error::SearchCap { .. }) => format!("error: {e}; raise --cap\n"),
            Failure::Core(e) => format!("error: {e}\n"),
            Failure::Io(e) => format!("error: {e}\n"),
            Failure::Checks(_) => "error: some checks failed\n".into(),
        }
    }
}

/// Runs a command on a pool of `cli.jobs` threads.
pub fn execute(cli: &Cli) -> Outcome {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                stderr: format!("error: thread pool: {e}\n"),
                code: 1,
                ..Outcome::default()
            }
        }
    };
    match pool.install(|| dispatch(cli)) {
        Ok(stdout) => Outcome {
            stdout,
            ..Outcome::default()
        },
        Err(f) => Outcome {
            stdout: match &f {
                Failure::Checks(report) => report.clone(),
                _ => String::new(),
            },
            stderr: f.message(),
            code: f.exit_code(),
        },
    }
}

fn dispatch(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Cells { n, p, q, flag, dsl } => cells(*n, *p, *q, flag.as_deref(), *dsl),
        Command::E1 {
            n,
            p,
            q,
            flag,
            format,
            no_overlay,
        } => e1(
            *n,
            *p,
            *q,
            flag.as_deref(),
            *format,
            !no_overlay,
            cli.window,
        ),
        Command::Cohomology {
            file,
            format,
            no_overlay,
            log,
        } => cohomology(file, *format, !no_overlay, *log, cli.window),
        Command::Deduce {
            n,
            p,
            q,
            flags,
            cap,
            out,
            no_cache,
        } => deduce(*n, *p, *q, flags, *cap, out.as_ref(), *no_cache, cli.window),
        Command::Ring { space, op } => ring(space, op),
        Command::Check => {
            let report = checks::run_all();
            let text: String = report.lines.iter().map(|l| format!("{l}\n")).collect();
            if report.failures == 0 {
                Ok(text)
            } else {
                Err(Failure::Checks(text))
            }
        }
    }
}

fn grassmannian(n: u32, p: u32, q: u32, flag: Option<&str>) -> Result<GrassmannianDesc, Error> {
    let f = match flag {
        Some(s) => parse_flag(s, p)?,
        None => FlagSymbol::alternating(q, p).map_err(|_| {
            Error::Argument(format!(
                "no default flag when 2q > p; pass --flag (q={q}, p={p})"
            ))
        })?,
    };
    GrassmannianDesc::new(n, p, q, f)
}

fn cells(n: u32, p: u32, q: u32, flag: Option<&str>, dsl: bool) -> Result<String, Failure> {
    let g = grassmannian(n, p, q, flag)?;
    let cells = enumerate_cells(&g);
    if dsl {
        let name = format!(
            "g{n}_r{p}_{q}_phi{}",
            g.flag
                .entries()
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join("_")
        );
        let degrees: Vec<Bidegree> = cells.iter().map(|c| c.degree).collect();
        return Ok(ComplexDocument::from_degrees(name, &degrees).to_string());
    }
    let mut out = format!(
        "G_{n}(R^{{{p},{q}}}) flag {}: {} cells\n",
        g.flag,
        cells.len()
    );
    let w = cells
        .iter()
        .map(|c| c.symbol.to_string().len())
        .max()
        .unwrap_or(0)
        .max("sigma".len());
    let _ = writeln!(out, "{:<w$}  bidegree", "sigma");
    for c in &cells {
        let _ = writeln!(out, "{:<w$}  {}", c.symbol.to_string(), c.degree);
    }
    Ok(out)
}

fn e1(
    n: u32,
    p: u32,
    q: u32,
    flag: Option<&str>,
    format: Format,
    overlay: bool,
    window: Option<Window>,
) -> Result<String, Failure> {
    let g = grassmannian(n, p, q, flag)?;
    let degrees: Vec<Bidegree> = enumerate_cells(&g).iter().map(|c| c.degree).collect();
    let m = FreeModule::from_degrees(degrees.iter().copied());
    let spec = RenderSpec {
        window: window.unwrap_or_else(|| Window::fitting(degrees.iter().copied(), 0)),
        format,
        overlay,
    };
    Ok(render(Renderable::Module(&m), &spec))
}

fn cohomology(
    file: &PathBuf,
    format: Format,
    overlay: bool,
    log: bool,
    window: Option<Window>,
) -> Result<String, Failure> {
    let source = file.display().to_string();
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Io(format!("{source}: {e}")))?;
    let doc = parse_complex(&text).map_err(|diagnostics| Failure::Diagnostics {
        source: source.clone(),
        diagnostics,
    })?;
    let (module, stages) = compute(&doc).map_err(|diagnostics| Failure::Diagnostics {
        source,
        diagnostics,
    })?;
    let spec = RenderSpec {
        window: window.unwrap_or_else(|| {
            let all = doc.cells.iter().map(|c| c.degree).chain(module.degrees());
            Window::fitting(all, 0)
        }),
        format,
        overlay,
    };
    let mut out = String::new();
    if log && format != Format::Json {
        out.push_str(&stages);
    }
    out.push_str(&render(Renderable::Module(&module), &spec));
    if matches!(format, Format::Ascii | Format::Table) {
        let _ = writeln!(out, "generators: {}", degree_list(&module.degrees()));
    }
    Ok(out)
}

/// Runs the filtration of a parsed document, reporting failures at the
/// offending cell.
pub fn compute(doc: &ComplexDocument) -> Result<(FreeModule, String), Vec<Diagnostic>> {
    let at = |line: usize, message: String| {
        vec![Diagnostic {
            code: DiagnosticCode::Attachment,
            line,
            column: 1,
            message,
        }]
    };
    let spec = doc.to_spec().map_err(|e| at(1, e.to_string()))?;
    let window = Window::fitting(spec.degrees(), 1);
    let f = run_filtration(&spec, window).map_err(|e| match e {
        Error::Stage { label, source, .. } => at(
            doc.cell_line(&label),
            format!("attaching `{label}`: {source}"),
        ),
        other => at(1, other.to_string()),
    })?;
    let mut log = String::new();
    for s in &f.log {
        let _ = writeln!(log, "stage {} {} {} {}", s.stage, s.label, s.cell, s.case);
    }
    Ok((f.module.sorted(), log))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct DeduceDocument<'a> {
    schema_version: u32,
    version: &'static str,
    cap: usize,
    #[serde(flatten)]
    report: &'a DeductionReport,
}

pub fn verdict_line(v: &Verdict) -> String {
    match v {
        Verdict::Determined { generators } => format!("Determined {}", degree_list(generators)),
        Verdict::Ambiguous { candidates } => format!("Ambiguous ({} candidates)", candidates.len()),
        Verdict::Inconsistent => "Inconsistent".into(),
    }
}

#[allow(clippy::too_many_arguments)]
fn deduce(
    n: u32,
    p: u32,
    q: u32,
    flags: &[String],
    cap: usize,
    out: Option<&PathBuf>,
    no_cache: bool,
    window: Option<Window>,
) -> Result<String, Failure> {
    let flags: Option<Vec<FlagSymbol>> = if flags.is_empty() {
        None
    } else {
        Some(
            flags
                .iter()
                .map(|f| parse_flag(f, p))
                .collect::<Result<_, _>>()?,
        )
    };
    let flag_key = flags.as_ref().map(|fs| {
        fs.iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    });
    let params = format!(
        "n={n} p={p} q={q} flags={} cap={cap} window={}",
        flag_key.as_deref().unwrap_or("all"),
        window.map_or("auto".to_string(), |w| w.to_string())
    );
    let cache = if no_cache { None } else { Cache::from_env() };
    let key = Cache::key("deduce", &params);

    let cached = cache
        .as_ref()
        .and_then(|c| c.get(&key))
        .and_then(|b| String::from_utf8(b).ok());
    let json = match cached {
        Some(j) => j,
        None => {
            let report = equicoh_core::deduce_with(n, p, q, &DeduceOptions { flags, window, cap })?;
            let doc = DeduceDocument {
                schema_version: SCHEMA_VERSION,
                version: env!("CARGO_PKG_VERSION"),
                cap,
                report: &report,
            };
            let mut j =
                serde_json::to_string_pretty(&doc).map_err(|e| Failure::Io(e.to_string()))?;
            j.push('\n');
            if let Some(c) = &cache {
                // A cache that cannot be written only costs time.
                let _ = c.put(&key, j.as_bytes());
            }
            j
        }
    };
    match out {
        None => Ok(json),
        Some(path) => {
            std::fs::write(path, &json)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            let mut v: serde_json::Value =
                serde_json::from_str(&json).map_err(|e| Failure::Io(e.to_string()))?;
            let verdict: Verdict = serde_json::from_value(v["verdict"].take())
                .map_err(|e| Failure::Io(format!("malformed report: {e}")))?;
            Ok(format!("verdict: {}\n", verdict_line(&verdict)))
        }
    }
}

fn ring(space: &str, op: &RingOp) -> Result<String, Failure> {
    let space: SpaceId = space.parse()?;
    let parse = |s: &str| ProjRingElement::parse(space, s);
    let result = if let Some(xy) = &op.mul {
        multiply_ring(&parse(&xy[0])?, &parse(&xy[1])?)?.to_string()
    } else if let Some(x) = &op.forgetful {
        forgetful(&parse(x)?).to_string()
    } else if let Some(x) = &op.normal {
        normal_form(&parse(x)?).to_string()
    } else if let Some(tx) = &op.restrict {
        let to: SpaceId = tx[0].parse()?;
        restrict(&parse(&tx[1])?, to)?.to_string()
    } else {
        unreachable!("clap requires one operation")
    };
    Ok(format!("{result}\n"))
}
