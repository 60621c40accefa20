//! Command-line front end: argument parsing, configuration and the report
//! renderers behind each subcommand.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use euclid_dual::coxeter::{
    axial_data, axis_direction_symbolic, build_context, classes_for, window_reflections, ContextJson, CoxeterClass,
    CoxeterContext,
};
use euclid_dual::interval::{
    build_interval_window, certify_found, extract_dual_presentation, hurwitz_orbit, rectangle_fixture, Bound, Bowtie,
    CertificateJson, FactorizationWord, FiniteCoxeter, IntervalPoset, PosetJson,
};
use euclid_dual::isometry::Isometry;
use euclid_dual::linalg::{fmt_rat, QVector};
use euclid_dual::roots::{build_root_system, format_root, DynkinType, RootSystemJson};
use euclid_dual::verdict::{default_rows, main_verdict, VerdictJson};

/// Environment variable holding the default output format.
pub const FORMAT_ENV: &str = "EUCLID_DUAL_FORMAT";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "euclid-dual", version, about = "Dual Artin intervals of euclidean Coxeter groups")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = FORMAT_ENV, default_value = "text")]
    pub format: Format,
    /// Axial window k for interval construction.
    #[arg(long, global = true, default_value_t = 3)]
    pub window: usize,
    /// Maximal number of words in a Hurwitz orbit.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub budget: usize,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Also write the output to this file (`.dot` or `.json` pick the format).
    #[arg(long, global = true)]
    pub export: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simple system, Coxeter element and axis direction.
    Axis {
        #[arg(long = "type")]
        ty: String,
        /// `bipartite` or `(p,q)`; all classes of the type when omitted.
        #[arg(long)]
        class: Option<String>,
    },
    /// Lattice verdicts with bowtie certificates.
    Verdict {
        #[arg(long = "type", default_value = "all")]
        ty: String,
        #[arg(long, default_value = "all")]
        class: String,
    },
    /// Windowed interval `[1, w]`; `--type rect` gives the rectangle fixture.
    Interval {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        class: Option<String>,
    },
    /// Hurwitz orbit of a Coxeter factorization: finite `A2`, `B3`, ...,
    /// euclidean `~G2`, ..., or `rect`.
    Hurwitz {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        class: Option<String>,
    },
    /// Root system dump.
    Roots {
        #[arg(long = "type")]
        ty: String,
    },
    /// Walkthrough of the rectangle fixture.
    RectDemo,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn compute<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

/// Validated run settings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub window: usize,
    pub format: Format,
    pub budget: usize,
    pub workers: Option<usize>,
}

impl Config {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        if cli.window < 1 {
            return Err(CliError::Usage("--window must be at least 1".into()));
        }
        if cli.budget < 1 {
            return Err(CliError::Usage("--budget must be at least 1".into()));
        }
        if cli.workers == Some(0) {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        Ok(Config { window: cli.window, format: cli.format, budget: cli.budget, workers: cli.workers })
    }
}

/// Rendered output and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub code: i32,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, code: 0 }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli).unwrap_or_else(|e| Report { text: format!("error: {e}\n"), code: e.exit_code() }),
        Err(e) => Report { text: e.render().to_string(), code: e.exit_code() },
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let cfg = Config::from_cli(cli)?;
    let go = || dispatch(cli, &cfg);
    let report = match cfg.workers {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(compute)?.install(go),
        None => go(),
    }?;
    Ok(report)
}

fn dispatch(cli: &Cli, cfg: &Config) -> Result<Report, CliError> {
    let export = cli.export.as_deref();
    match &cli.command {
        Command::Axis { ty, class } => cmd_axis(cfg, export, ty, class.as_deref()),
        Command::Verdict { ty, class } => cmd_verdict(cfg, export, ty, class),
        Command::Interval { ty, class } => cmd_interval(cfg, export, ty, class.as_deref()),
        Command::Hurwitz { ty, class } => cmd_hurwitz(cfg, export, ty, class.as_deref()),
        Command::Roots { ty } => cmd_roots(cfg, export, ty),
        Command::RectDemo => cmd_rect_demo(cfg),
    }
}

pub fn parse_type(s: &str) -> Result<DynkinType, CliError> {
    s.parse().map_err(|e| CliError::Usage(format!("{e}")))
}

pub fn parse_class(s: &str) -> Result<CoxeterClass, CliError> {
    s.parse().map_err(CliError::Usage)
}

fn classes(ty: DynkinType, class: Option<&str>) -> Result<Vec<CoxeterClass>, CliError> {
    match class {
        None | Some("all") => Ok(classes_for(ty)),
        Some(c) => Ok(vec![parse_class(c)?]),
    }
}

fn context(ty: DynkinType, class: CoxeterClass) -> Result<CoxeterContext, CliError> {
    build_context(ty, class).map_err(|e| CliError::Usage(format!("~{ty} {class}: {e}")))
}

fn to_json<T: Serialize>(x: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(x).map(|s| s + "\n").map_err(compute)
}

fn no_dot(cfg: &Config, cmd: &str) -> Result<(), CliError> {
    if cfg.format == Format::Dot {
        return Err(CliError::Usage(format!("`{cmd}` has no DOT output")));
    }
    Ok(())
}

/// Writes `text`, or the alternative chosen by the file extension.
fn write_export(
    path: Option<&Path>,
    text: &str,
    json: impl FnOnce() -> Result<String, CliError>,
    dot: Option<&dyn Fn() -> String>,
) -> Result<(), CliError> {
    let Some(path) = path else { return Ok(()) };
    let body = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => json()?,
        Some("dot") => match dot {
            Some(f) => f(),
            None => return Err(CliError::Usage("no DOT export for this command".into())),
        },
        _ => text.to_string(),
    };
    std::fs::write(path, body).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisJson {
    pub context: ContextJson,
    pub symbolic_direction: Option<QVector>,
    pub min_set_direction: QVector,
    pub parallel: Option<bool>,
}

pub fn axis_report(ctx: &CoxeterContext) -> Result<AxisJson, CliError> {
    let symbolic = match ctx.class {
        CoxeterClass::Bipartite => Some(axis_direction_symbolic(&ctx.simple).map_err(compute)?),
        CoxeterClass::Bigon { .. } => None,
    };
    let parallel = symbolic.as_ref().map(|s| s.parallel_factor(&ctx.axis_dir).is_some());
    Ok(AxisJson {
        context: ctx.to_json(None),
        symbolic_direction: symbolic,
        min_set_direction: ctx.axis_dir.clone(),
        parallel,
    })
}

fn cmd_axis(cfg: &Config, export: Option<&Path>, ty: &str, class: Option<&str>) -> Result<Report, CliError> {
    no_dot(cfg, "axis")?;
    let ty = parse_type(ty)?;
    let mut out = Vec::new();
    for class in classes(ty, class)? {
        let ctx = context(ty, class)?;
        out.push((axis_report(&ctx)?, ctx));
    }
    let mut text = String::new();
    for (a, ctx) in &out {
        let _ = writeln!(text, "~{} {}", ctx.ty, ctx.class);
        let _ = writeln!(text, "  simple system (white vertex {}):", ctx.simple.white());
        for (i, e) in ctx.simple.entries.iter().enumerate() {
            let _ = writeln!(text, "    {i}: <x, {}> = {}", e.root, fmt_rat(&e.offset));
        }
        let _ = writeln!(text, "  order: {:?}", ctx.order);
        if let Some(s) = &a.symbolic_direction {
            let _ = writeln!(text, "  symbolic direction: {s}");
        }
        let _ = writeln!(text, "  min-set direction: {}", a.min_set_direction);
        match a.parallel {
            Some(true) => text.push_str("  agreement: parallel\n"),
            Some(false) => text.push_str("  agreement: NOT parallel\n"),
            None => {}
        }
    }
    let reports: Vec<&AxisJson> = out.iter().map(|(a, _)| a).collect();
    let json = || to_json(&reports);
    write_export(export, &text, json, None)?;
    let code = if reports.iter().any(|a| a.parallel == Some(false)) { 1 } else { 0 };
    let text = if cfg.format == Format::Json { json()? } else { text };
    Ok(Report { text, code })
}

/// Rows selected by `--type` and `--class`.
pub fn verdict_rows(ty: &str, class: &str) -> Result<Vec<(DynkinType, CoxeterClass)>, CliError> {
    let want = if class == "all" { None } else { Some(parse_class(class)?) };
    let rows = if ty == "all" {
        default_rows()
    } else {
        let t = parse_type(ty)?;
        classes(t, None)?.into_iter().map(|c| (t, c)).collect()
    };
    let rows: Vec<_> = rows.into_iter().filter(|(_, c)| want.is_none_or(|w| w == *c)).collect();
    if rows.is_empty() {
        return Err(CliError::Usage(format!("no rows for type {ty} class {class}")));
    }
    Ok(rows)
}

pub fn verdict_table(rows: &[VerdictJson]) -> String {
    let header = ["type", "class", "axis direction", "horizontal", "reducible", "certificate", "verdict", "expected"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let cert = match (&r.certificate, &r.evidence) {
                (Some(c), _) => format!("bowtie certified ({} checks)", c.checks.len()),
                (None, Some(e)) => {
                    format!("not applicable; {} certified bowtie(s) within window {}", e.certified, e.window)
                }
                (None, None) => "not applicable".to_string(),
            };
            vec![
                r.ty.clone(),
                r.class.clone(),
                r.axis_direction.to_string(),
                r.horizontal_components.join("+"),
                if r.reducible { "yes" } else { "no" }.to_string(),
                cert,
                r.verdict.to_string(),
                if r.verdict == r.expected { "ok".to_string() } else { format!("MISMATCH ({})", r.expected) },
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|j| cells.iter().map(|c| c[j].chars().count()).chain([header[j].len()]).max().unwrap_or(0))
        .collect();
    let line = |row: Vec<&str>| {
        let mut s = String::new();
        for (j, c) in row.iter().enumerate() {
            let _ = write!(s, "{c:<w$}  ", w = widths[j]);
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for c in &cells {
        out += &line(c.iter().map(String::as_str).collect());
    }
    out
}

pub fn verdicts(rows: &[(DynkinType, CoxeterClass)], window: usize) -> Result<Vec<VerdictJson>, CliError> {
    rows.par_iter()
        .map(|&(t, c)| {
            let (ctx, v) = main_verdict(t, c, window).map_err(|e| CliError::Compute(format!("~{t} {c}: {e}")))?;
            Ok(v.to_json(&ctx.roots))
        })
        .collect()
}

fn cmd_verdict(cfg: &Config, export: Option<&Path>, ty: &str, class: &str) -> Result<Report, CliError> {
    no_dot(cfg, "verdict")?;
    let rows = verdict_rows(ty, class)?;
    let out = verdicts(&rows, cfg.window)?;
    let code = if out.iter().all(|r| r.verdict == r.expected) { 0 } else { 1 };
    let text = verdict_table(&out);
    let json = || to_json(&out);
    write_export(export, &text, json, None)?;
    let text = if cfg.format == Format::Json { json()? } else { text };
    Ok(Report { text, code })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalJson {
    pub name: String,
    pub window: Option<usize>,
    pub rank_sizes: Vec<usize>,
    pub maximal_chains: String,
    pub bowties: Vec<Bowtie>,
    pub certified: Vec<CertificateJson>,
    pub unconfirmed: Vec<Bowtie>,
    pub poset: PosetJson,
}

struct IntervalRun {
    poset: IntervalPoset,
    json: IntervalJson,
    notes: Vec<String>,
}

fn rect_interval() -> Result<IntervalRun, CliError> {
    let fx = rectangle_fixture();
    let p = fx.interval().map_err(compute)?;
    let bowties = p.find_bowties();
    let mut notes = Vec::new();
    for bt in &bowties {
        if let Some(chains) = p.bowtie_chains(bt) {
            let words: Vec<String> =
                chains.iter().map(|c| c.iter().map(|&g| p.label(g)).collect::<Vec<_>>().join(" ")).collect();
            notes.push(format!("bowtie chains: {}", words.join(", ")));
        }
    }
    let json = IntervalJson {
        name: "rectangle".into(),
        window: None,
        rank_sizes: p.rank_sizes(),
        maximal_chains: p.chain_count().to_string(),
        bowties: bowties.clone(),
        certified: Vec::new(),
        unconfirmed: Vec::new(),
        poset: p.to_json(),
    };
    Ok(IntervalRun { poset: p, json, notes })
}

fn window_interval(cfg: &Config, ty: &str, class: Option<&str>) -> Result<IntervalRun, CliError> {
    let t = parse_type(ty)?;
    let cs = classes(t, class)?;
    let [c] = cs.as_slice() else {
        return Err(CliError::Usage(format!("~{t} has several classes; pass --class")));
    };
    let ctx = context(t, *c)?;
    let ax = axial_data(&ctx, cfg.window).map_err(compute)?;
    let gens = window_reflections(&ctx, &ax);
    let p = build_interval_window(&ctx, &gens).map_err(compute)?;
    let bowties = p.find_bowties();
    let (ok, un) = certify_found(&p, &ctx, &bowties);
    let notes = vec![
        format!("generators: {}", gens.len()),
        format!("certified bowties: {}", ok.len()),
        format!("unconfirmed bowtie candidates: {}", un.len()),
    ];
    let json = IntervalJson {
        name: format!("~{t} {c}"),
        window: Some(cfg.window),
        rank_sizes: p.rank_sizes(),
        maximal_chains: p.chain_count().to_string(),
        bowties,
        certified: ok.iter().map(|c| c.to_json(&ctx.roots)).collect(),
        unconfirmed: un,
        poset: p.to_json(),
    };
    Ok(IntervalRun { poset: p, json, notes })
}

fn cmd_interval(cfg: &Config, export: Option<&Path>, ty: &str, class: Option<&str>) -> Result<Report, CliError> {
    let run = if ty.eq_ignore_ascii_case("rect") { rect_interval()? } else { window_interval(cfg, ty, class)? };
    let j = &run.json;
    let mut text = j.name.to_string();
    if let Some(k) = j.window {
        let _ = write!(text, " (window {k})");
    }
    let _ = writeln!(text, "\n  rank sizes: {:?}", j.rank_sizes);
    let _ = writeln!(text, "  nodes: {}, covering relations: {}", run.poset.len(), run.poset.edges.len());
    let _ = writeln!(text, "  maximal chains: {}", j.maximal_chains);
    let _ = writeln!(text, "  bowtie candidates: {}", j.bowties.len());
    for n in &run.notes {
        let _ = writeln!(text, "  {n}");
    }
    let dot = || run.poset.to_dot();
    let json = || to_json(&run.json);
    write_export(export, &text, json, Some(&dot))?;
    let text = match cfg.format {
        Format::Text => text,
        Format::Json => json()?,
        Format::Dot => dot(),
    };
    Ok(Report::ok(text))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HurwitzJson {
    pub name: String,
    pub word_length: usize,
    pub orbit_size: usize,
    pub complete: bool,
    pub budget: usize,
    pub brute_force: Option<usize>,
    pub generators: usize,
    pub relations: Vec<String>,
}

type Namer = Box<dyn Fn(&Isometry) -> String>;

fn cmd_hurwitz(cfg: &Config, export: Option<&Path>, ty: &str, class: Option<&str>) -> Result<Report, CliError> {
    no_dot(cfg, "hurwitz")?;
    let (name, word, closure, brute, namer): (String, FactorizationWord, _, _, Namer) =
        if ty.eq_ignore_ascii_case("rect") {
            let fx = rectangle_fixture();
            let word = FactorizationWord::new(
                ["r34", "t13", "r41"]
                    .iter()
                    .map(|n| fx.generators.iter().find(|g| g.label == *n).map(|g| g.iso.clone()).expect("named"))
                    .collect(),
            );
            let closure = fx.generator_set();
            let brute = Some(fx.minimal_factorizations().len());
            ("rectangle".into(), word, Some(closure), brute, Box::new(move |g| fx.name(g)))
        } else if let Some(affine) = ty.strip_prefix('~') {
            let t = parse_type(affine)?;
            let cs = classes(t, class)?;
            let [c] = cs.as_slice() else {
                return Err(CliError::Usage(format!("~{t} has several classes; pass --class")));
            };
            let ctx = context(t, *c)?;
            let refl = ctx.simple.reflections();
            let word = FactorizationWord::new(ctx.order.iter().map(|&i| refl[i].clone()).collect());
            let roots = ctx.roots.clone();
            let namer = move |g: &Isometry| {
                euclid_dual::coxeter::Refl::of_group(g, &roots).map_or_else(|| "?".into(), |r| r.label(&roots))
            };
            (format!("~{t} {c}"), word, None, None, Box::new(namer))
        } else {
            let (family, rank) = parse_finite(ty)?;
            let fc = FiniteCoxeter::new(family, rank)
                .ok_or_else(|| CliError::Usage(format!("finite orbits are available for types A and B, not {ty}")))?;
            let space = fc.reflections.len().checked_pow(rank as u32).unwrap_or(usize::MAX);
            let brute = (space <= 1_000_000).then(|| fc.brute_force_factorizations().len());
            let word = fc.coxeter_word();
            let refl = fc.reflections.clone();
            let namer =
                move |g: &Isometry| refl.iter().position(|r| r == g).map_or_else(|| "?".into(), |i| format!("r{i}"));
            (fc.name.clone(), word, None, brute, Box::new(namer))
        };
    let orbit = hurwitz_orbit(&word, cfg.budget, closure.as_ref()).map_err(compute)?;
    let pres = extract_dual_presentation(&orbit);
    let out = HurwitzJson {
        name,
        word_length: word.len(),
        orbit_size: orbit.words.len(),
        complete: orbit.complete,
        budget: cfg.budget,
        brute_force: brute,
        generators: pres.generators.len(),
        relations: pres.to_text(&namer).lines().map(str::to_string).collect(),
    };
    let mut text = format!("{}: Hurwitz orbit of a length-{} factorization\n", out.name, out.word_length);
    if out.complete {
        let _ = writeln!(text, "  orbit size: {}", out.orbit_size);
    } else {
        let _ = writeln!(text, "  budget exceeded: {} words seen, orbit incomplete", out.orbit_size);
    }
    if let Some(b) = out.brute_force {
        let agree = if b == out.orbit_size { "agrees" } else { "DIFFERS" };
        let _ = writeln!(text, "  brute-force minimal factorizations: {b} ({agree})");
    }
    let _ = writeln!(text, "  generators seen: {}, relations: {}", out.generators, out.relations.len());
    for r in &out.relations {
        let _ = writeln!(text, "    {r}");
    }
    let json = || to_json(&out);
    write_export(export, &text, json, None)?;
    let code = match out.brute_force {
        Some(b) if out.complete && b != out.orbit_size => 1,
        _ => 0,
    };
    let text = if cfg.format == Format::Json { json()? } else { text };
    Ok(Report { text, code })
}

/// `A2`, `B3`, ... for the finite groups.
pub fn parse_finite(s: &str) -> Result<(char, usize), CliError> {
    let mut chars = s.trim().chars();
    let family = chars.next().map(|c| c.to_ascii_uppercase());
    match (family, chars.as_str().parse::<usize>()) {
        (Some(f), Ok(n)) => Ok((f, n)),
        _ => Err(CliError::Usage(format!("unknown finite type `{s}`"))),
    }
}

fn cmd_roots(cfg: &Config, export: Option<&Path>, ty: &str) -> Result<Report, CliError> {
    no_dot(cfg, "roots")?;
    let t = parse_type(ty)?;
    let sys = build_root_system(t);
    let mut text = format!("{t}: {} roots in R^{}\n", sys.len(), sys.ambient());
    for r in sys.roots() {
        let note = format_root(r, &sys).unwrap_or_default();
        let _ = writeln!(text, "  {r}  {note}");
    }
    let j: RootSystemJson = sys.to_json();
    let json = || to_json(&j);
    write_export(export, &text, json, None)?;
    let text = if cfg.format == Format::Json { json()? } else { text };
    Ok(Report::ok(text))
}

fn cmd_rect_demo(cfg: &Config) -> Result<Report, CliError> {
    no_dot(cfg, "rect-demo")?;
    let fx = rectangle_fixture();
    let mut text = String::from("unit square, corners p1=(0,1) p2=(1,1) p3=(1,0) p4=(0,0)\n");
    for g in &fx.generators {
        let _ = writeln!(text, "  {:<4} {}", g.label, euclid_dual::interval::node_summary(&g.iso));
    }
    let p = fx.interval().map_err(compute)?;
    let facts = fx.minimal_factorizations();
    let _ = writeln!(text, "w = rotation by pi about (1/2,1/2), d(1,w) = {}", p.height());
    let _ = writeln!(text, "minimal factorizations: {}", facts.len());
    let start = FactorizationWord::new(facts[0].iter().map(|&i| fx.generators[i].iso.clone()).collect());
    let closure = fx.generator_set();
    let orbit = hurwitz_orbit(&start, cfg.budget, Some(&closure)).map_err(compute)?;
    let start_names: Vec<String> = start.letters.iter().map(|g| fx.name(g)).collect();
    let _ = writeln!(text, "Hurwitz orbit of {}: {} words", start_names.join(" "), orbit.words.len());
    let _ = writeln!(text, "interval rank sizes: {:?}, maximal chains: {}", p.rank_sizes(), p.chain_count());
    for bt in p.find_bowties() {
        let names = |i: usize| match i {
            _ if i == p.bottom => "1".to_string(),
            _ if i == p.top => "w".to_string(),
            _ => fx.name(&p.nodes[i]),
        };
        let chains = p.bowtie_chains(&bt).unwrap_or_default();
        let words: Vec<String> =
            chains.iter().map(|c| c.iter().map(|&g| p.label(g)).collect::<Vec<_>>().join(" ")).collect();
        let lows: Vec<String> = p.lower_bounds(bt.a, bt.b).ones().map(&names).collect();
        let meet = match p.meet(bt.a, bt.b) {
            Bound::Found(m) => names(m),
            Bound::None => "none".into(),
            Bound::NotDetermined => "not determined".into(),
        };
        let _ = writeln!(
            text,
            "bowtie with c = {}, d = {}\n  chains: {}\n  lower bounds of a, b: {}; meet: {meet}",
            names(bt.c),
            names(bt.d),
            words.join(", "),
            lows.join(", "),
        );
    }
    let pres = extract_dual_presentation(&orbit);
    let _ = writeln!(text, "Hurwitz relations: {}", pres.relations.len());
    let text = if cfg.format == Format::Json {
        to_json(&serde_json::json!({
            "rank_sizes": p.rank_sizes(),
            "minimal_factorizations": facts.len(),
            "orbit_size": orbit.words.len(),
            "bowties": p.find_bowties(),
            "relations": pres.to_text(|g| fx.name(g)).lines().collect::<Vec<_>>(),
        }))?
    } else {
        text
    };
    Ok(Report::ok(text))
}
