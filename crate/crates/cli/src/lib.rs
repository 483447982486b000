//! The `kstate` command line: argument grammar, input loading and report rendering.
//!
//! Exit codes: 0 success (whatever the verdict), 1 usage error, 2 invalid
//! diagram, state or corpus, 3 internal invariant failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kstate::classify::{is_alternating_state_with, is_homogeneous_state, ClassificationReport, Consecutive};
use kstate::decide::{analyse, census_with_bound, Analysis, DEFAULT_CENSUS_BOUND};
use kstate::homology::{check_dominant_det, HomologyMatrix};
use kstate::state::surface_invariants;
use kstate::{
    alexander_polynomial, bundled_corpus, homology_matrix, load_corpus, make_state, murasugi_verdict, parse_pd,
    seifert_state, Certificate, CorpusEntry, Diagram, FiberVerdict, KauffmanState, LaurentPolynomial, StateSpec,
    Verdict,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_INVARIANT: u8 = 3;

/// What a run printed and how it ended.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Invariant(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Invariant(_) => EXIT_INVARIANT,
        }
    }
}

impl From<kstate::Error> for CliError {
    fn from(e: kstate::Error) -> Self {
        let debug = format!("{e:?}");
        let kind: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
        CliError::Invalid(format!("{kind}: {e}"))
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "kstate", version, about = "Decide whether Kauffman state surfaces are fibers, with certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and check a diagram (and a state, if one is given).
    Validate(DiagramArgs),
    /// Report whether a state is alternating and/or homogeneous.
    Classify {
        #[command(flatten)]
        args: DiagramArgs,
        /// Count only events adjacent along the whole circle as consecutive.
        #[arg(long)]
        strict: bool,
    },
    /// Decide fiberedness of one state surface.
    Decide(DiagramArgs),
    /// Decide every state of a diagram.
    Census {
        #[command(flatten)]
        args: DiagramArgs,
        /// Refuse diagrams with more crossings than this.
        #[arg(long, default_value_t = DEFAULT_CENSUS_BOUND)]
        bound: usize,
    },
    /// Homology matrix of a uniform state surface.
    Matrix(DiagramArgs),
    /// Alexander polynomial and the monic test.
    Alexander(DiagramArgs),
    /// Cross-check a knot table against the library.
    CorpusCheck(CorpusArgs),
}

#[derive(Args, Debug)]
struct DiagramArgs {
    /// Diagram in PD notation, e.g. "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]".
    #[arg(long, conflicts_with = "file")]
    pd: Option<String>,
    /// File holding a PD string or the JSON diagram form.
    #[arg(long)]
    file: Option<PathBuf>,
    #[command(flatten)]
    state: StateArgs,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct StateArgs {
    /// Explicit state, one A or B per crossing.
    #[arg(long)]
    state: Option<String>,
    #[arg(long)]
    seifert: bool,
    #[arg(long = "all-a")]
    all_a: bool,
    #[arg(long = "all-b")]
    all_b: bool,
}

#[derive(Args, Debug)]
struct CorpusArgs {
    /// Corpus CSV; the bundled table when omitted.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Csv => "csv",
        }
    }
}

pub fn run_cli<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(stdout) => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
        Err(e) => Outcome { code: e.code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn dispatch(command: Command) -> CliResult<String> {
    match command {
        Command::Validate(a) => validate(&a),
        Command::Classify { args, strict } => classify_cmd(&args, strict),
        Command::Decide(a) => decide_cmd(&a),
        Command::Census { args, bound } => census_cmd(&args, bound),
        Command::Matrix(a) => matrix_cmd(&a),
        Command::Alexander(a) => alexander_cmd(&a),
        Command::CorpusCheck(a) => corpus_check(&a),
    }
}

fn pick_format(requested: Option<Format>, default: Format, allowed: &[Format], command: &str) -> CliResult<Format> {
    let f = requested.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        let names: Vec<&str> = allowed.iter().map(|f| f.name()).collect();
        Err(CliError::Usage(format!("{command} does not support --format {}; use one of {}", f.name(), names.join(", "))))
    }
}

fn load_diagram(a: &DiagramArgs) -> CliResult<Diagram> {
    match (&a.pd, &a.file) {
        (Some(pd), None) => Ok(parse_pd(pd)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
            if text.trim_start().starts_with('{') {
                let value: serde_json::Value =
                    serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
                Ok(Diagram::from_json(&value, Default::default())?)
            } else {
                Ok(parse_pd(text.trim())?)
            }
        }
        _ => Err(CliError::Usage("give the diagram with --pd <PD> or --file <path>".into())),
    }
}

enum Chosen<'a> {
    Spec(StateSpec<'a>),
    Seifert,
}

fn chosen_state(s: &StateArgs) -> Option<Chosen<'_>> {
    if let Some(text) = &s.state {
        Some(Chosen::Spec(StateSpec::Explicit(text)))
    } else if s.seifert {
        Some(Chosen::Seifert)
    } else if s.all_a {
        Some(Chosen::Spec(StateSpec::AllA))
    } else if s.all_b {
        Some(Chosen::Spec(StateSpec::AllB))
    } else {
        None
    }
}

fn make(d: &Diagram, c: Chosen<'_>) -> CliResult<KauffmanState> {
    match c {
        Chosen::Spec(spec) => Ok(make_state(d, spec)?),
        Chosen::Seifert => Ok(seifert_state(d)),
    }
}

/// The state named on the command line, or the Seifert state.
fn load_state(d: &Diagram, s: &StateArgs) -> CliResult<KauffmanState> {
    make(d, chosen_state(s).unwrap_or(Chosen::Seifert))
}

fn reject_state(s: &StateArgs, command: &str) -> CliResult<()> {
    match chosen_state(s) {
        Some(_) => Err(CliError::Usage(format!("{command} runs over its own states; drop the state flag"))),
        None => Ok(()),
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
struct ValidateReport {
    pd: String,
    crossings: usize,
    edges: usize,
    faces: usize,
    components: usize,
    alternating_diagram: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    state: Option<StateSummary>,
}

#[derive(Serialize)]
struct StateSummary {
    state: String,
    circles: usize,
    euler_characteristic: i64,
    orientable: bool,
}

fn validate(a: &DiagramArgs) -> CliResult<String> {
    let format = pick_format(a.format, Format::Text, &[Format::Text, Format::Json], "validate")?;
    let d = load_diagram(a)?;
    let state = match chosen_state(&a.state) {
        Some(c) => {
            let s = make(&d, c)?;
            let m = kstate::smooth(&d, &s)?;
            let inv = surface_invariants(&m);
            Some(StateSummary {
                state: s.to_string(),
                circles: m.circle_count(),
                euler_characteristic: inv.euler_characteristic,
                orientable: inv.orientable,
            })
        }
        None => None,
    };
    let r = ValidateReport {
        pd: d.to_pd_string(),
        crossings: d.crossing_count(),
        edges: d.edge_count(),
        faces: d.faces().len(),
        components: d.components().len(),
        alternating_diagram: d.is_alternating(),
        state,
    };
    if format == Format::Json {
        return Ok(to_json(&r));
    }
    let mut out = String::new();
    let _ = writeln!(out, "valid diagram: {}", r.pd);
    let _ = writeln!(out, "crossings: {}", r.crossings);
    let _ = writeln!(out, "edges: {}", r.edges);
    let _ = writeln!(out, "faces: {}", r.faces);
    let _ = writeln!(out, "components: {}", r.components);
    let _ = writeln!(out, "alternating diagram: {}", yes_no(r.alternating_diagram));
    if let Some(s) = &r.state {
        let _ = writeln!(out, "state: {}", s.state);
        let _ = writeln!(out, "circles: {}", s.circles);
        let _ = writeln!(out, "euler characteristic: {}", s.euler_characteristic);
        let _ = writeln!(out, "orientable: {}", yes_no(s.orientable));
    }
    Ok(out)
}

#[derive(Serialize)]
struct ClassifyReport<'a> {
    state: String,
    strict: bool,
    #[serde(flatten)]
    report: &'a ClassificationReport,
}

fn classify_cmd(a: &DiagramArgs, strict: bool) -> CliResult<String> {
    let format = pick_format(a.format, Format::Text, &[Format::Text, Format::Json], "classify")?;
    let d = load_diagram(a)?;
    let s = load_state(&d, &a.state)?;
    let m = kstate::smooth(&d, &s)?;
    let mode = if strict { Consecutive::Strict } else { Consecutive::WithinRegion };
    let (alternating, wa) = is_alternating_state_with(&m, mode);
    let (homogeneous, wh) = is_homogeneous_state(&m);
    let report = ClassificationReport { alternating, homogeneous, witnesses: wa.into_iter().chain(wh).collect() };
    if let Some(w) = report.witnesses.iter().find(|w| !w.replay(&m)) {
        return Err(CliError::Invariant(format!("classification witness does not replay: {w:?}")));
    }
    if format == Format::Json {
        return Ok(to_json(&ClassifyReport { state: s.to_string(), strict, report: &report }));
    }
    let mut out = String::new();
    let _ = writeln!(out, "state: {s}");
    let _ = writeln!(out, "alternating: {}", yes_no(report.alternating));
    let _ = writeln!(out, "homogeneous: {}", yes_no(report.homogeneous));
    for w in &report.witnesses {
        let kind = serde_json::to_value(w.kind).expect("enum serializes");
        let circle = w.circle.map_or(String::new(), |c| format!(" circle {c}"));
        let events: Vec<String> = w.events.iter().map(|e| format!("x{e}")).collect();
        let _ = writeln!(out, "witness: {}{circle} region {} bands {}", kind.as_str().unwrap_or("?"), w.region, events.join(" "));
    }
    Ok(out)
}

#[derive(Serialize)]
struct DecideReport<'a> {
    pd: String,
    state: String,
    #[serde(flatten)]
    verdict: &'a FiberVerdict,
}

fn checked_analysis(d: &Diagram, s: &KauffmanState) -> CliResult<Analysis> {
    let a = analyse(d, s)?;
    a.verdict.verify(d, s).map_err(|e| CliError::Invariant(format!("certificate failed to replay: {e}")))?;
    Ok(a)
}

fn certificate_text(c: &Certificate) -> String {
    let ids = |v: &[usize]| v.iter().map(|e| format!("x{e}")).collect::<Vec<_>>().join(" ");
    match c {
        Certificate::SpanningTree { edges } if edges.is_empty() => "SPANNING_TREE (single vertex)".into(),
        Certificate::SpanningTree { edges } => format!("SPANNING_TREE edges {}", ids(edges)),
        Certificate::NotATree { edges, vertices, .. } => {
            let vs: Vec<String> = vertices.iter().map(|v| format!("c{v}")).collect();
            format!("NOT_A_TREE cycle edges {} through {}", ids(edges), vs.join(" "))
        }
        Certificate::MixedParallel { first, second } => format!("MIXED_PARALLEL edges x{first} x{second}"),
        Certificate::AlternatingInnerCycle { cycle } => {
            let labels: String = cycle.label_sequence.iter().map(|l| l.as_char()).collect();
            format!("ALTERNATING_INNER_CYCLE edges {} labels {labels} region {}", ids(&cycle.edges), cycle.region)
        }
        Certificate::None => "NONE".into(),
    }
}

fn decide_cmd(a: &DiagramArgs) -> CliResult<String> {
    let format = pick_format(a.format, Format::Text, &[Format::Text, Format::Json, Format::Dot], "decide")?;
    let d = load_diagram(a)?;
    let s = load_state(&d, &a.state)?;
    let an = checked_analysis(&d, &s)?;
    let v = &an.verdict;
    match format {
        Format::Json => Ok(to_json(&DecideReport { pd: d.to_pd_string(), state: s.to_string(), verdict: v })),
        Format::Dot => Ok(an.reduced.to_dot("reduced_state_graph")),
        _ => {
            let mut out = String::new();
            let _ = writeln!(out, "state: {s}");
            let _ = writeln!(out, "verdict: {}", v.verdict);
            let class = v.state_class.names();
            let _ = writeln!(out, "class: {}", if class.is_empty() { "none".into() } else { class.join(", ") });
            let _ = writeln!(out, "path: {}", serde_json::to_value(v.path).expect("enum serializes").as_str().unwrap_or("?"));
            let _ = writeln!(out, "certificate: {}", certificate_text(&v.certificate));
            Ok(out)
        }
    }
}

fn census_cmd(a: &DiagramArgs, bound: usize) -> CliResult<String> {
    let format = pick_format(a.format, Format::Csv, &[Format::Csv, Format::Json, Format::Text], "census")?;
    reject_state(&a.state, "census")?;
    let d = load_diagram(a)?;
    let c = census_with_bound(&d, bound)?;
    match format {
        Format::Json => Ok(to_json(&c)),
        Format::Text => {
            let mut out = String::new();
            for r in &c.rows {
                let class = match (r.alternating, r.homogeneous) {
                    (true, true) => "alt+hom",
                    (true, false) => "alt",
                    (false, true) => "hom",
                    (false, false) => "-",
                };
                let _ = writeln!(out, "{}  circles {}  chi {}  {class}  {} {}", r.state, r.circles, r.euler_characteristic, r.verdict, r.certificate);
            }
            let k = &c.counts;
            let _ = writeln!(out, "total {}: {} fibered, {} not fibered, {} unknown", k.total, k.fibered, k.not_fibered, k.unknown);
            Ok(out)
        }
        _ => Ok(c.to_csv()),
    }
}

#[derive(Serialize)]
struct MatrixReport<'a> {
    state: String,
    size: usize,
    #[serde(flatten)]
    matrix: &'a HomologyMatrix,
    #[serde(flatten)]
    dominance: kstate::homology::DominanceReport,
    invariants_hold: bool,
}

fn matrix_cmd(a: &DiagramArgs) -> CliResult<String> {
    let format = pick_format(a.format, Format::Text, &[Format::Text, Format::Json], "matrix")?;
    let d = load_diagram(a)?;
    let s = load_state(&d, &a.state)?;
    let an = analyse(&d, &s)?;
    let m = homology_matrix(&an.reduced)?;
    let bad = m.check_invariants();
    if !bad.is_empty() {
        return Err(CliError::Invariant(format!("homology matrix for {s} violates: {}", bad.join("; "))));
    }
    let dominance = check_dominant_det(&m.entries)?;
    if !dominance.conclusion_verified {
        return Err(CliError::Invariant(format!("determinant {} contradicts the dominance bound", dominance.determinant)));
    }
    if format == Format::Json {
        return Ok(to_json(&MatrixReport { state: s.to_string(), size: m.size(), matrix: &m, dominance, invariants_hold: true }));
    }
    let mut out = String::new();
    let _ = writeln!(out, "state: {s}");
    if m.size() == 0 {
        let _ = writeln!(out, "reduced graph is a tree: no inner cycles, empty matrix");
        let _ = writeln!(out, "determinant: {}", dominance.determinant);
        return Ok(out);
    }
    let _ = writeln!(out, "size: {}", m.size());
    let _ = write!(out, "{}", m.entries);
    for (i, c) in m.cycle_index.iter().enumerate() {
        let edges: Vec<String> = c.edges.iter().map(|e| format!("x{e}")).collect();
        let _ = writeln!(out, "cycle {i}: region {} edges {}", c.region, edges.join(" "));
    }
    let _ = writeln!(out, "dominance hypothesis: {}", if dominance.hypotheses_hold { "holds" } else { "fails" });
    let _ = writeln!(out, "determinant: {}", dominance.determinant);
    let _ = writeln!(out, "invariants: ok");
    Ok(out)
}

#[derive(Serialize)]
struct AlexanderReport {
    polynomial: LaurentPolynomial,
    display: String,
    monic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    murasugi: Option<Verdict>,
}

fn alexander_cmd(a: &DiagramArgs) -> CliResult<String> {
    let format = pick_format(a.format, Format::Text, &[Format::Text, Format::Json], "alexander")?;
    reject_state(&a.state, "alexander")?;
    let d = load_diagram(a)?;
    let p = alexander_polynomial(&d)?;
    let murasugi = murasugi_verdict(&d).ok().map(|r| r.verdict);
    let r = AlexanderReport { display: p.to_string(), monic: p.is_monic(), polynomial: p, murasugi };
    if format == Format::Json {
        return Ok(to_json(&r));
    }
    let mut out = String::new();
    let _ = writeln!(out, "polynomial: {}", r.polynomial.to_pairs_string());
    let _ = writeln!(out, "display: {}", r.display);
    let _ = writeln!(out, "monic: {}", yes_no(r.monic));
    match r.murasugi {
        Some(v) => {
            let _ = writeln!(out, "murasugi: {v}");
        }
        None => {
            let _ = writeln!(out, "murasugi: not applicable (needs a reduced alternating diagram)");
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct CorpusRow {
    name: String,
    alexander_matches: bool,
    alternating_matches: bool,
    murasugi: Option<Verdict>,
    seifert_verdict: Verdict,
    seifert_classified: bool,
    ok: bool,
    problems: Vec<String>,
}

fn check_entry(e: &CorpusEntry) -> CliResult<CorpusRow> {
    let mut problems = Vec::new();
    let computed = alexander_polynomial(&e.diagram)?;
    let alexander_matches = computed == e.alexander;
    if !alexander_matches {
        problems.push(format!("polynomial {} differs from table {}", computed.to_pairs_string(), e.alexander.to_pairs_string()));
    }
    let alternating_matches = e.diagram.is_alternating() == e.alternating_diagram;
    if !alternating_matches {
        problems.push("alternating flag differs from the diagram".into());
    }
    let s = seifert_state(&e.diagram);
    let an = checked_analysis(&e.diagram, &s)?;
    let v = an.verdict.verdict;
    let classified = !an.verdict.state_class.is_empty();
    let murasugi = if e.alternating_diagram { Some(murasugi_verdict(&e.diagram)?.verdict) } else { None };
    if let Some(m) = murasugi {
        if (m == Verdict::Fibered) != e.fibered {
            problems.push(format!("polynomial test says {m} but the table says fibered = {}", e.fibered));
        }
        if classified && v != m {
            problems.push(format!("Seifert state gives {v} but the polynomial test gives {m}"));
        }
    }
    Ok(CorpusRow {
        name: e.name.clone(),
        alexander_matches,
        alternating_matches,
        murasugi,
        seifert_verdict: v,
        seifert_classified: classified,
        ok: problems.is_empty(),
        problems,
    })
}

fn corpus_check(a: &CorpusArgs) -> CliResult<String> {
    let format = pick_format(a.format, Format::Text, &[Format::Text, Format::Json, Format::Csv], "corpus-check")?;
    let entries = match &a.file {
        Some(path) => load_corpus(path)?,
        None => bundled_corpus(),
    };
    let rows = entries.iter().map(check_entry).collect::<CliResult<Vec<_>>>()?;
    let failures = rows.iter().filter(|r| !r.ok).count();
    let out = match format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "alexander_matches", "alternating_matches", "murasugi", "seifert_verdict", "seifert_classified", "ok"])
                .expect("in-memory write");
            for r in &rows {
                w.write_record([
                    r.name.clone(),
                    r.alexander_matches.to_string(),
                    r.alternating_matches.to_string(),
                    r.murasugi.map_or(String::new(), |v| v.to_string()),
                    r.seifert_verdict.to_string(),
                    r.seifert_classified.to_string(),
                    r.ok.to_string(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
        }
        _ => {
            let mut out = String::new();
            for r in &rows {
                let m = r.murasugi.map_or("-".to_string(), |v| v.to_string());
                let status = if r.ok { "ok".to_string() } else { format!("FAIL: {}", r.problems.join("; ")) };
                let _ = writeln!(out, "{:<6} seifert {:<11} murasugi {:<11} {status}", r.name, r.seifert_verdict.as_str(), m);
            }
            let _ = writeln!(out, "{} entries, {} failures", rows.len(), failures);
            out
        }
    };
    if failures > 0 {
        return Err(CliError::Invariant(format!("{failures} corpus entries disagree\n{out}")));
    }
    Ok(out)
}
