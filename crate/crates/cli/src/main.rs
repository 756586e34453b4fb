use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use thompson_core::complex_topology::{
    complex_below, descending_link, descending_star, filtration_level, from_labelled, Budget,
    Fragment, HomologyProfile, SimplicialComplex, TopologyError,
};
use thompson_core::core_action::parse_domain;
use thompson_core::expansion_scheme::{extend_prescheme, Prescheme, Scheme, SchemeKind};
use thompson_core::finiteness_engine::{
    f_infinity_checklist, f_n_checklist, Conclusion, FinitenessReport,
};
use thompson_core::pseudovertex::{
    common_upper_bound, simple_expansions, OrderOracle, Pseudovertex, Verdict,
};
use thompson_core::report::AxiomReport;
use thompson_core::s_structure::{SStructure, StructureKind};
use thompson_core::semigroups::{make_action, ActionSpec};

/// `println!` that ignores a closed stdout, so piping into `head` stays quiet.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

/// `print!` counterpart of [`outln!`].
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout().lock(), $($arg)*);
    }};
}

mod render;

use render::{print_value, Table};

/// Exit status for a failed verification.
const VERIFICATION_FAILED: u8 = 2;
/// Exit status for an exhausted enumeration budget.
const BUDGET_EXHAUSTED: u8 = 3;
/// Exit status for bad input.
const USAGE: u8 = 1;

#[derive(Parser)]
#[command(
    name = "thompson",
    about = "Locally determined groups, expansion schemes and their complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Args, Clone)]
struct Common {
    /// Action name: V2, V3, QV, Qbar3, H2, ROVER, prod(V2,V2), ...
    #[arg(long)]
    action: String,
    /// maximal, rover or brin; defaults to the action's own structure.
    #[arg(long)]
    structure: Option<String>,
    /// trivial, maxpart, prodsub or rover; defaults to the structure's own scheme.
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args, Clone)]
struct Limits {
    /// Largest number of vertices an enumeration may produce.
    #[arg(long, default_value_t = 5000)]
    budget: usize,
    /// Build only this skeleton.
    #[arg(long)]
    max_dim: Option<usize>,
}

impl Limits {
    fn budget(&self) -> Budget {
        Budget {
            max_vertices: self.budget,
            max_candidates: self.budget.saturating_mul(10),
            max_simplices: self.budget.saturating_mul(100),
            max_dim: self.max_dim,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Verifiable {
    Sstructure,
    Scheme,
    Prescheme,
    Cup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Piece {
    Link,
    Star,
    Below,
}

#[derive(Subcommand)]
enum Command {
    /// Lists the registered actions with their natural structures and schemes.
    Actions {
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Runs an axiom suite on seeded samples.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        what: Verifiable,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Domain depth for the ultrametric check.
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Lists the simple expansions of a vertex, or its ℰ-expansions with --scheme.
    Expand {
        #[command(flatten)]
        common: Common,
        /// Pseudovertex, e.g. "{ sig e->0 ; sig e->1 }"
        #[arg(long)]
        vertex: String,
    },
    /// Decides `v ≤ w` in the expansion order.
    Leq {
        #[command(flatten)]
        common: Common,
        /// Pseudovertex, e.g. "{ sig e->0 ; sig e->1 }"
        #[arg(long)]
        vertex: String,
        /// Second pseudovertex, same syntax as --vertex
        #[arg(long)]
        other: String,
    },
    /// Builds a common upper bound of two vertices with the same image.
    UpperBound {
        #[command(flatten)]
        common: Common,
        /// Pseudovertex, e.g. "{ sig e->0 ; sig e->1 }"
        #[arg(long)]
        vertex: String,
        /// Second pseudovertex, same syntax as --vertex
        #[arg(long)]
        other: String,
    },
    /// Enumerates the descending link of a vertex.
    Link {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        limits: Limits,
        /// Pseudovertex, e.g. "{ sig e->0 ; sig e->1 }"
        #[arg(long)]
        vertex: String,
        /// Reports reduced homology up to this dimension.
        #[arg(long)]
        homology: Option<usize>,
    },
    /// Reduced integer homology of a complex given as JSON `{vertices, simplices}`.
    Homology {
        /// Path to the JSON file, or `-` for standard input.
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Builds a filtration level grown from the identity vertex on a region.
    Filtration {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        limits: Limits,
        /// Disjoint domains separated by `;`, for example `B:e`.
        #[arg(long)]
        region: String,
        #[arg(long)]
        n: usize,
    },
    /// Evaluates the finiteness hypotheses; with --n, certifies stable connectivity at level n.
    Finiteness {
        #[command(flatten)]
        common: Common,
        /// Connectivity level to certify
        #[arg(long)]
        n: Option<usize>,
        /// Largest rank threshold searched for.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Writes a descending link, star or lower complex as JSON or DOT.
    Export {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        limits: Limits,
        /// Pseudovertex, e.g. "{ sig e->0 ; sig e->1 }"
        #[arg(long)]
        vertex: String,
        #[arg(long, value_enum, default_value = "link")]
        what: Piece,
    },
}

/// A failure with its exit status and a machine-readable witness.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Failure {
        Failure {
            code: USAGE,
            kind: "usage",
            message: message.to_string(),
        }
    }
}

impl From<TopologyError> for Failure {
    fn from(e: TopologyError) -> Failure {
        if e.is_budget() {
            Failure {
                code: BUDGET_EXHAUSTED,
                kind: "budget",
                message: e.to_string(),
            }
        } else {
            Failure::usage(e)
        }
    }
}

type Outcome = Result<u8, Failure>;

const ACTIONS: &[&str] = &[
    "V2",
    "V3",
    "V4",
    "QV",
    "Qbar3",
    "H2",
    "H3",
    "H4",
    "ROVER",
    "prod(V2,V2)",
    "prod(V2,V2,V2)",
    "prod(Qbar1,V2)",
];

fn structure_of(common: &Common) -> Result<SStructure, Failure> {
    let spec = ActionSpec::parse(&common.action).map_err(Failure::usage)?;
    let action = make_action(&spec).map_err(Failure::usage)?;
    match &common.structure {
        None => SStructure::natural(action).map_err(Failure::usage),
        Some(s) => SStructure::new(action, StructureKind::parse(s).map_err(Failure::usage)?)
            .map_err(Failure::usage),
    }
}

fn scheme_of(common: &Common) -> Result<Scheme, Failure> {
    let ss = structure_of(common)?;
    match &common.scheme {
        None => Ok(Scheme::natural(ss)),
        Some(k) => {
            Scheme::new(ss, SchemeKind::parse(k).map_err(Failure::usage)?).map_err(Failure::usage)
        }
    }
}

fn vertex(ss: &SStructure, text: &str) -> Result<Pseudovertex, Failure> {
    Pseudovertex::parse(ss, text).map_err(Failure::usage)
}

fn print_report(report: &AxiomReport, format: Format) -> u8 {
    match format {
        Format::Json => print_value(&json!({ "passed": report.passed(), "checks": report.checks })),
        _ => {
            let mut t = Table::new(&["axiom", "status", "samples", "witness"]);
            for c in &report.checks {
                let status = serde_json::to_value(c.status)
                    .expect("status")
                    .as_str()
                    .unwrap_or("")
                    .to_string();
                t.row(vec![
                    c.axiom.clone(),
                    status,
                    c.samples.to_string(),
                    c.witness.clone().unwrap_or_default(),
                ]);
            }
            t.print();
        }
    }
    if report.passed() {
        0
    } else {
        let witness: Vec<_> = report
            .failures()
            .map(|c| json!({ "axiom": c.axiom, "witness": c.witness }))
            .collect();
        eprintln!(
            "{}",
            json!({ "error": "verification", "failures": witness })
        );
        VERIFICATION_FAILED
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Actions { format } => actions(format),
        Command::Verify {
            common,
            what,
            samples,
            seed,
            depth,
        } => {
            let report = match what {
                Verifiable::Sstructure => structure_of(&common)?.verify_axioms(samples, seed),
                Verifiable::Scheme => scheme_of(&common)?.verify_axioms(samples, seed),
                Verifiable::Prescheme => {
                    let scheme = scheme_of(&common)?;
                    let table = Prescheme::of(&scheme);
                    let mut report = table.verify(scheme.structure());
                    if report.passed() {
                        let ext =
                            extend_prescheme(scheme.structure(), table).map_err(Failure::usage)?;
                        report
                            .checks
                            .extend(ext.verify_axioms(samples, seed).checks);
                    }
                    report
                }
                Verifiable::Cup => {
                    let ss = structure_of(&common)?;
                    let cup = ss.action().verify_cup(depth);
                    let (ok, witness) =
                        (cup.passed, cup.witness.map(|(a, b)| format!("{a} and {b}")));
                    let status = if ok {
                        thompson_core::report::Status::Pass
                    } else {
                        thompson_core::report::Status::Fail
                    };
                    AxiomReport {
                        checks: vec![thompson_core::report::AxiomCheck {
                            axiom: "CUP".into(),
                            status,
                            samples: cup.domains_checked,
                            witness,
                        }],
                    }
                }
            };
            Ok(print_report(&report, common.format))
        }
        Command::Expand {
            common,
            vertex: text,
        } => {
            let explicit = common.scheme.is_some();
            let scheme = scheme_of(&common)?;
            let v = vertex(scheme.structure(), &text)?;
            let list: Vec<Pseudovertex> = if explicit {
                scheme
                    .e_expansions(&v)
                    .filter(|w| *w != v)
                    .collect::<std::collections::BTreeSet<_>>()
                    .into_iter()
                    .collect()
            } else {
                simple_expansions(scheme.structure(), &v)
            };
            let texts: Vec<String> = list.iter().map(Pseudovertex::to_string).collect();
            match common.format {
                Format::Json => {
                    print_value(&json!({ "vertex": v.to_string(), "expansions": texts }))
                }
                _ => {
                    let mut t = Table::new(&["#", "rank", "expansion"]);
                    for (i, w) in list.iter().enumerate() {
                        t.row(vec![i.to_string(), w.rank().to_string(), w.to_string()]);
                    }
                    t.print();
                }
            }
            Ok(0)
        }
        Command::Leq {
            common,
            vertex: a,
            other: b,
        } => {
            let ss = structure_of(&common)?;
            let (v, w) = (vertex(&ss, &a)?, vertex(&ss, &b)?);
            let verdict = OrderOracle::new(&ss).compare(&v, &w);
            match common.format {
                Format::Json => print_value(&json!({ "leq": verdict })),
                _ => outln!(
                    "{}",
                    serde_json::to_value(verdict)
                        .expect("verdict")
                        .as_str()
                        .unwrap_or("")
                ),
            }
            Ok(if verdict == Verdict::Unknown {
                BUDGET_EXHAUSTED
            } else {
                0
            })
        }
        Command::UpperBound {
            common,
            vertex: a,
            other: b,
        } => {
            let ss = structure_of(&common)?;
            let (v, w) = (vertex(&ss, &a)?, vertex(&ss, &b)?);
            let u = common_upper_bound(&ss, &v, &w).map_err(Failure::usage)?;
            let mut oracle = OrderOracle::new(&ss);
            let checked =
                oracle.compare(&v, &u) == Verdict::True && oracle.compare(&w, &u) == Verdict::True;
            match common.format {
                Format::Json => {
                    print_value(&json!({ "upper_bound": u.to_string(), "verified": checked }))
                }
                _ => outln!("{u}\nverified: {checked}"),
            }
            Ok(if checked { 0 } else { VERIFICATION_FAILED })
        }
        Command::Link {
            common,
            limits,
            vertex: text,
            homology,
        } => {
            let scheme = scheme_of(&common)?;
            let v = vertex(scheme.structure(), &text)?;
            let link = descending_link(&scheme, &v, &limits.budget())?;
            let h = homology.map(|d| link.complex.homology(d)).transpose()?;
            print_fragment(&link, h.as_ref(), common.format);
            Ok(0)
        }
        Command::Homology {
            input,
            max_dim,
            format,
        } => {
            let text = if input == "-" {
                std::io::read_to_string(std::io::stdin()).map_err(Failure::usage)?
            } else {
                std::fs::read_to_string(&input).map_err(Failure::usage)?
            };
            let k = complex_from_json(&text)?;
            let h = k.homology(max_dim)?;
            print_homology(&k, &h, format);
            Ok(0)
        }
        Command::Filtration {
            common,
            limits,
            region,
            n,
        } => {
            let scheme = scheme_of(&common)?;
            let a = scheme.structure().action();
            let domains = region
                .split(';')
                .map(|d| parse_domain(a, d.trim()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(Failure::usage)?;
            let level = filtration_level(&scheme, &domains, n, &limits.budget())?;
            match common.format {
                Format::Json => print_value(&json!({
                    "level": n,
                    "orbit_truncated": level.orbit_truncated,
                    "complex": level.fragment.complex.export(),
                })),
                Format::Dot => out!("{}", level.fragment.complex.to_dot()),
                Format::Table => {
                    print_fragment(&level.fragment, None, Format::Table);
                    outln!("orbit truncated: {}", level.orbit_truncated);
                }
            }
            Ok(0)
        }
        Command::Finiteness { common, n, cap } => {
            let scheme = scheme_of(&common)?;
            let report = match n {
                None => f_infinity_checklist(&scheme),
                Some(level) => f_n_checklist(&scheme, level + 1, cap.unwrap_or(10 * (level + 1))),
            };
            print_finiteness(&report, common.format);
            Ok(0)
        }
        Command::Export {
            common,
            limits,
            vertex: text,
            what,
        } => {
            let scheme = scheme_of(&common)?;
            let v = vertex(scheme.structure(), &text)?;
            let budget = limits.budget();
            let fragment = match what {
                Piece::Link => descending_link(&scheme, &v, &budget)?,
                Piece::Star => descending_star(&scheme, &v, &budget)?,
                Piece::Below => complex_below(&scheme, &v, &budget)?,
            };
            match common.format {
                Format::Dot => out!("{}", fragment.complex.to_dot()),
                _ => print_value(&fragment.complex.export()),
            }
            Ok(0)
        }
    }
}

#[derive(Serialize)]
struct ActionRow {
    action: String,
    structure: String,
    scheme: String,
    types: usize,
    contracting: Vec<String>,
    rich_constant: Option<usize>,
}

fn actions(format: Format) -> Outcome {
    let mut rows = Vec::new();
    for name in ACTIONS {
        let common = Common {
            action: name.to_string(),
            structure: None,
            scheme: None,
            format,
        };
        let scheme = scheme_of(&common)?;
        let ss = scheme.structure();
        rows.push(ActionRow {
            action: name.to_string(),
            structure: ss.kind().to_string(),
            scheme: scheme.kind().to_string(),
            types: ss.type_count(),
            contracting: scheme
                .contracting_vectors()
                .iter()
                .map(|c| c.to_string())
                .collect(),
            rich_constant: scheme.rich_constant(),
        });
    }
    match format {
        Format::Json => print_value(&rows),
        _ => {
            let mut t = Table::new(&[
                "action",
                "structure",
                "scheme",
                "types",
                "contracting",
                "C1",
            ]);
            for r in rows {
                let c1 = r
                    .rich_constant
                    .map(|c| c.to_string())
                    .unwrap_or_else(|| "none".into());
                t.row(vec![
                    r.action,
                    r.structure,
                    r.scheme,
                    r.types.to_string(),
                    r.contracting.join(" "),
                    c1,
                ]);
            }
            t.print();
        }
    }
    Ok(0)
}

fn complex_from_json(text: &str) -> Result<SimplicialComplex, Failure> {
    #[derive(serde::Deserialize)]
    struct Input {
        vertices: Vec<String>,
        simplices: Vec<Vec<usize>>,
    }
    let input: Input = serde_json::from_str(text).map_err(Failure::usage)?;
    let n = input.vertices.len();
    if let Some(bad) = input.simplices.iter().flatten().find(|&&i| i >= n) {
        return Err(Failure::usage(format!("vertex index {bad} out of range")));
    }
    let labelled = input
        .simplices
        .iter()
        .map(|s| s.iter().map(|&i| input.vertices[i].clone()).collect());
    let mut k = from_labelled(labelled);
    let isolated: Vec<Vec<String>> = input
        .vertices
        .iter()
        .filter(|l| !k.labels().contains(l))
        .map(|l| vec![l.clone()])
        .collect();
    if !isolated.is_empty() {
        let mut all: Vec<Vec<String>> = k.labelled_simplices().into_iter().collect();
        all.extend(isolated);
        k = from_labelled(all);
    }
    Ok(k)
}

fn print_homology(k: &SimplicialComplex, h: &HomologyProfile, format: Format) {
    match format {
        Format::Json => print_value(&homology_json(k, h)),
        _ => {
            outln!(
                "vertices: {}  simplices: {}  euler: {}",
                k.vertex_count(),
                k.simplex_count(),
                k.euler_characteristic()
            );
            homology_table(h).print();
        }
    }
}

fn homology_json(k: &SimplicialComplex, h: &HomologyProfile) -> serde_json::Value {
    let dims: Vec<_> = h
        .groups
        .iter()
        .enumerate()
        .map(|(d, g)| json!({ "dim": d, "betti": g.betti, "torsion": g.torsion }))
        .collect();
    let connected = (0..h.groups.len())
        .take_while(|&d| h.vanishes_through(d))
        .last();
    json!({
        "vertices": k.vertex_count(),
        "simplices": k.simplex_count(),
        "empty": h.empty,
        "homology": dims,
        "homologically_connected_through": connected,
    })
}

fn homology_table(h: &HomologyProfile) -> Table {
    let mut t = Table::new(&["dim", "betti", "torsion"]);
    if h.empty {
        t.row(vec!["-1".into(), "1".into(), String::new()]);
    }
    for (d, g) in h.groups.iter().enumerate() {
        t.row(vec![
            d.to_string(),
            g.betti.to_string(),
            g.torsion.join(" "),
        ]);
    }
    t
}

fn print_fragment(f: &Fragment, h: Option<&HomologyProfile>, format: Format) {
    match format {
        Format::Json => {
            let mut out = json!({ "complex": f.complex.export() });
            if let Some(h) = h {
                out["homology"] = homology_json(&f.complex, h);
            }
            print_value(&out);
        }
        Format::Dot => out!("{}", f.complex.to_dot()),
        Format::Table => {
            let counts: Vec<String> = (0..=f.complex.dimension().unwrap_or(0))
                .map(|d| f.complex.faces(d).len().to_string())
                .collect();
            outln!(
                "vertices: {}  simplices by dimension: [{}]  components: {}",
                f.complex.vertex_count(),
                counts.join(", "),
                f.complex.components()
            );
            for w in &f.vertices {
                outln!("  {w}");
            }
            if let Some(h) = h {
                outln!("homologically {}-connected (reduced homology only, fundamental group not checked)", connected_text(h));
                homology_table(h).print();
            }
        }
    }
}

fn connected_text(h: &HomologyProfile) -> String {
    match (0..h.groups.len())
        .take_while(|&d| h.vanishes_through(d))
        .last()
    {
        Some(d) => d.to_string(),
        None if h.empty => "(-2)".into(),
        None => "(-1)".into(),
    }
}

fn print_finiteness(r: &FinitenessReport, format: Format) {
    match format {
        Format::Json => print_value(r),
        _ => {
            outln!(
                "action {}  scheme {}  conclusion: {}",
                r.action,
                r.scheme,
                r.conclusion
            );
            let mut t = Table::new(&["hypothesis", "status", "detail"]);
            for h in &r.hypotheses {
                let status = serde_json::to_value(h.status)
                    .expect("status")
                    .as_str()
                    .unwrap_or("")
                    .to_string();
                t.row(vec![h.name.clone(), status, h.detail.clone()]);
            }
            t.print();
            let cs: Vec<String> = r
                .contracting_vectors
                .iter()
                .map(|c| c.to_string())
                .collect();
            outln!("contracting vectors: {}", cs.join(" "));
            let opt = |x: Option<usize>| x.map(|c| c.to_string()).unwrap_or_else(|| "none".into());
            outln!("C0 = {}  C1 = {}", opt(r.c0), opt(r.c1));
            if let Some(th) = &r.threshold {
                let ws: Vec<String> = th.witness_vectors.iter().map(|w| w.to_string()).collect();
                outln!(
                    "level {}: witness vectors {}  C = {}",
                    th.level,
                    ws.join(" "),
                    opt(th.witness_c)
                );
                outln!(
                    "rank threshold over achievable vectors up to {}: {}",
                    th.horizon,
                    opt(th.rank_c)
                );
            }
            if r.conclusion == Conclusion::Inconclusive {
                outln!("no conclusion: the checks are sufficient conditions only");
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", json!({ "error": f.kind, "message": f.message }));
            if f.code == USAGE {
                eprintln!("see `thompson --help` for usage");
            }
            ExitCode::from(f.code)
        }
    }
}
