//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when one fails, 2 when the
//! arguments are rejected before any check runs.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::Result;
use crate::forms::{quadric_points, standard_form, QuadricKind};
use crate::galois::{Gf2, Gf4};
use crate::pauli::symmetric_set;
use crate::projgeom::{enumerate_points, FieldOrder};
use crate::spreads::{desarguesian_line_spread, is_spread, non_geometric_pair};
use crate::theorems::{
    check_three_to_one, dual_geometry, dye_verify, gq_from_hermitian_surface, main_observation, row_labels,
    three_to_one_table, verify_gq_axioms, VerificationReport,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "pgspread",
    version,
    about = "Verify spread, quadric and Pauli-group constructions over GF(2) and GF(4)"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the points of PG(d, q), q in {2, 4}
    Points {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: u32,
    },
    /// Build the Desarguesian line spread of PG(2n-1, 2)
    Spread {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        check_geometric: bool,
    },
    /// Run a verification pipeline
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Pauli operator listings
    Pauli {
        #[command(subcommand)]
        which: PauliCommand,
    },
    /// Correspondence tables
    Table {
        #[command(subcommand)]
        which: TableCommand,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Spread induced on the Hermitian pullback quadric and its image
    Dye {
        #[arg(long)]
        n: usize,
    },
    /// Symmetric operators against H(n-1, 4), or the counting obstruction
    Main {
        #[arg(long)]
        n: usize,
    },
    /// GQ(4,2) from H(3, 4) and its dual GQ(2,4)
    Gq,
}

#[derive(Subcommand, Debug)]
enum PauliCommand {
    /// All symmetric n-qubit operators
    Table {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum TableCommand {
    /// Points of H(n-1, 4) with their three symmetric operators
    ThreeToOne {
        #[arg(long)]
        n: usize,
    },
}

/// Invocation parameters echoed in every document.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub subcommand: String,
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub q: Option<u32>,
}

/// Everything one invocation reports.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportDocument {
    pub version: String,
    pub params: Params,
    pub checks: Vec<VerificationReport>,
}

impl ReportDocument {
    pub fn new(params: Params, checks: Vec<VerificationReport>) -> Self {
        ReportDocument { version: env!("CARGO_PKG_VERSION").to_string(), params, checks }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(VerificationReport::pass)
    }

    pub fn to_json(&self) -> Value {
        let mut params = Map::new();
        params.insert("subcommand".into(), Value::from(self.params.subcommand.clone()));
        params.insert("n".into(), self.params.n.map_or(Value::Null, Value::from));
        params.insert("d".into(), self.params.d.map_or(Value::Null, Value::from));
        params.insert("q".into(), self.params.q.map_or(Value::Null, Value::from));
        let mut doc = Map::new();
        doc.insert("version".into(), Value::from(self.version.clone()));
        doc.insert("params".into(), Value::Object(params));
        doc.insert("checks".into(), Value::Array(self.checks.iter().map(VerificationReport::to_json).collect()));
        doc.insert("pass".into(), Value::from(self.pass()));
        Value::Object(doc)
    }
}

/// Compact JSON followed by a newline.
pub fn render_json(doc: &ReportDocument) -> Vec<u8> {
    let mut out = doc.to_json().to_string().into_bytes();
    out.push(b'\n');
    out
}

pub fn render_text(doc: &ReportDocument) -> String {
    let p = &doc.params;
    let mut out = format!("pgspread {} {}", doc.version, p.subcommand);
    for (key, value) in [("n", p.n), ("d", p.d), ("q", p.q.map(|q| q as usize))] {
        if let Some(v) = value {
            out.push_str(&format!(" {key}={v}"));
        }
    }
    out.push('\n');
    for check in &doc.checks {
        let status = if check.pass() { "PASS" } else { "FAIL" };
        out.push_str(&format!("[{status}] {}\n", check.name()));
        for (key, value) in check.details() {
            match value {
                Value::Array(items) => {
                    out.push_str(&format!("  {key}:\n"));
                    for item in items {
                        out.push_str(&format!("    {}\n", text_item(item)));
                    }
                }
                other => out.push_str(&format!("  {key}: {}\n", text_item(other))),
            }
        }
        if let Some(w) = check.witness() {
            out.push_str(&format!("  witness: {w}\n"));
        }
    }
    out.push_str(&format!("overall: {}\n", if doc.pass() { "PASS" } else { "FAIL" }));
    out
}

fn text_item(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(text_item).collect::<Vec<_>>().join(" "),
        Value::Object(map) => map.values().map(text_item).collect::<Vec<_>>().join("  "),
        other => other.to_string(),
    }
}

/// Parses `argv` (program name first), runs the command and writes the
/// report to `out`. Diagnostics go to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let doc = match execute(&cli.command) {
        Ok(doc) => doc,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let bytes = match cli.format {
        Format::Json => render_json(&doc),
        Format::Text => render_text(&doc).into_bytes(),
    };
    if out.write_all(&bytes).and_then(|_| out.flush()).is_err() {
        let _ = writeln!(err, "error: could not write the report");
        return EXIT_FAIL;
    }
    if doc.pass() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn execute(cmd: &Command) -> Result<ReportDocument> {
    let mut params = Params::default();
    let checks = match cmd {
        Command::Points { d, q } => {
            params = Params { subcommand: "points".into(), d: Some(*d), q: Some(*q), ..params };
            vec![points_check(*d, *q)?]
        }
        Command::Spread { n, check_geometric } => {
            params = Params { subcommand: "spread".into(), n: Some(*n), ..params };
            spread_checks(*n, *check_geometric)?
        }
        Command::Verify { which: VerifyCommand::Dye { n } } => {
            params = Params { subcommand: "verify dye".into(), n: Some(*n), ..params };
            vec![dye_verify(*n)?]
        }
        Command::Verify { which: VerifyCommand::Main { n } } => {
            params = Params { subcommand: "verify main".into(), n: Some(*n), ..params };
            vec![main_observation(*n)?]
        }
        Command::Verify { which: VerifyCommand::Gq } => {
            params = Params { subcommand: "verify gq".into(), n: Some(4), ..params };
            gq_checks()?
        }
        Command::Pauli { which: PauliCommand::Table { n } } => {
            params = Params { subcommand: "pauli table".into(), n: Some(*n), ..params };
            vec![pauli_check(*n)?]
        }
        Command::Table { which: TableCommand::ThreeToOne { n } } => {
            params = Params { subcommand: "table three-to-one".into(), n: Some(*n), ..params };
            let rows = three_to_one_table(*n)?;
            let dump: Vec<Value> =
                rows.iter().map(|r| json!({"point": r.point.to_string(), "operators": row_labels(r)})).collect();
            vec![check_three_to_one(*n, &rows)?.with_detail("table", dump)]
        }
    };
    Ok(ReportDocument::new(params, checks))
}

fn points_check(d: usize, q: u32) -> Result<VerificationReport> {
    let labels: Vec<Value> = match FieldOrder::try_from(q)? {
        FieldOrder::Two => enumerate_points::<Gf2>(d)?.iter().map(|p| Value::from(p.to_string())).collect(),
        FieldOrder::Four => enumerate_points::<Gf4>(d)?.iter().map(|p| Value::from(p.to_string())).collect(),
    };
    let mut details = Map::new();
    details.insert("d".into(), d.into());
    details.insert("q".into(), q.into());
    details.insert("count".into(), labels.len().into());
    details.insert("points".into(), Value::Array(labels));
    Ok(VerificationReport::passed("points", details))
}

fn spread_checks(n: usize, check_geometric: bool) -> Result<Vec<VerificationReport>> {
    let spread = desarguesian_line_spread(n)?;
    let expected = ((1usize << (2 * n)) - 1) / 3;
    let mut details = Map::new();
    details.insert("n".into(), n.into());
    details.insert("ambient_points".into(), ((1usize << (2 * n)) - 1).into());
    details.insert("lines".into(), spread.len().into());
    details.insert("expected_lines".into(), expected.into());
    let covers = is_spread(spread.lines(), 2 * n - 1);
    details.insert("disjoint_cover".into(), covers.into());
    let mut checks = vec![if covers && spread.len() == expected {
        VerificationReport::passed("spread", details)
    } else {
        VerificationReport::failed("spread", details, json!({"stage": "cover"}))
    }];
    if check_geometric {
        let pairs = spread.len() * (spread.len() - 1) / 2;
        let mut details = Map::new();
        details.insert("n".into(), n.into());
        details.insert("line_pairs".into(), pairs.into());
        checks.push(match non_geometric_pair(&spread) {
            None => VerificationReport::passed("geometric", details),
            Some((i, j)) => VerificationReport::failed(
                "geometric",
                details,
                json!({"stage": "solid", "lines": [spread.lines()[i].to_string(), spread.lines()[j].to_string()]}),
            ),
        });
    }
    Ok(checks)
}

fn gq_checks() -> Result<Vec<VerificationReport>> {
    let gq = gq_from_hermitian_surface()?;
    let dual = dual_geometry(&gq);
    Ok(vec![verify_gq_axioms(&gq).renamed("gq_4_2"), verify_gq_axioms(&dual).renamed("gq_2_4")])
}

fn pauli_check(n: usize) -> Result<VerificationReport> {
    let ops = symmetric_set(n)?;
    let quadric = quadric_points(&standard_form(QuadricKind::Hyperbolic, n)?);
    let same = ops.len() == quadric.len() && ops.iter().zip(&quadric).all(|(o, p)| o.vector() == p.vector());
    let mut details = Map::new();
    details.insert("n".into(), n.into());
    details.insert("count".into(), ops.len().into());
    details.insert("hyperbolic_quadric_points".into(), quadric.len().into());
    details.insert("operators".into(), ops.iter().map(|o| Value::from(o.label())).collect());
    Ok(if same {
        VerificationReport::passed("symmetric_set", details)
    } else {
        VerificationReport::failed("symmetric_set", details, json!({"stage": "quadric"}))
    })
}
