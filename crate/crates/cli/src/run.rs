//! The subcommands, as functions from parsed arguments to output text and
//! an exit code.

use std::fmt::Write as _;
use std::path::Path;

use kites::approx::{embedding_mismatches, hom_defect, Embedding};
use kites::check::format_assignment;
use kites::covers::covers_table;
use kites::structure::{classify, decompose};
use kites::{
    catalog_identity, eval_term, parse_element, parse_identity_file, parse_shape, parse_term, BinOp, CheckReport,
    Element, Identity, KiteError, Shape, ShapeKind,
};

use crate::parallel::par_check;
use crate::report::{to_json, ApproxJson, CheckJson, ClassifyJson, CoversJson, DecomposeJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    Mu,
    Nu,
    NuPrime,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Kite(#[from] KiteError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Kite(KiteError::ShapeMismatch(_))
            | CliError::Kite(KiteError::DimensionMismatch { .. })
            | CliError::Kite(KiteError::InvalidElement(_)) => 3,
            CliError::Kite(KiteError::BudgetExceeded { .. }) => 4,
            _ => 2,
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn outcome(stdout: String, ok: bool) -> Outcome {
    Outcome {
        stdout,
        code: if ok { 0 } else { 1 },
    }
}

fn shape_arg(text: &str) -> Result<Shape, CliError> {
    Ok(parse_shape(text)?)
}

/// Splits `name=literal` bindings and parses each literal against `shape`.
pub fn parse_bindings(shape: &Shape, binds: &[String]) -> Result<Vec<(String, Element)>, CliError> {
    binds
        .iter()
        .map(|b| {
            let (name, lit) = b
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("binding `{b}` is not of the form name=literal")))?;
            Ok((name.trim().to_string(), parse_element(shape, lit.trim())?))
        })
        .collect()
}

pub fn eval(shape: &str, term: &str, binds: &[String], format: Format) -> Result<Outcome, CliError> {
    let shape = shape_arg(shape)?;
    let t = parse_term(term)?;
    let env = parse_bindings(&shape, binds)?;
    let refs: Vec<(&str, Element)> = env.iter().map(|(n, x)| (n.as_str(), x.clone())).collect();
    let v = eval_term(&shape, &t, &refs)?;
    let out = match format {
        Format::Human => format!("{v}\n"),
        Format::Json => format!(
            "{}\n",
            serde_json::json!({ "term": t.to_string(), "value": v.to_string() })
        ),
    };
    Ok(outcome(out, true))
}

/// Catalog name, or else a file of `name : identity` lines.
pub fn load_identities(spec: &str) -> Result<Vec<(String, Identity)>, CliError> {
    if let Ok(id) = catalog_identity(spec) {
        return Ok(vec![(spec.to_string(), id)]);
    }
    let path = Path::new(spec);
    if !path.is_file() {
        return Err(KiteError::UnknownIdentity(spec.to_string()).into());
    }
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: spec.to_string(),
        source,
    })?;
    Ok(parse_identity_file(&text)?)
}

fn human_check(r: &CheckReport) -> String {
    let mut s = format!("{} on {} (M={}): ", r.identity, r.shape, r.bound);
    match &r.counterexample {
        None => write!(s, "holds").unwrap(),
        Some(c) => write!(s, "fails at {}", format_assignment(c)).unwrap(),
    }
    writeln!(s, " [{} evaluations]", r.evaluations).unwrap();
    s
}

pub fn check(
    shape: &str,
    identity: &str,
    bound: u32,
    format: Format,
    workers: usize,
    cap: u64,
) -> Result<Outcome, CliError> {
    let shape = shape_arg(shape)?;
    let ids = load_identities(identity)?;
    let mut out = String::new();
    let mut all = true;
    for (name, id) in &ids {
        let mut r = par_check(&shape, id, bound, cap, workers)?;
        r.identity = name.clone();
        all &= r.holds;
        match format {
            Format::Human => out.push_str(&human_check(&r)),
            Format::Json => {
                out.push_str(&to_json(&CheckJson::from(&r)));
                out.push('\n');
            }
        }
    }
    Ok(outcome(out, all))
}

pub fn classify_cmd(shape: &str, format: Format) -> Result<Outcome, CliError> {
    let s = shape_arg(shape)?;
    let c = classify(&s);
    let out = match format {
        Format::Human => {
            let mut o = format!("{}\n", c.tag);
            if let Some((sigma, tau)) = &c.witness {
                writeln!(o, "sigma = {sigma:?}\ntau = {tau:?}").unwrap();
            }
            writeln!(o, "{}", c.reason).unwrap();
            o
        }
        Format::Json => format!("{}\n", to_json(&ClassifyJson::new(&s.to_string(), &c))),
    };
    Ok(outcome(out, true))
}

pub fn decompose_cmd(shape: &str, bound: u32, format: Format) -> Result<Outcome, CliError> {
    let s = shape_arg(shape)?;
    let d = decompose(&s, bound)?;
    let ok = d.injective && d.preserves_operations();
    let out = match format {
        Format::Human => {
            let mut o = String::new();
            for f in &d.factors {
                writeln!(
                    o,
                    "{}  I={:?} J={:?}  {}",
                    f.classification.tag, f.i_indices, f.j_indices, f.shape
                )
                .unwrap();
            }
            writeln!(
                o,
                "injective: {}  preserves operations: {}  (M={}, {} elements)",
                d.injective,
                d.preserves_operations(),
                d.bound,
                d.grid_size
            )
            .unwrap();
            if let Some((op, x, y)) = &d.violation {
                writeln!(o, "violation: {op} at {x}, {y}").unwrap();
            }
            o
        }
        Format::Json => format!("{}\n", to_json(&DecomposeJson::new(&s.to_string(), &d))),
    };
    Ok(outcome(out, ok))
}

pub fn parse_op(name: &str) -> Result<BinOp, CliError> {
    Ok(match name {
        "meet" | "^" => BinOp::Meet,
        "join" | "v" => BinOp::Join,
        "mul" | "*" => BinOp::Mul,
        "ldiv" | "\\" => BinOp::LDiv,
        "rdiv" | "/" => BinOp::RDiv,
        _ => return Err(CliError::Usage(format!("unknown operation `{name}`"))),
    })
}

fn lookup<'a>(env: &'a [(String, Element)], name: &str) -> Result<&'a Element, CliError> {
    env.iter()
        .find(|(n, _)| n == name)
        .map(|(_, x)| x)
        .ok_or_else(|| KiteError::UnboundVariable(name.to_string()).into())
}

pub fn approx(
    family: Family,
    shape: Option<&str>,
    op: &str,
    binds: &[String],
    levels: usize,
    format: Format,
) -> Result<Outcome, CliError> {
    if levels < 1 {
        return Err(CliError::Usage("--levels must be at least 1".into()));
    }
    let s = match shape {
        Some(t) => shape_arg(t)?,
        None => match family {
            Family::Mu => Shape::zz01(1),
            Family::Nu => Shape::omega01(1),
            Family::NuPrime => Shape::omega10(1),
        },
    };
    let want = match family {
        Family::Mu => ShapeKind::ZZ01,
        Family::Nu => ShapeKind::OmegaOmega01,
        Family::NuPrime => ShapeKind::OmegaOmega10,
    };
    if *s.kind() != want {
        return Err(KiteError::ShapeMismatch(format!("{family:?} needs {want:?}, got {s}")).into());
    }
    let bop = parse_op(op)?;
    let env = parse_bindings(&s, binds)?;
    let (u, w) = (lookup(&env, "u")?, lookup(&env, "w")?);
    let report = match family {
        Family::Mu => ApproxJson::from_sim(bop.name(), &hom_defect(&s, bop, u, w, levels)?),
        Family::Nu | Family::NuPrime => {
            let emb = if family == Family::Nu {
                Embedding::Nu
            } else {
                Embedding::NuPrime
            };
            let bad = embedding_mismatches(emb, &s, bop, u, w, levels)?;
            let diff_sets = (0..=levels)
                .map(|n| if bad.contains(&n) { vec![n as i64] } else { vec![] })
                .collect();
            ApproxJson {
                op: bop.name().to_string(),
                k: bad.is_empty().then_some(0),
                n: levels,
                verified: bad.is_empty(),
                diff_sets,
            }
        }
    };
    let out = match format {
        Format::Human => {
            let mut o = String::new();
            let what = if family == Family::Mu { "diff" } else { "mismatch" };
            for (n, d) in report.diff_sets.iter().enumerate() {
                if family == Family::Mu || !d.is_empty() {
                    writeln!(o, "level {n}: {what} {d:?}").unwrap();
                }
            }
            match report.k {
                Some(k) => writeln!(o, "{} : k = {k}, verified to N = {}", report.op, report.n).unwrap(),
                None => writeln!(o, "{} : no admissible k up to N = {}", report.op, report.n).unwrap(),
            }
            o
        }
        Format::Json => format!("{}\n", to_json(&report)),
    };
    Ok(outcome(out, report.verified))
}

pub fn covers(n_max: usize, bound: u32, format: Format) -> Result<Outcome, CliError> {
    let rows = covers_table(n_max, bound)?;
    let ok = rows
        .iter()
        .all(|r| r.eq3.holds && !r.sharpness.holds && r.separations.iter().all(|s| s.separates()));
    let mut out = String::new();
    match format {
        Format::Human => {
            writeln!(out, "n  exponent  eq3    sharp  separations").unwrap();
            for r in &rows {
                let seps: Vec<String> = r
                    .separations
                    .iter()
                    .map(|s| format!("m={}: {}", s.m, s.value))
                    .collect();
                let row = format!(
                    "{:<2} {:<9} {:<6} {:<6} {}",
                    r.n,
                    r.exponent,
                    r.eq3.holds,
                    !r.sharpness.holds,
                    seps.join(", ")
                );
                writeln!(out, "{}", row.trim_end()).unwrap();
            }
        }
        Format::Json => {
            let rows: Vec<CoversJson> = rows.iter().map(CoversJson::from).collect();
            out = format!("{}\n", to_json(&rows));
        }
    }
    Ok(outcome(out, ok))
}
