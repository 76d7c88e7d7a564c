// SPDX-License-Identifier: Apache-2.0
//! The `axlab` command line.
//!
//! Exit codes: 0 success, 1 a requested check failed, 2 bad input or parameters,
//! 3 classification returned Unknown.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::algebra::LinearMap;
use crate::catalog::{complete_params, construct, construct_unchecked, validity, FamilyId, FamilyParams, Validity};
use crate::classify::{classify, ClassificationMatch, Invariants, Verdict};
use crate::doc::{AlgebraDocument, Loaded};
use crate::error::{Error, Result};
use crate::field::{parse_scalar, Field, Scalar};
use crate::verify::{verify, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "axlab", version, about = "Construct, verify and classify 2-generated axial algebras of Majorana type")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long)]
    pub n: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a catalog algebra and write its document.
    Construct {
        #[arg(long)]
        family: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check the axioms and identities of a document.
    Verify {
        path: PathBuf,
        #[arg(long)]
        full: bool,
        #[arg(long)]
        axis_only: bool,
        #[arg(long)]
        seress: bool,
        #[arg(long)]
        eq1_window: Option<usize>,
    },
    /// Identify a document against the classification table.
    Classify { path: PathBuf },
    /// Construct and verify a family over a parameter grid, writing CSV.
    Scan {
        #[arg(long)]
        family: String,
        /// Each parameter is a scalar or a grid lo..hi/den (numerators lo..=hi over den).
        #[command(flatten)]
        params: ParamArgs,
        /// Branch of IV1 (i, ii) or IV2 (i, ii, iii); fills the dependent parameters.
        #[arg(long)]
        branch: Option<String>,
        #[arg(long, default_value = "Q")]
        field: String,
        /// Also verify rows that fail the validity rules.
        #[arg(long)]
        force: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// List the catalog families and their validity rules.
    Families,
}

fn input_err(e: impl std::fmt::Display) -> i32 {
    eprintln!("error: {e}");
    EXIT_INPUT
}

fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut s = std::io::stdout().lock();
            s.write_all(text.as_bytes())?;
            s.write_all(b"\n")
        }
    }
}

pub fn parse_params(p: &ParamArgs, f: Field) -> Result<FamilyParams> {
    let sc = |v: &Option<String>| v.as_deref().map(|t| parse_scalar(t, f)).transpose();
    Ok(FamilyParams { xi: sc(&p.xi)?, eta: sc(&p.eta)?, alpha: sc(&p.alpha)?, mu: sc(&p.mu)?, n: p.n })
}

fn load(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
    AlgebraDocument::from_json(&text)?.load()
}

/// Runs the command line; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Construct { family, params, field, out } => cmd_construct(&family, &params, &field, out.as_deref()),
        Command::Verify { path, full, axis_only, seress, eq1_window } => {
            let mut opts = VerifyOptions { axis_only, seress: full || seress, ..Default::default() };
            if let Some(w) = eq1_window {
                opts.window = w;
            }
            cmd_verify(&path, &opts)
        }
        Command::Classify { path } => cmd_classify(&path),
        Command::Scan { family, params, branch, field, force, out } => {
            cmd_scan(&family, &params, branch.as_deref(), &field, force, out.as_deref())
        }
        Command::Families => cmd_families(),
    }
}

pub fn cmd_construct(family: &str, params: &ParamArgs, field: &str, out: Option<&Path>) -> i32 {
    let (fam, f) = match (family.parse::<FamilyId>(), field.parse::<Field>()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return input_err(e),
    };
    let p = match parse_params(params, f) {
        Ok(p) => p,
        Err(e) => return input_err(e),
    };
    match construct(fam, &p, f) {
        Ok(inst) => match emit(out, &AlgebraDocument::from_instance(&inst).to_json()) {
            Ok(()) => EXIT_OK,
            Err(e) => input_err(e),
        },
        Err(Error::InvalidParams(reasons)) => {
            for r in &reasons {
                eprintln!("invalid: {r}");
            }
            EXIT_INPUT
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAILED
        }
    }
}

pub fn cmd_verify(path: &Path, opts: &VerifyOptions) -> i32 {
    let l = match load(path) {
        Ok(l) => l,
        Err(e) => return input_err(e),
    };
    let rep = verify(&l.algebra, &l.a0, &l.a1, &l.params, opts);
    let _ = emit(None, &serde_json::to_string_pretty(&rep).expect("report serializes"));
    if rep.passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn matrix_rows(m: &LinearMap) -> Vec<Vec<String>> {
    m.row_vecs().iter().map(|r| r.iter().map(Scalar::to_string).collect()).collect()
}

#[derive(Serialize)]
struct ClassifyReport<'a> {
    verdict: &'static str,
    family: Option<String>,
    family_params: Option<&'a FamilyParams>,
    diagnostics: Vec<String>,
    invariants: &'a Invariants,
    iso: Option<Vec<Vec<String>>>,
}

pub fn classify_report(inv: &Invariants, m: &ClassificationMatch) -> serde_json::Value {
    let (verdict, family, family_params, diagnostics) = match &m.verdict {
        Verdict::JordanType { .. } => ("JordanType", None, None, vec![]),
        Verdict::ZQuotient => ("ZQuotient", None, None, vec![]),
        Verdict::Family(id, p) => ("Family", Some(id.name().to_string()), Some(p), vec![]),
        Verdict::Unknown(d) => ("Unknown", None, None, d.clone()),
    };
    let r = ClassifyReport { verdict, family, family_params, diagnostics, invariants: inv, iso: m.iso.as_ref().map(matrix_rows) };
    serde_json::to_value(&r).expect("report serializes")
}

pub fn cmd_classify(path: &Path) -> i32 {
    let l = match load(path) {
        Ok(l) => l,
        Err(e) => return input_err(e),
    };
    match classify(&l.algebra, &l.a0, &l.a1, &l.params) {
        Ok((inv, m)) => {
            let _ = emit(None, &serde_json::to_string_pretty(&classify_report(&inv, &m)).expect("json"));
            if matches!(m.verdict, Verdict::Unknown(_)) {
                EXIT_UNKNOWN
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            eprintln!("verification failed: {e}");
            EXIT_FAILED
        }
    }
}

/// A scalar or the grid lo..hi/den.
fn grid(text: &str, f: Field) -> Result<Vec<Scalar>> {
    let Some((range, den)) = text.split_once('/').filter(|(r, _)| r.contains("..")) else {
        return Ok(vec![parse_scalar(text, f)?]);
    };
    let (lo, hi) = range.split_once("..").expect("checked");
    let num = |s: &str| s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("grid bound {s:?}")));
    let (lo, hi, den) = (num(lo)?, num(hi)?, num(den)?);
    if den == 0 || hi < lo {
        return Err(Error::Parse(format!("empty grid {text:?}")));
    }
    // Numerators whose fraction is undefined in the field are skipped.
    Ok((lo..=hi).filter_map(|k| f.frac(k, den).ok()).collect())
}

fn axis_of(text: &Option<String>, f: Field) -> Result<Vec<Option<Scalar>>> {
    match text {
        None => Ok(vec![None]),
        Some(t) => Ok(grid(t, f)?.into_iter().map(Some).collect()),
    }
}

pub fn scan_points(fam: FamilyId, p: &ParamArgs, branch: Option<&str>, f: Field) -> Result<Vec<FamilyParams>> {
    let mut points = Vec::new();
    let half = f.frac(1, 2)?;
    for xi in axis_of(&p.xi, f)? {
        for eta in axis_of(&p.eta, f)? {
            for alpha in axis_of(&p.alpha, f)? {
                for mu in axis_of(&p.mu, f)? {
                    let mut q = FamilyParams { xi: xi.clone(), eta: eta.clone(), alpha: alpha.clone(), mu, n: p.n };
                    match (fam, branch) {
                        (_, None) => {}
                        (FamilyId::IV1, Some("i")) => q.xi = Some(f.frac(1, 4)?),
                        (FamilyId::IV1, Some("ii")) => q.eta = q.xi.as_ref().map(|x| x / 2),
                        (FamilyId::IV2, Some("i")) => q.xi = Some(half.clone()),
                        (FamilyId::IV2, Some("ii")) => q.eta = q.xi.as_ref().map(|x| x.square() / 2),
                        (FamilyId::IV2, Some("iii")) => q.eta = q.xi.as_ref().map(|x| (-x.square() + 1) / 2),
                        (_, Some(b)) => return Err(Error::Parse(format!("{fam} has no branch {b:?}"))),
                    }
                    points.push(complete_params(fam, &q, f));
                }
            }
        }
    }
    Ok(points)
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub family: String,
    pub field: String,
    pub xi: String,
    pub eta: String,
    pub alpha: String,
    pub mu: String,
    pub n: String,
    pub valid: bool,
    pub verified: bool,
    #[serde(rename = "D")]
    pub axial_dim: String,
    pub d: String,
    pub group_order: String,
    pub elapsed_ms: u128,
    pub note: String,
}

fn opt(s: &Option<Scalar>) -> String {
    s.as_ref().map(Scalar::to_string).unwrap_or_default()
}

pub fn scan_row(fam: FamilyId, p: &FamilyParams, f: Field, force: bool) -> ScanRow {
    let start = Instant::now();
    let v = validity(fam, p, f);
    let mut row = ScanRow {
        family: fam.name().into(),
        field: f.to_string(),
        xi: opt(&p.xi),
        eta: opt(&p.eta),
        alpha: opt(&p.alpha),
        mu: opt(&p.mu),
        n: p.n.map(|n| n.to_string()).unwrap_or_default(),
        valid: v.is_valid(),
        verified: false,
        axial_dim: String::new(),
        d: String::new(),
        group_order: String::new(),
        elapsed_ms: 0,
        note: String::new(),
    };
    if let Validity::Invalid(r) = &v {
        row.note = r.join("; ");
    }
    if row.valid || force {
        match construct_unchecked(fam, p, f) {
            Ok(inst) => {
                // The fusion parameters of a derived-η family are the instance's own.
                row.eta = inst.params.eta.to_string();
                let rep = verify(&inst.algebra, &inst.a0(), &inst.a1(), &inst.params, &VerifyOptions::default());
                row.verified = rep.passed;
                row.d = inst.algebra.dim().to_string();
                row.axial_dim = rep.axial_dimension.map(|d| d.to_string()).unwrap_or_default();
                row.group_order = match rep.group_order {
                    Some(crate::axial::GroupOrder::Finite(m)) => m.to_string(),
                    Some(crate::axial::GroupOrder::Unbounded(l)) => format!(">{l}"),
                    None => String::new(),
                };
                if !rep.passed {
                    let mut why: Vec<String> = Vec::new();
                    for a in &rep.axes {
                        if let Some(w) = a.failures.first() {
                            why.push(format!("{}: fusion {} ⋆ {} gives {}", a.axis, w.alpha.label(), w.beta.label(), w.offending.label()));
                        }
                        if let Some(e) = &a.error {
                            why.push(format!("{}: {e}", a.axis));
                        }
                    }
                    why.extend(rep.flip_error.clone());
                    why.extend(rep.error.clone());
                    if !row.note.is_empty() {
                        why.insert(0, row.note.clone());
                    }
                    row.note = why.join("; ");
                }
            }
            Err(e) => row.note = if row.note.is_empty() { e.to_string() } else { format!("{}; {e}", row.note) },
        }
    }
    row.elapsed_ms = start.elapsed().as_millis();
    row
}

/// Rayon pool honouring AXLAB_THREADS.
pub fn pool() -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var("AXLAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        b = b.num_threads(n);
    }
    b.build().expect("thread pool")
}

pub fn cmd_scan(family: &str, params: &ParamArgs, branch: Option<&str>, field: &str, force: bool, out: Option<&Path>) -> i32 {
    let (fam, f) = match (family.parse::<FamilyId>(), field.parse::<Field>()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return input_err(e),
    };
    let points = match scan_points(fam, params, branch, f) {
        Ok(p) => p,
        Err(e) => return input_err(e),
    };
    let rows: Vec<ScanRow> = pool().install(|| points.par_iter().map(|p| scan_row(fam, p, f, force)).collect());
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        w.serialize(r).expect("csv row");
    }
    let text = String::from_utf8(w.into_inner().expect("csv flush")).expect("utf-8");
    let written = match out {
        Some(p) => std::fs::write(p, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        return input_err(e);
    }
    if !rows.is_empty() && rows.iter().all(|r| !r.verified) {
        EXIT_FAILED
    } else {
        EXIT_OK
    }
}

pub fn cmd_families() -> i32 {
    let list: Vec<serde_json::Value> = FamilyId::ALL
        .into_iter()
        .map(|id| {
            let i = id.info();
            let needs: Vec<&str> = [("xi", i.needs.xi), ("eta", i.needs.eta), ("alpha", i.needs.alpha), ("mu", i.needs.mu), ("n", i.needs.n)]
                .into_iter()
                .filter_map(|(k, b)| b.then_some(k))
                .collect();
            json!({
                "name": id.name(),
                "algebra": i.display,
                "params": needs,
                "D": i.dims.map(|d| d.0),
                "d": i.dims.map(|d| d.1),
                "quotient_of": i.parent.map(|p| p.name()),
                "validity": i.rule,
            })
        })
        .collect();
    let _ = emit(None, &serde_json::to_string_pretty(&list).expect("json"));
    EXIT_OK
}
