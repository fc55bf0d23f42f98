//! The `frobnc` command line: checks, generators, point counts, censuses,
//! line incidence, blocking sets, and the verification suites.
//!
//! Exit codes: 0 success, 2 verification failure, 3 input error, 4 budget
//! error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::analysis::{
    best_smoothness, blocking_verdict, census, has_rational_linear_component, line_incidence,
    normal_form_match, point_count_report, separated_variables_detect, smoothness, AnalysisError,
    CensusConfig, CensusFilter, KnownProperties, NormalFormClause, Shard, SmoothnessMode,
};
use crate::families::{self, FamilyError, FamilyInstance, FAMILY_IDS};
use crate::frobcore::{is_hermitian_hypersurface, multi_fn_profile};
use crate::gf::{make_field, Elem, Field, Matrix};
use crate::mpoly::{parse_elem, parse_file, parse_poly, write_file, HomogPoly};

pub mod suites;

pub use suites::{run_suite, SubCheck, SuiteReport, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Budget(String),
    #[error("unknown suite {0}; known suites: {1}")]
    UnknownSuite(String, String),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => EXIT_VERIFICATION,
            CliError::Budget(_) => EXIT_BUDGET,
            _ => EXIT_INPUT,
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

macro_rules! input_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        }
    )*};
}
input_errors!(
    FamilyError,
    crate::frobcore::FrobError,
    crate::mpoly::PolyError,
    crate::gf::GfError,
    serde_json::Error
);

#[derive(Parser, Debug)]
#[command(name = "frobnc", version, about = "Frobenius nonclassical hypersurfaces over finite fields")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for point enumeration and censuses.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Include elapsed time in reports.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify, count, and test smoothness of each polynomial in a file.
    Check {
        file: PathBuf,
        /// Extension degrees m for classification over F_{q^m} and counts.
        #[arg(long, value_delimiter = ',')]
        ext: Vec<u32>,
    },
    /// Generate a member of a family; parameters are key=value pairs.
    Gen {
        family: String,
        params: Vec<String>,
        /// Write the polynomial file here and the manifest next to it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Manifest path (default: <out>.manifest.json).
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Check every asserted property.
        #[arg(long)]
        verify: bool,
    },
    /// Count points over F_q and the requested extensions.
    Points {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        ext: Vec<u32>,
    },
    /// Exhaustive census of normalized forms, as JSON lines.
    Census {
        #[arg(long, required_unless_present = "merge")]
        p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, required_unless_present = "merge")]
        d: Option<u32>,
        /// Comma-separated: fn, not-pth-power, reduced, no-linear-component,
        /// smooth-at-rational, smooth.
        #[arg(long, default_value = "")]
        filter: String,
        /// Shard i/N of the candidate range.
        #[arg(long)]
        shard: Option<String>,
        /// Maximum candidates per run.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Merge shard outputs instead of running a census.
        #[arg(long, num_args = 1.., conflicts_with_all = ["p", "d", "shard"])]
        merge: Vec<PathBuf>,
    },
    /// Classify every F_q-line against a plane curve.
    Lines {
        file: PathBuf,
        /// List every line with its class.
        #[arg(long)]
        all_lines: bool,
    },
    /// Blocking-set verdict and Heim's bound.
    Blocking { file: PathBuf },
    /// Run a verification suite, or `all`.
    Verify { suite: String },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    if let Some(t) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let start = Instant::now();
    let (name, mut report, code) = match &cli.command {
        Command::Check { file, ext } => ("check", cmd_check(file, ext)?, EXIT_OK),
        Command::Points { file, ext } => ("points", cmd_points(file, ext)?, EXIT_OK),
        Command::Lines { file, all_lines } => ("lines", cmd_lines(file, *all_lines)?, EXIT_OK),
        Command::Blocking { file } => ("blocking", cmd_blocking(file)?, EXIT_OK),
        Command::Gen {
            family,
            params,
            out: path,
            manifest,
            verify,
        } => {
            let (rep, text, ok) = cmd_gen(family, params, path.as_deref(), manifest.as_deref(), *verify)?;
            if !cli.json && path.is_none() {
                write_out(out, &text)?;
                for line in to_text(&rep).lines() {
                    write_out(out, &format!("# {line}\n"))?;
                }
                return Ok(if ok { EXIT_OK } else { EXIT_VERIFICATION });
            }
            ("gen", rep, if ok { EXIT_OK } else { EXIT_VERIFICATION })
        }
        Command::Census {
            p,
            k,
            n,
            d,
            filter,
            shard,
            budget,
            out: path,
            merge,
        } => {
            let text = if merge.is_empty() {
                cmd_census(p.unwrap(), *k, *n, d.unwrap(), filter, shard.as_deref(), *budget)?
            } else {
                merge_census(merge)?
            };
            match path {
                Some(p) => fs::write(p, text).map_err(|e| CliError::Io(p.display().to_string(), e))?,
                None => write_out(out, &text)?,
            }
            return Ok(EXIT_OK);
        }
        Command::Verify { suite } => {
            let (rep, ok) = cmd_verify(suite)?;
            if cli.json {
                write_out(out, &format!("{}\n", serde_json::to_string_pretty(&rep)?))?;
            } else {
                for s in rep["suites"].as_array().into_iter().flatten() {
                    write_out(out, &s["text"].as_str().unwrap_or_default().to_string())?;
                }
            }
            return Ok(if ok { EXIT_OK } else { EXIT_VERIFICATION });
        }
    };
    if let Value::Object(m) = &mut report {
        m.insert("command".into(), json!(name));
        m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        if cli.timing {
            m.insert("elapsed_ms".into(), json!(start.elapsed().as_millis() as u64));
        }
    }
    let text = if cli.json {
        format!("{}\n", serde_json::to_string_pretty(&report)?)
    } else {
        to_text(&report)
    };
    write_out(out, &text)?;
    Ok(code)
}

fn write_out(out: &mut dyn Write, s: &str) -> Result<(), CliError> {
    out.write_all(s.as_bytes())
        .map_err(|e| CliError::Io("output".into(), e))
}

/// Renders a report as indented `key: value` lines.
pub fn to_text(v: &Value) -> String {
    let mut s = String::new();
    render(v, 0, &mut s);
    s
}

fn render(v: &Value, indent: usize, s: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        s.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, s);
                    }
                    _ => s.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if is_flat(x) {
                    s.push_str(&format!("{pad}- {}\n", scalar(x)));
                } else {
                    s.push_str(&format!("{pad}-\n"));
                    render(x, indent + 1, s);
                }
            }
        }
        other => s.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(m) => m.is_empty(),
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) => a.iter().map(scalar).collect::<Vec<_>>().join(", "),
        Value::Object(_) => "{}".into(),
        other => other.to_string(),
    }
}

fn read_polys(file: &Path) -> Result<(Field, usize, Vec<HomogPoly>, String), CliError> {
    let text = fs::read_to_string(file).map_err(|e| CliError::Io(file.display().to_string(), e))?;
    let pf = parse_file(&text)?;
    if pf.polys.is_empty() {
        return Err(CliError::Input(format!("{}: no polynomials", file.display())));
    }
    if let Some(z) = pf.polys.iter().position(|p| p.is_zero()) {
        return Err(CliError::Input(format!("polynomial {} is zero", z + 1)));
    }
    let canonical = write_file(&pf.field, pf.n, &pf.polys);
    Ok((pf.field, pf.n, pf.polys, canonical))
}

fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn input_json(file: &Path, field: &Field, n: usize, canonical: &str) -> Value {
    json!({
        "file": file.display().to_string(),
        "field": field.header(),
        "n": n,
        "digest": format!("sha256:{}", digest(canonical)),
    })
}

fn known_properties(poly: &HomogPoly) -> Result<KnownProperties, CliError> {
    let q = poly.field().order() as u64;
    Ok(KnownProperties {
        frobenius_nonclassical: crate::frobcore::is_frobenius_nonclassical(poly, q)?.nonclassical,
        reduced: poly.is_reduced()?,
        smooth_at_rational: smoothness(poly, SmoothnessMode::RationalOnly)?.smooth,
        smooth: {
            let v = best_smoothness(poly, 3)?;
            v.smooth && v.exact
        },
        no_rational_linear_component: !has_rational_linear_component(poly)?,
    })
}

fn check_one(poly: &HomogPoly, ext: &[u32]) -> Result<Value, CliError> {
    let field = poly.field();
    let q = field.order() as u64;
    let mut degrees = vec![1];
    degrees.extend_from_slice(ext);
    degrees.sort_unstable();
    degrees.dedup();
    let profile = multi_fn_profile(poly, q, &degrees)?;
    let classification: Vec<Value> = profile
        .iter()
        .map(|(m, c)| {
            let mut v = c.to_json();
            v["m"] = json!(m);
            v
        })
        .collect();
    let smooth = best_smoothness(poly, 3)?;
    let known = known_properties(poly)?;
    let points = point_count_report(poly, &degrees, known)?;
    let mut normal_forms = Vec::new();
    for clause in NormalFormClause::all() {
        match normal_form_match(poly, clause) {
            Ok(v) => normal_forms.push(v.to_json()),
            Err(AnalysisError::DegreeMismatch { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    let hermitian = match field.sqrt_order() {
        Some(s) if poly.degree() == s as u64 + 1 => Some(is_hermitian_hypersurface(poly, q)?.to_json()),
        _ => None,
    };
    Ok(json!({
        "polynomial": poly.to_string(),
        "degree": poly.degree(),
        "classification": classification,
        "pth_power": poly.is_pth_power(),
        "reduced": known.reduced,
        "smoothness": smooth.to_json(),
        "points": points.to_json(),
        "separated_variables": separated_variables_detect(poly).map(|s| s.to_json()),
        "normal_forms": normal_forms,
        "hermitian": hermitian,
    }))
}

fn cmd_check(file: &Path, ext: &[u32]) -> Result<Value, CliError> {
    let (field, n, polys, canonical) = read_polys(file)?;
    let results = polys
        .iter()
        .map(|p| check_one(p, ext))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json!({
        "input": input_json(file, &field, n, &canonical),
        "results": results,
    }))
}

fn cmd_points(file: &Path, ext: &[u32]) -> Result<Value, CliError> {
    let (field, n, polys, canonical) = read_polys(file)?;
    let results = polys
        .iter()
        .map(|p| {
            let known = known_properties(p)?;
            let rep = point_count_report(p, ext, known)?;
            let mut v = rep.to_json();
            v["polynomial"] = json!(p.to_string());
            Ok(v)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(json!({
        "input": input_json(file, &field, n, &canonical),
        "results": results,
    }))
}

fn cmd_lines(file: &Path, all_lines: bool) -> Result<Value, CliError> {
    let (field, n, polys, canonical) = read_polys(file)?;
    let results = polys
        .iter()
        .map(|p| {
            let smooth = {
                let v = best_smoothness(p, 3)?;
                v.smooth && v.exact
            };
            let rep = line_incidence(p, smooth, p.is_reduced()?)?;
            let mut v = rep.to_json(all_lines);
            v["polynomial"] = json!(p.to_string());
            Ok(v)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(json!({
        "input": input_json(file, &field, n, &canonical),
        "results": results,
    }))
}

fn cmd_blocking(file: &Path) -> Result<Value, CliError> {
    let (field, n, polys, canonical) = read_polys(file)?;
    let results = polys
        .iter()
        .map(|p| {
            let mut v = blocking_verdict(p)?.to_json();
            v["polynomial"] = json!(p.to_string());
            Ok(v)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(json!({
        "input": input_json(file, &field, n, &canonical),
        "results": results,
    }))
}

fn cmd_verify(suite: &str) -> Result<(Value, bool), CliError> {
    let ids: Vec<&str> = if suite == "all" {
        SUITES.iter().map(|(s, _)| *s).collect()
    } else {
        vec![suite]
    };
    let mut reports = Vec::new();
    for id in ids {
        let rep = run_suite(id).ok_or_else(|| {
            CliError::UnknownSuite(
                id.to_string(),
                SUITES.iter().map(|(s, _)| *s).collect::<Vec<_>>().join(", "),
            )
        })?;
        reports.push(rep);
    }
    let ok = reports.iter().all(|r| r.passed());
    let suites: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut v = r.to_json();
            v["text"] = json!(r.to_text());
            v
        })
        .collect();
    Ok((json!({ "passed": ok, "suites": suites }), ok))
}

fn cmd_census(
    p: u64,
    k: u32,
    n: usize,
    d: u32,
    filter: &str,
    shard: Option<&str>,
    budget: Option<u64>,
) -> Result<String, CliError> {
    let field = make_field(p, k, None)?;
    let filters = CensusFilter::parse_list(filter)?;
    let mut cfg = CensusConfig::new(&field, n, d, &filters);
    if let Some(s) = shard {
        cfg = cfg.with_shard(s.parse::<Shard>()?);
    }
    if let Some(b) = budget {
        cfg = cfg.with_budget(b);
    }
    let mut text = String::new();
    let summary = census(&cfg, |r| {
        text.push_str(&r.to_json().to_string());
        text.push('\n');
    })?;
    text.push_str(&summary.to_json().to_string());
    text.push('\n');
    Ok(text)
}

/// Concatenates shard outputs: hits sorted by index, summaries combined.
/// The shards must cover `0/N .. N-1/N` exactly once.
pub fn merge_census(files: &[PathBuf]) -> Result<String, CliError> {
    let mut hits: Vec<(u64, Value)> = Vec::new();
    let mut summaries: Vec<Value> = Vec::new();
    for f in files {
        let text = fs::read_to_string(f).map_err(|e| CliError::Io(f.display().to_string(), e))?;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let v: Value = serde_json::from_str(line)?;
            if let Some(s) = v.get("summary") {
                summaries.push(s.clone());
            } else {
                let idx = v["index"]
                    .as_u64()
                    .ok_or_else(|| CliError::Input(format!("{}: record without index", f.display())))?;
                hits.push((idx, v));
            }
        }
    }
    let first = summaries
        .first()
        .ok_or_else(|| CliError::Input("no census summaries to merge".into()))?
        .clone();
    let key = |s: &Value| {
        ["field", "n", "d", "filters"]
            .iter()
            .map(|k| s[*k].to_string())
            .collect::<Vec<_>>()
    };
    let mut seen = Vec::new();
    let mut total_shards = None;
    let (mut candidates, mut nhits) = (0u64, 0u64);
    let mut by_flags: BTreeMap<String, u64> = BTreeMap::new();
    for s in &summaries {
        if key(s) != key(&first) {
            return Err(CliError::Input("summaries come from different censuses".into()));
        }
        let shard: Shard = s["shard"].as_str().unwrap_or_default().parse()?;
        if *total_shards.get_or_insert(shard.total) != shard.total {
            return Err(CliError::Input("shards of different totals".into()));
        }
        seen.push(shard.index);
        candidates += s["candidates"].as_u64().unwrap_or(0);
        nhits += s["hits"].as_u64().unwrap_or(0);
        if let Some(m) = s["by_flags"].as_object() {
            for (k, v) in m {
                *by_flags.entry(k.clone()).or_insert(0) += v.as_u64().unwrap_or(0);
            }
        }
    }
    seen.sort_unstable();
    let total = total_shards.unwrap();
    if seen != (0..total).collect::<Vec<_>>() {
        return Err(CliError::Input(format!("shards {seen:?} do not cover 0..{total} exactly once")));
    }
    if nhits != hits.len() as u64 {
        return Err(CliError::Input("hit count does not match the summaries".into()));
    }
    hits.sort_by_key(|(i, _)| *i);
    let mut summary = first;
    summary["shard"] = json!(Shard::WHOLE.to_string());
    summary["candidates"] = json!(candidates);
    summary["hits"] = json!(nhits);
    summary["by_flags"] = json!(by_flags);
    let mut text = String::new();
    for (_, v) in hits {
        text.push_str(&v.to_string());
        text.push('\n');
    }
    text.push_str(&json!({ "summary": summary }).to_string());
    text.push('\n');
    Ok(text)
}

type Params = BTreeMap<String, String>;

fn parse_params(params: &[String]) -> Result<Params, CliError> {
    params
        .iter()
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| CliError::Input(format!("parameter {kv} is not key=value")))
        })
        .collect()
}

fn get<T: std::str::FromStr>(ps: &Params, key: &str) -> Result<Option<T>, CliError> {
    ps.get(key)
        .map(|v| {
            v.parse::<T>()
                .map_err(|_| CliError::Input(format!("bad value {v} for {key}")))
        })
        .transpose()
}

fn need<T: std::str::FromStr>(ps: &Params, key: &str) -> Result<T, CliError> {
    get(ps, key)?.ok_or_else(|| CliError::Input(format!("missing parameter {key}")))
}

/// `F_q` from its order.
pub fn field_of_order(q: u64) -> Result<Field, CliError> {
    let p = (2..=q)
        .find(|d| q % d == 0)
        .ok_or_else(|| CliError::Input(format!("q = {q} is not a prime power")))?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    if r != 1 {
        return Err(CliError::Input(format!("q = {q} is not a prime power")));
    }
    Ok(make_field(p, k, None)?)
}

/// Number of variables used in a polynomial text: one more than the
/// largest index after an `x`.
fn infer_nvars(text: &str) -> usize {
    let b = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'x' {
            let mut j = i + 1;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(v) = text[i + 1..j].parse::<usize>() {
                best = best.max(v + 1);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    best.max(1)
}

fn parse_matrix(text: &str, field: &Field) -> Result<Matrix, CliError> {
    let rows = text
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|c| parse_elem(c.trim(), field))
                .collect::<Result<Vec<Elem>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Input(format!("matrix {text} is not square")));
    }
    Ok(Matrix::from_rows(field, &rows))
}

fn poly_param(ps: &Params, key: &str, field: &Field, nvars: Option<usize>) -> Result<HomogPoly, CliError> {
    let text: String = need(ps, key)?;
    let nv = nvars.unwrap_or_else(|| infer_nvars(&text));
    Ok(parse_poly(&text, field, nv)?)
}

/// Builds the family member described by `family` and `key=value` params.
pub fn build_family(family: &str, params: &[String]) -> Result<FamilyInstance, CliError> {
    let ps = parse_params(params)?;
    let q_field = || -> Result<Field, CliError> { field_of_order(need(&ps, "q")?) };
    let inst = match family {
        "space-filling" => families::gen_space_filling(&q_field()?, get(&ps, "n")?.unwrap_or(3))?,
        "skew-form" => {
            let f = q_field()?;
            match ps.get("matrix") {
                Some(m) => families::gen_skew_form(&parse_matrix(m, &f)?)?,
                None => {
                    let n: usize = need(&ps, "n")?;
                    if n % 2 == 0 {
                        return Err(FamilyError::OddSize(n + 1).into());
                    }
                    let mut inst = families::gen_skew_form(&families::standard_symplectic(&f, n + 1))?;
                    inst.id = "skew-form";
                    inst
                }
            }
        }
        "hermitian" => {
            let f = q_field()?;
            match ps.get("matrix") {
                Some(m) => families::gen_hermitian_from_matrix(&parse_matrix(m, &f)?)?,
                None => {
                    let n: usize = need(&ps, "n")?;
                    families::gen_hermitian(&f, n, get(&ps, "r")?.unwrap_or(n))?
                }
            }
        }
        "char2-even" => match ps.get("builtin").map(String::as_str) {
            Some("f4") => families::char2_even_f4()?,
            Some(other) => return Err(CliError::Input(format!("unknown builtin {other}"))),
            None => {
                let f = q_field()?;
                let g = poly_param(&ps, "g", &f, get(&ps, "n")?.map(|n: usize| n + 1))?;
                let b = parse_matrix(&need::<String>(&ps, "b")?, &f)?;
                families::gen_char2_even_n(&g, &b)?
            }
        },
        "q-plus-2" => match ps.get("builtin") {
            Some(b) => families::q_plus_2_builtin(b)?,
            None => {
                let f = q_field()?;
                families::gen_q_plus_2(&poly_param(&ps, "g", &f, Some(3))?)?
            }
        },
        "norm-pointless" => {
            let base = q_field()?;
            let n: usize = need(&ps, "n")?;
            match ps.get("basis") {
                Some(b) => {
                    let ext = base.extension(n as u32 + 1)?;
                    let basis = b
                        .split(',')
                        .map(|e| parse_elem(e.trim(), &ext))
                        .collect::<Result<Vec<_>, _>>()?;
                    if basis.len() != n + 1 {
                        return Err(CliError::Input(format!("basis needs {} elements", n + 1)));
                    }
                    families::gen_norm_hypersurface(&base, &ext, &basis)?
                }
                None => families::norm_hypersurface_default(&base, n)?,
            }
        }
        "diagonal-pointless" => families::gen_pointless_diagonal(&q_field()?, need(&ps, "n")?)?,
        "separated" => {
            if let Some(r) = get::<u32>(&ps, "fermat")? {
                let base = q_field()?;
                families::gen_fermat_type(base.characteristic() as u64, base.degree(), r, need(&ps, "n")?)?
            } else {
                let f = q_field()?;
                let g = poly_param(&ps, "g", &f, None)?;
                let h = poly_param(&ps, "h", &f, None)?;
                families::gen_separated(&g, &h)?
            }
        }
        other => {
            return Err(CliError::Input(format!(
                "unknown family {other}; known families: {}",
                FAMILY_IDS.join(", ")
            )))
        }
    };
    Ok(inst)
}

fn cmd_gen(
    family: &str,
    params: &[String],
    out: Option<&Path>,
    manifest_path: Option<&Path>,
    verify: bool,
) -> Result<(Value, String, bool), CliError> {
    let inst = build_family(family, params)?;
    let field = inst.poly.field().clone();
    let text = write_file(&field, inst.poly.nvars() - 1, std::slice::from_ref(&inst.poly));
    let mut manifest = inst.manifest();
    let mut ok = true;
    if verify {
        let checks = inst.verify()?;
        ok = checks.iter().all(|c| c.passed);
        manifest["verification"] = json!(checks
            .iter()
            .map(|c| json!({"property": c.property.to_string(), "passed": c.passed, "detail": c.detail}))
            .collect::<Vec<_>>());
    }
    if let Some(p) = out {
        fs::write(p, &text).map_err(|e| CliError::Io(p.display().to_string(), e))?;
        let mp = manifest_path
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from(format!("{}.manifest.json", p.display())));
        let body = format!("{}\n", serde_json::to_string_pretty(&manifest)?);
        fs::write(&mp, body).map_err(|e| CliError::Io(mp.display().to_string(), e))?;
    } else if let Some(mp) = manifest_path {
        let body = format!("{}\n", serde_json::to_string_pretty(&manifest)?);
        fs::write(mp, body).map_err(|e| CliError::Io(mp.display().to_string(), e))?;
    }
    Ok((json!({ "file": text, "manifest": manifest }), text, ok))
}
