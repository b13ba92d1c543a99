//! Command-line front end.
//!
//! Exit codes: 0 success, 2 invalid input, 3 verification failure,
//! 4 soundness violation.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{
    builtin_spherical_code, check_cap_constraint_at, check_pfender, explicit_code_report,
    max_inner_product, parse_points, two_point_distribution, CapReport, DistanceDistribution,
    PfenderReport,
};
use crate::constructions::{
    builtin_code, code_params, construction_a_contacts, construction_b_contacts,
    construction_report, BinaryCode, ConstructionKind,
};
use crate::error::{Error, Result};
use crate::geometric::{coxeter_boroczky_bound, fejes_toth_cardinality};
use crate::levenshtein::levenshtein_bound;
use crate::lp::{
    default_lp_degree, lp_search, verify_theorem1, verify_theorem1_exact, DEFAULT_GRID,
};
use crate::musin::{musin_polynomial_search, MusinConfig, SearchParams};
use crate::polynomials::{parse_rational, RationalPolynomial};
use crate::report::{BoundReport, Method};
use crate::tables::{known_table, reconcile, table_csv, Reconciliation, TableRow, TAU5_ANNOTATION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;
pub const EXIT_SOUNDNESS: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "kissing",
    version,
    about = "Certified bounds for kissing numbers and spherical codes"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for randomized searches.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Quadrature tolerance.
    #[arg(long, default_value_t = 1e-6, global = true)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Upper bounds on A(n, s).
    Upper(UpperArgs),
    /// Lower bounds from constructions or explicit codes.
    Lower(LowerArgs),
    /// Delsarte check of a polynomial file.
    Verify(VerifyArgs),
    /// Distance distribution and moment inequalities of a point set.
    Analyze(AnalyzeArgs),
    /// Best known kissing-number bounds for n <= 24.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Levenshtein,
    Lp,
    Cb,
    Ft,
    Musin,
    All,
}

#[derive(Args, Debug)]
pub struct UpperArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub s: f64,
    #[arg(long, value_enum)]
    pub method: MethodArg,
    /// LP polynomial degree (default depends on n).
    #[arg(long)]
    pub degree: Option<usize>,
    /// LP sample grid size.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    /// Cap parameter for the musin method.
    #[arg(long, allow_hyphen_values = true)]
    pub t0: Option<f64>,
    /// Cap capacity for the musin method.
    #[arg(long)]
    pub mu: Option<usize>,
    #[arg(long, default_value_t = 50)]
    pub restarts: usize,
    #[arg(long, default_value_t = 2000)]
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructionArg {
    A,
    B,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["code", "code_file", "spherical_code"])))]
pub struct LowerArgs {
    #[arg(long, value_enum, required_unless_present = "spherical_code")]
    pub construction: Option<ConstructionArg>,
    /// Builtin binary code, e.g. golay24 or even_weight(5).
    #[arg(long)]
    pub code: Option<String>,
    /// File with one 0/1 codeword per line.
    #[arg(long)]
    pub code_file: Option<PathBuf>,
    /// Builtin spherical code, e.g. e8_roots.
    #[arg(long, conflicts_with = "construction")]
    pub spherical_code: Option<String>,
    /// Enumerate the contact vectors and check them (length <= 12).
    #[arg(long)]
    pub contacts: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// One monomial coefficient per line, ascending degree.
    #[arg(long)]
    pub poly_file: PathBuf,
    #[arg(long)]
    pub n: usize,
    /// Accepts decimals or p/q; read exactly in `--exact` mode.
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    /// Decide the conditions in exact rational arithmetic.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub points_file: PathBuf,
    /// Check the Pfender inequality at this s.
    #[arg(long)]
    pub pfender: Option<f64>,
    /// Check the cap constraint for capacity M at threshold T.
    #[arg(long, num_args = 2, value_names = ["M", "T"])]
    pub cap: Option<Vec<String>>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Compare computed bounds against the table.
    #[arg(long)]
    pub reconcile: bool,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SoundnessViolation { .. } => EXIT_SOUNDNESS,
        Error::ConditionA1Violated { .. }
        | Error::ConditionA2Violated { .. }
        | Error::ConditionB1Violated { .. }
        | Error::ConditionB2Violated { .. }
        | Error::ConditionB3Violated { .. }
        | Error::KernelConstructionFailure { .. }
        | Error::PostVerificationFailed(_)
        | Error::InfeasibleLp
        | Error::UnboundedLp
        | Error::MaxIterationsExceeded(_)
        | Error::NoRealRoot
        | Error::Degenerate(_) => EXIT_VERIFICATION,
        _ => EXIT_INVALID,
    }
}

/// Parses `args` (program name first), runs the command and writes its
/// output to `out`. Diagnostics go to stderr.
pub fn run(args: &[String], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            if e.use_stderr() {
                eprint!("{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Upper(a) => upper(cli, a, out),
        Command::Lower(a) => lower(cli, a, out),
        Command::Verify(a) => verify(cli, a, out),
        Command::Analyze(a) => analyze(cli, a, out),
        Command::Table(a) => table(cli, a, out),
    }
}

fn json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

const REPORT_CSV_HEADER: &str = "method,n,s,value,floor,rigorous";

fn report_csv(r: &BoundReport) -> String {
    format!(
        "{},{},{},{},{},{}",
        r.method.tag(),
        r.n,
        r.s,
        r.value,
        r.floor_value.map_or(String::new(), |v| v.to_string()),
        r.rigorous
    )
}

fn report_text(r: &BoundReport) -> String {
    let rel = if r.method == Method::Construction {
        ">="
    } else {
        "<="
    };
    format!(
        "{:<17} A({}, {}) {rel} {:.9}  floor {}  {}",
        r.method.tag(),
        r.n,
        r.s,
        r.value,
        r.floor_value.map_or("-".to_string(), |v| v.to_string()),
        if r.rigorous {
            "rigorous"
        } else {
            "non-rigorous"
        }
    )
}

fn write_reports(format: Format, reports: &[BoundReport], out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => json(out, &reports)?,
        Format::Csv => {
            writeln!(out, "{REPORT_CSV_HEADER}")?;
            for r in reports {
                writeln!(out, "{}", report_csv(r))?;
            }
        }
        Format::Text => {
            for r in reports {
                writeln!(out, "{}", report_text(r))?;
            }
        }
    }
    Ok(())
}

fn musin_config(cli: &Cli, a: &UpperArgs) -> Result<MusinConfig> {
    let base = match (a.t0, a.mu) {
        (Some(t0), Some(mu)) => MusinConfig::new(a.n, a.s, t0, mu)?,
        (None, None) if a.s == 0.5 => MusinConfig::kissing_defaults(a.n)?,
        _ => {
            return Err(Error::PreconditionViolated(
                "musin needs both --t0 and --mu (defaults exist only for n = 3, 4 at s = 0.5)"
                    .into(),
            ))
        }
    };
    Ok(base.with_search(SearchParams {
        restarts: a.restarts,
        iterations: a.iterations,
        seed: cli.seed,
    }))
}

fn run_method(cli: &Cli, a: &UpperArgs, m: MethodArg) -> Result<BoundReport> {
    match m {
        MethodArg::Levenshtein => levenshtein_bound(a.n, a.s),
        MethodArg::Lp => lp_search(a.n, a.s, a.degree.unwrap_or(default_lp_degree(a.n)), a.grid),
        MethodArg::Cb => coxeter_boroczky_bound(a.n, a.s, cli.tol),
        MethodArg::Ft if a.n == 3 => fejes_toth_cardinality(a.s),
        MethodArg::Ft => Err(Error::UnsupportedConfiguration(format!(
            "the Fejes Toth bound is for n = 3, got n = {}",
            a.n
        ))),
        MethodArg::Musin => {
            let config = musin_config(cli, a)?;
            musin_polynomial_search(&config, a.degree.unwrap_or(9), 2000).map(|(_, r)| r)
        }
        MethodArg::All => unreachable!("expanded by the caller"),
    }
}

const MUSIN_CAVEAT: &str =
    "note: cap maxima h_m without a closed form come from a local search, so the musin bound is not rigorous";

#[derive(Serialize)]
struct AllReports<'a> {
    reports: &'a [BoundReport],
    best: Option<&'a BoundReport>,
}

fn upper(cli: &Cli, a: &UpperArgs, out: &mut dyn Write) -> Result<i32> {
    if a.method != MethodArg::All {
        let r = run_method(cli, a, a.method)?;
        write_reports(cli.format, std::slice::from_ref(&r), out)?;
        if !r.rigorous && cli.format == Format::Text && r.method == Method::Musin {
            writeln!(out, "{MUSIN_CAVEAT}")?;
        }
        return Ok(EXIT_OK);
    }
    let mut methods = vec![MethodArg::Levenshtein, MethodArg::Lp, MethodArg::Cb];
    if a.n == 3 {
        methods.push(MethodArg::Ft);
    }
    if (a.t0.is_some() && a.mu.is_some()) || (a.s == 0.5 && (a.n == 3 || a.n == 4)) {
        methods.push(MethodArg::Musin);
    }
    let mut reports = Vec::new();
    let mut first_err = None;
    for m in methods {
        match run_method(cli, a, m) {
            Ok(r) => reports.push(r),
            Err(e) => {
                eprintln!("{m:?}: {e}");
                first_err.get_or_insert(e);
            }
        }
    }
    if reports.is_empty() {
        return Err(first_err.unwrap_or(Error::InfeasibleLp));
    }
    reports.sort_by_key(|r| r.method.tag());
    let best = reports
        .iter()
        .filter(|r| r.rigorous)
        .min_by(|x, y| x.value.total_cmp(&y.value));
    match cli.format {
        Format::Json => json(
            out,
            &AllReports {
                reports: &reports,
                best,
            },
        )?,
        Format::Csv => {
            writeln!(out, "{REPORT_CSV_HEADER},role")?;
            for r in &reports {
                writeln!(out, "{},report", report_csv(r))?;
            }
            if let Some(b) = best {
                writeln!(out, "{},best", report_csv(b))?;
            }
        }
        Format::Text => {
            write_reports(Format::Text, &reports, out)?;
            if reports
                .iter()
                .any(|r| r.method == Method::Musin && !r.rigorous)
            {
                writeln!(out, "{MUSIN_CAVEAT}")?;
            }
            match best {
                Some(b) => writeln!(
                    out,
                    "best rigorous upper bound: A({}, {}) <= {} ({})",
                    b.n,
                    b.s,
                    b.floor_value.unwrap_or(0),
                    b.method.tag()
                )?,
                None => writeln!(out, "best rigorous upper bound: none")?,
            }
        }
    }
    Ok(EXIT_OK)
}

fn load_code(a: &LowerArgs) -> Result<(BinaryCode, String)> {
    if let Some(name) = &a.code {
        return Ok((builtin_code(name)?, name.clone()));
    }
    let path = a
        .code_file
        .as_ref()
        .ok_or_else(|| Error::PreconditionViolated("no code given".into()))?;
    let text = std::fs::read_to_string(path)?;
    Ok((BinaryCode::parse(&text)?, path.display().to_string()))
}

/// Largest cosine between distinct integer vectors.
fn max_cosine(vectors: &[Vec<i32>]) -> f64 {
    let norm = |v: &[i32]| v.iter().map(|&x| (x * x) as f64).sum::<f64>().sqrt();
    let mut best = f64::NEG_INFINITY;
    for (i, u) in vectors.iter().enumerate() {
        for w in &vectors[i + 1..] {
            let dot: i32 = u.iter().zip(w).map(|(a, b)| a * b).sum();
            best = best.max(dot as f64 / (norm(u) * norm(w)));
        }
    }
    best
}

#[derive(Serialize)]
struct ContactCheck {
    count: usize,
    max_inner_product: f64,
    matches: bool,
}

#[derive(Serialize)]
struct LowerOutput {
    report: BoundReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    contacts: Option<ContactCheck>,
}

fn lower(cli: &Cli, a: &LowerArgs, out: &mut dyn Write) -> Result<i32> {
    let (report, contacts) = if let Some(name) = &a.spherical_code {
        let code = builtin_spherical_code(name)?;
        (explicit_code_report(&code, name)?, None)
    } else {
        let (code, source) = load_code(a)?;
        let kind = match a.construction {
            Some(ConstructionArg::B) => ConstructionKind::B,
            _ => ConstructionKind::A,
        };
        let report = construction_report(&code, kind, &source)?;
        let contacts = if a.contacts {
            let vectors = match kind {
                ConstructionKind::A => construction_a_contacts(&code)?,
                ConstructionKind::B => construction_b_contacts(&code)?,
            };
            let s = max_cosine(&vectors);
            Some(ContactCheck {
                count: vectors.len(),
                max_inner_product: s,
                matches: Some(vectors.len() as u64) == report.floor_value && s <= 0.5 + 1e-12,
            })
        } else {
            None
        };
        if cli.format == Format::Text {
            let p = code_params(&code, None);
            writeln!(
                out,
                "code {source}: length {}, size {}, minimum distance {}",
                p.n,
                p.m,
                p.d.map_or("-".to_string(), |d| d.to_string())
            )?;
        }
        (report, contacts)
    };
    let failed = contacts.as_ref().is_some_and(|c| !c.matches);
    match cli.format {
        Format::Json => json(out, &LowerOutput { report, contacts })?,
        Format::Csv => {
            writeln!(
                out,
                "{REPORT_CSV_HEADER},contacts,contact_max_inner_product"
            )?;
            let (count, s) = contacts
                .as_ref()
                .map_or((String::new(), String::new()), |c| {
                    (c.count.to_string(), c.max_inner_product.to_string())
                });
            writeln!(out, "{},{count},{s}", report_csv(&report))?;
        }
        Format::Text => {
            writeln!(out, "{}", report_text(&report))?;
            if let Some(c) = &contacts {
                writeln!(
                    out,
                    "contact vectors: {} with max inner product {:.12} ({})",
                    c.count,
                    c.max_inner_product,
                    if c.matches { "ok" } else { "MISMATCH" }
                )?;
            }
        }
    }
    Ok(if failed { EXIT_VERIFICATION } else { EXIT_OK })
}

fn verify(cli: &Cli, a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let text = std::fs::read_to_string(&a.poly_file)?;
    let p = RationalPolynomial::parse(&text)?;
    let report = if a.exact {
        let s = parse_rational(&a.s)?;
        verify_theorem1_exact(a.n, &s, &p)?.to_report()
    } else {
        let s: f64 =
            a.s.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad s `{}`", a.s)))?;
        verify_theorem1(a.n, s, &p.to_polynomial())?
    };
    match cli.format {
        Format::Json => json(out, &report.certificate)?,
        _ => write_reports(cli.format, std::slice::from_ref(&report), out)?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct Analysis {
    n: usize,
    size: usize,
    max_inner_product: f64,
    distribution: DistanceDistribution,
    #[serde(skip_serializing_if = "Option::is_none")]
    pfender: Option<PfenderReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cap: Option<CapReport>,
}

fn analyze(cli: &Cli, a: &AnalyzeArgs, out: &mut dyn Write) -> Result<i32> {
    let text = std::fs::read_to_string(&a.points_file)?;
    let code = parse_points(&text)?;
    let s = max_inner_product(&code)?;
    let distribution = two_point_distribution(&code)?;
    let pfender = a.pfender.map(|ps| check_pfender(&code, ps)).transpose()?;
    let cap = match &a.cap {
        Some(v) => {
            let m: usize = v[0]
                .parse()
                .map_err(|_| Error::Parse(format!("bad M `{}`", v[0])))?;
            let t: f64 = v[1]
                .parse()
                .map_err(|_| Error::Parse(format!("bad T `{}`", v[1])))?;
            Some(check_cap_constraint_at(&code, m, t)?)
        }
        None => None,
    };
    let failed =
        pfender.as_ref().is_some_and(|p| !p.holds) || cap.as_ref().is_some_and(|c| !c.holds);
    let result = Analysis {
        n: code.dim(),
        size: code.len(),
        max_inner_product: s,
        distribution,
        pfender,
        cap,
    };
    match cli.format {
        Format::Json => json(out, &result)?,
        Format::Csv => {
            writeln!(out, "t,a_t")?;
            for (t, at) in &result.distribution.buckets {
                writeln!(out, "{t},{at}")?;
            }
        }
        Format::Text => {
            writeln!(
                out,
                "dimension {}, size {}, max inner product {:.12}",
                result.n, result.size, s
            )?;
            writeln!(
                out,
                "distance distribution ({} values):",
                result.distribution.buckets.len()
            )?;
            for (t, at) in &result.distribution.buckets {
                writeln!(out, "  {t:>16.12}  {at:.6}")?;
            }
            if let Some(p) = &result.pfender {
                writeln!(
                    out,
                    "pfender at s = {}: s_2 = {:.9} <= {:.9} ({})",
                    p.s,
                    p.s2,
                    p.rhs,
                    if p.holds { "holds" } else { "VIOLATED" }
                )?;
            }
            if let Some(c) = &result.cap {
                writeln!(
                    out,
                    "cap m = {}, t = {}: s_0 = {:.9} <= {} ({})",
                    c.m,
                    c.t,
                    c.s0,
                    c.limit,
                    if c.holds { "holds" } else { "VIOLATED" }
                )?;
            }
        }
    }
    Ok(if failed { EXIT_VERIFICATION } else { EXIT_OK })
}

/// Rigorous reports the library can produce quickly for dimension `n` at
/// `s = 1/2`: the Levenshtein bound (plus Fejes Tóth for `n = 3`) and
/// lower bounds from the builtin codes.
pub fn default_reports(n: usize) -> Result<Vec<BoundReport>> {
    let mut reports = vec![levenshtein_bound(n, 0.5)?];
    if n == 3 {
        reports.push(fejes_toth_cardinality(0.5)?);
    }
    if n <= 16 {
        let name = format!("even_weight({n})");
        reports.push(construction_report(
            &builtin_code(&name)?,
            ConstructionKind::A,
            &name,
        )?);
    }
    let explicit: &[&str] = match n {
        3 => &["icosahedron"],
        4 => &["d4_roots"],
        8 => &["e8_roots"],
        24 => &["leech_min"],
        _ => &[],
    };
    for name in explicit {
        reports.push(explicit_code_report(&builtin_spherical_code(name)?, name)?);
    }
    match n {
        8 => reports.push(construction_report(
            &builtin_code("ext_hamming8")?,
            ConstructionKind::A,
            "ext_hamming8",
        )?),
        24 => reports.push(construction_report(
            &builtin_code("golay24")?,
            ConstructionKind::B,
            "golay24",
        )?),
        _ => {}
    }
    Ok(reports)
}

#[derive(Serialize)]
struct TableOutput<'a> {
    rows: &'a [TableRow],
    annotations: [crate::tables::Annotation; 1],
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

fn table(cli: &Cli, a: &TableArgs, out: &mut dyn Write) -> Result<i32> {
    if !a.reconcile {
        match cli.format {
            Format::Csv => write!(out, "{}", table_csv())?,
            Format::Json => json(
                out,
                &TableOutput {
                    rows: known_table(),
                    annotations: [TAU5_ANNOTATION],
                },
            )?,
            Format::Text => {
                writeln!(
                    out,
                    "{:>3}  {:>8}  {:>8}  {:<16}  upper source",
                    "n", "lower", "upper", "lower source"
                )?;
                for r in known_table() {
                    writeln!(
                        out,
                        "{:>3}  {:>8}  {:>8}  {:<16}  {}",
                        r.dimension,
                        r.lower,
                        r.upper,
                        r.lower_source.tag(),
                        r.upper_source.tag()
                    )?;
                }
                writeln!(
                    out,
                    "note: tau_{} <= {} ({}), so tau_5 <= 44",
                    TAU5_ANNOTATION.dimension,
                    TAU5_ANNOTATION.upper,
                    TAU5_ANNOTATION.source.tag()
                )?;
            }
        }
        return Ok(EXIT_OK);
    }
    let mut rows: Vec<Reconciliation> = Vec::new();
    for r in known_table() {
        rows.push(reconcile(r.dimension, &default_reports(r.dimension)?)?);
    }
    match cli.format {
        Format::Json => json(out, &rows)?,
        Format::Csv => {
            writeln!(
                out,
                "dimension,lower,upper,computed_lower,computed_upper,lower_delta,upper_delta"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.dimension,
                    r.known.lower,
                    r.known.upper,
                    opt(r.computed_lower),
                    opt(r.computed_upper),
                    opt(r.lower_delta),
                    opt(r.upper_delta)
                )?;
            }
        }
        Format::Text => {
            writeln!(
                out,
                "{:>3}  {:>8}  {:>8}  {:>9}  {:>9}  {:>7}  {:>7}  upper method",
                "n", "lower", "upper", "our low", "our up", "dlower", "dupper"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{:>3}  {:>8}  {:>8}  {:>9}  {:>9}  {:>7}  {:>7}  {}",
                    r.dimension,
                    r.known.lower,
                    r.known.upper,
                    opt(r.computed_lower),
                    opt(r.computed_upper),
                    opt(r.lower_delta),
                    opt(r.upper_delta),
                    r.upper_method.map_or("-", |m| m.tag())
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let mut argv = vec!["kissing".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        let mut out = Vec::new();
        let code = run(&argv, &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            call(&["upper", "--n", "2", "--s", "0.5", "--method", "levenshtein"]).0,
            EXIT_INVALID
        );
        assert_eq!(call(&["bogus"]).0, EXIT_INVALID);
        assert_eq!(
            call(&["upper", "--n", "4", "--s", "0.5", "--method", "ft"]).0,
            EXIT_INVALID
        );
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn levenshtein_and_lower_text() {
        let (code, out) = call(&["upper", "--n", "8", "--s", "0.5", "--method", "levenshtein"]);
        assert_eq!(code, 0);
        assert!(out.contains("floor 240"), "{out}");
        let (code, out) = call(&[
            "lower",
            "--construction",
            "a",
            "--code",
            "ext_hamming8",
            "--contacts",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("floor 240") && out.contains("(ok)"), "{out}");
    }

    #[test]
    fn json_is_deterministic() {
        let args = [
            "--format", "json", "upper", "--n", "4", "--s", "0.5", "--method", "all",
        ];
        let (c1, a) = call(&args);
        let (c2, b) = call(&args);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["best"]["floor_value"], 25);
    }

    #[test]
    fn table_csv_output() {
        let (code, out) = call(&["--format", "csv", "table"]);
        assert_eq!(code, 0);
        assert_eq!(out, table_csv());
    }
}
