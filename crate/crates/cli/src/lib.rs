//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error, 3 verification
//! failure, 4 budget exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::ops::RangeInclusive;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use descent_poly::formulas::{d_infinity, stabilization_point, Recurrence};
use descent_poly::oracle::{count_prefix_budgeted, EnumerationBudget};
use descent_poly::polybasis::{extract_coeffs, sign_survey};
use descent_poly::suite::{Method, Suite};
use descent_poly::{BigBasisPoly, Count, DescentSet, Error, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "descent", version, about = "Exact descent counts of multiset permutations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count permutations of {1^m..n^m} with descent set I.
    Count(CountArgs),
    /// Evaluate the stabilized polynomial d^inf(I, n).
    Dinf(DinfArgs),
    /// Coefficients of d^inf(I, n) in the basis C(n+k, i).
    Coeffs(CoeffsArgs),
    /// Stabilization point in m, with an observed sweep.
    Stabilize(StabilizeArgs),
    /// Run the cross-check suite over a grid of descent sets.
    Verify(VerifyArgs),
    /// Tabulate d^m(I, n) over ranges of n and m.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Naive,
    Prefix,
    Recurrence,
    JacobiTrudi,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Naive => vec![Method::Naive],
            MethodArg::Prefix => vec![Method::Prefix],
            MethodArg::Recurrence => vec![Method::Recurrence],
            MethodArg::JacobiTrudi => vec![Method::JacobiTrudi],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest n*m enumerated by the naive method.
    #[arg(long, value_name = "N")]
    budget_cells: Option<usize>,
    /// Largest number of search nodes visited by the prefix method.
    #[arg(long, value_name = "N")]
    budget_prefix_states: Option<u64>,
}

impl Common {
    fn budget(&self) -> Result<EnumerationBudget, Error> {
        let d = EnumerationBudget::default();
        EnumerationBudget::new(
            self.budget_cells.unwrap_or(d.max_total_cells),
            self.budget_prefix_states.unwrap_or(d.max_prefix_states),
        )
    }
}

#[derive(Debug, Args)]
struct CountArgs {
    /// Descent set, comma separated (e.g. "2,4,5"); "" is the empty set.
    #[arg(long, value_parser = parse_set, allow_hyphen_values = true)]
    set: DescentSet,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    m: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    method: MethodArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct DinfArgs {
    #[arg(long, value_parser = parse_set)]
    set: DescentSet,
    /// Any integer; the value counts permutations for n >= max(I).
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct CoeffsArgs {
    #[arg(long, value_parser = parse_set)]
    set: DescentSet,
    /// Basis offset: coefficients over C(n+k, i).
    #[arg(long, allow_negative_numbers = true, conflicts_with = "k_range", required_unless_present = "k_range")]
    k: Option<i64>,
    /// Inclusive range of offsets, e.g. "-3..2"; also checks the sign pattern.
    #[arg(long, value_parser = parse_range_i64, allow_hyphen_values = true)]
    k_range: Option<RangeInclusive<i64>>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct StabilizeArgs {
    #[arg(long, value_parser = parse_set)]
    set: DescentSet,
    /// Alphabet size for the sweep (default: longest run + 1).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: Option<u64>,
    /// Last m of the sweep (default: M + 2).
    #[arg(long)]
    m_max: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Check a single descent set instead of the grid.
    #[arg(long, value_parser = parse_set)]
    set: Option<DescentSet>,
    /// Grid: every non-empty subset of {1..max-element}.
    #[arg(long, default_value_t = 4)]
    max_element: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, value_parser = parse_set)]
    set: DescentSet,
    /// Inclusive range of n, e.g. "1..6".
    #[arg(long, value_parser = parse_range_usize)]
    n: RangeInclusive<usize>,
    /// Inclusive range of m, e.g. "1..3".
    #[arg(long, value_parser = parse_range_usize)]
    m: RangeInclusive<usize>,
    #[arg(long, value_enum, default_value_t = MethodArg::Recurrence)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, value_name = "N")]
    budget_cells: Option<usize>,
    #[arg(long, value_name = "N")]
    budget_prefix_states: Option<u64>,
}

fn parse_set(s: &str) -> Result<DescentSet, String> {
    DescentSet::from_str(s).map_err(|e| e.to_string())
}

fn parse_range<T: FromStr + PartialOrd + Copy>(s: &str) -> Result<RangeInclusive<T>, String> {
    let bad = || format!("expected a value or an inclusive range like 1..5, got {s:?}");
    let parse = |x: &str| x.trim().parse::<T>().map_err(|_| bad());
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

fn parse_range_i64(s: &str) -> Result<RangeInclusive<i64>, String> {
    parse_range(s)
}

fn parse_range_usize(s: &str) -> Result<RangeInclusive<usize>, String> {
    let r = parse_range::<usize>(s)?;
    if *r.start() == 0 {
        return Err("range must start at 1 or above".into());
    }
    Ok(r)
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) => EXIT_DOMAIN,
            Error::Budget { .. } => EXIT_BUDGET,
            Error::Internal(_) => EXIT_VERIFY,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure {
            code: EXIT_VERIFY,
            message: format!("serialization failed: {e}"),
        }
    }
}

/// Output produced by a successful command, plus a nonzero exit code when a
/// check inside it failed.
struct Rendered {
    body: String,
    code: i32,
}

impl Rendered {
    fn ok(body: String) -> Self {
        Self { body, code: EXIT_OK }
    }
}

/// Runs the CLI on `args` (including the program name), writing data to `out`
/// and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Count(a) => count(&a, err),
        Command::Dinf(a) => dinf(&a),
        Command::Coeffs(a) => coeffs(&a),
        Command::Stabilize(a) => stabilize(&a),
        Command::Verify(a) => verify(&a),
        Command::Table(a) => table(&a),
    };
    match result {
        Ok(r) => {
            if out.write_all(r.body.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            r.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    Ok(serde_json::to_string(value)? + "\n")
}

#[derive(Serialize)]
struct MethodCount {
    method: &'static str,
    count: Option<String>,
    skipped: Option<String>,
}

#[derive(Serialize)]
struct CountOutput<'a> {
    set: &'a DescentSet,
    n: u64,
    m: u64,
    results: Vec<MethodCount>,
    agree: bool,
}

fn count(a: &CountArgs, err: &mut dyn Write) -> Result<Rendered, Failure> {
    let budget = a.common.budget()?;
    let (n, m) = (a.n as usize, a.m as usize);
    let methods = a.method.methods();
    let explicit = methods.len() == 1;
    let mut results = Vec::new();
    for method in methods {
        match method.count(&a.set, n, m, &budget) {
            Ok(c) => results.push(MethodCount {
                method: method.name(),
                count: Some(c.to_string()),
                skipped: None,
            }),
            Err(e @ (Error::Budget { .. } | Error::Domain(_))) if !explicit => {
                let _ = writeln!(err, "note: {} skipped: {e}", method.name());
                results.push(MethodCount {
                    method: method.name(),
                    count: None,
                    skipped: Some(e.to_string()),
                });
            }
            Err(e) => return Err(e.into()),
        }
    }
    let mut computed = results.iter().filter_map(|r| r.count.as_ref());
    let first = computed.next().cloned();
    let agree = computed.all(|c| Some(c) == first.as_ref());
    if first.is_none() {
        return Err(Failure {
            code: EXIT_BUDGET,
            message: "no method could compute this count within its limits".into(),
        });
    }
    let body = match a.common.format {
        Format::Json => to_json(&CountOutput {
            set: &a.set,
            n: a.n,
            m: a.m,
            results,
            agree,
        })?,
        Format::Csv => {
            let mut s = String::from("method,count\n");
            for r in &results {
                let _ = writeln!(s, "{},{}", r.method, r.count.as_deref().unwrap_or(""));
            }
            s
        }
        Format::Text => {
            let mut s = format!("d^{}({}, {})\n", a.m, a.set, a.n);
            for r in &results {
                match (&r.count, &r.skipped) {
                    (Some(c), _) => {
                        let _ = writeln!(s, "  {:<13}{c}", r.method);
                    }
                    (None, Some(why)) => {
                        let _ = writeln!(s, "  {:<13}skipped ({why})", r.method);
                    }
                    _ => {}
                }
            }
            if results.len() > 1 {
                s.push_str(if agree { "all methods agree\n" } else { "DISAGREEMENT between methods\n" });
            }
            s
        }
    };
    Ok(Rendered {
        body,
        code: if agree { EXIT_OK } else { EXIT_VERIFY },
    })
}

#[derive(Serialize)]
struct DinfOutput<'a> {
    set: &'a DescentSet,
    n: i64,
    value: String,
}

fn dinf(a: &DinfArgs) -> Result<Rendered, Failure> {
    let value = d_infinity(&a.set, &BigInt::from(a.n))?;
    let body = match a.common.format {
        Format::Json => to_json(&DinfOutput {
            set: &a.set,
            n: a.n,
            value: value.to_string(),
        })?,
        Format::Csv => format!("n,value\n{},{value}\n", a.n),
        Format::Text => format!("{value}\n"),
    };
    Ok(Rendered::ok(body))
}

#[derive(Serialize)]
struct CoeffsOutput {
    k: i64,
    coeffs: Vec<String>,
}

impl From<&BigBasisPoly> for CoeffsOutput {
    fn from(p: &BigBasisPoly) -> Self {
        Self {
            k: p.offset(),
            coeffs: p.coeffs().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Serialize)]
struct CoeffsRangeOutput {
    bases: Vec<CoeffsOutput>,
    sign_pattern_holds: bool,
}

fn coeffs(a: &CoeffsArgs) -> Result<Rendered, Failure> {
    let (range, survey) = match (&a.k_range, a.k) {
        (Some(r), _) => (r.clone(), true),
        (None, Some(k)) => (k..=k, false),
        (None, None) => unreachable!("clap requires --k or --k-range"),
    };
    let polys = range
        .clone()
        .map(|k| extract_coeffs::<BigInt>(&a.set, k))
        .collect::<Result<Vec<_>, _>>()?;
    let sign_ok = if survey {
        sign_survey(&a.set, *range.start(), *range.end())?.passed()
    } else {
        true
    };
    let body = match a.common.format {
        Format::Json if !survey => to_json(&CoeffsOutput::from(&polys[0]))?,
        Format::Json => to_json(&CoeffsRangeOutput {
            bases: polys.iter().map(CoeffsOutput::from).collect(),
            sign_pattern_holds: sign_ok,
        })?,
        Format::Csv => {
            let mut s = String::from("k,i,coeff\n");
            for p in &polys {
                for (i, c) in p.coeffs().iter().enumerate() {
                    let _ = writeln!(s, "{},{i},{c}", p.offset());
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for p in &polys {
                let cs: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "k = {}: {}", p.offset(), cs.join(" "));
            }
            if survey {
                let verdict = if sign_ok { "holds" } else { "FAILS" };
                let _ = writeln!(s, "sign pattern (k <= -1 nonnegative, k >= 0 some negative): {verdict}");
            }
            s
        }
    };
    Ok(Rendered {
        body,
        code: if sign_ok { EXIT_OK } else { EXIT_VERIFY },
    })
}

#[derive(Serialize)]
struct SweepPoint {
    m: usize,
    count: String,
}

#[derive(Serialize)]
struct StabilizeOutput<'a> {
    set: &'a DescentSet,
    #[serde(rename = "M")]
    stabilization_point: usize,
    n: usize,
    sweep: Vec<SweepPoint>,
    observed: Option<usize>,
    agrees: bool,
}

fn stabilize(a: &StabilizeArgs) -> Result<Rendered, Failure> {
    let budget = a.common.budget()?;
    let big_m = stabilization_point(&a.set)?;
    let run = a.set.longest_run()?;
    let n = a.n.map_or(run + 1, |n| n as usize);
    let m_max = a.m_max.unwrap_or(big_m + 2).max(1);
    let counts = (1..=m_max)
        .map(|m| count_prefix_budgeted(&a.set, n, m, &budget))
        .collect::<Result<Vec<Count>, _>>()?;
    // Smallest m after which the sweep is constant; only meaningful when
    // the sweep extends past it.
    let last = counts.last().expect("m_max >= 1");
    let observed = counts.iter().position(|c| c == last).map(|i| i + 1).filter(|&m| m < m_max);
    // The exact point is only guaranteed for n >= L + 1 and a sweep reaching M + 1.
    let checkable = n > run && m_max > big_m;
    let agrees = !checkable || observed == Some(big_m);
    let sweep: Vec<SweepPoint> = counts
        .iter()
        .enumerate()
        .map(|(i, c)| SweepPoint {
            m: i + 1,
            count: c.to_string(),
        })
        .collect();
    let body = match a.common.format {
        Format::Json => to_json(&StabilizeOutput {
            set: &a.set,
            stabilization_point: big_m,
            n,
            sweep,
            observed,
            agrees,
        })?,
        Format::Csv => {
            let mut s = String::from("n,m,count\n");
            for p in &sweep {
                let _ = writeln!(s, "{n},{},{}", p.m, p.count);
            }
            s
        }
        Format::Text => {
            let mut s = format!("M = {big_m}\nsweep at n = {n}:\n");
            for p in &sweep {
                let _ = writeln!(s, "  m = {:<3} {}", p.m, p.count);
            }
            match observed {
                Some(o) => {
                    let _ = writeln!(s, "observed stabilization at m = {o}");
                }
                None => s.push_str("sweep too short to observe stabilization\n"),
            }
            if !agrees {
                s.push_str("MISMATCH with M\n");
            }
            s
        }
    };
    Ok(Rendered {
        body,
        code: if agrees { EXIT_OK } else { EXIT_VERIFY },
    })
}

fn verify(a: &VerifyArgs) -> Result<Rendered, Failure> {
    let budget = a.common.budget()?;
    let suite = match &a.set {
        Some(s) => Suite::single(s.clone(), budget),
        None => {
            if a.max_element == 0 || a.max_element > 8 {
                return Err(Failure {
                    code: EXIT_USAGE,
                    message: "--max-element must lie in 1..=8".into(),
                });
            }
            Suite::grid(a.max_element, budget)
        }
    };
    let reports = suite.run()?;
    let passed = reports.iter().all(Report::passed);
    let body = match a.common.format {
        Format::Json => to_json(&reports)?,
        Format::Csv => {
            let mut s = String::from("report,claim,case,expected,actual,pass\n");
            for r in &reports {
                for c in &r.checks {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{}",
                        csv_field(&r.title),
                        c.claim,
                        csv_field(&c.case),
                        csv_field(&c.expected),
                        csv_field(&c.actual),
                        c.pass
                    );
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let _ = write!(s, "{r}");
            }
            let total: usize = reports.iter().map(|r| r.checks.len()).sum();
            let failed: usize = reports.iter().map(|r| r.failures().count()).sum();
            let _ = writeln!(s, "{} checks, {failed} failed", total);
            s
        }
    };
    Ok(Rendered {
        body,
        code: if passed { EXIT_OK } else { EXIT_VERIFY },
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Serialize)]
struct TableRow {
    n: usize,
    m: usize,
    count: String,
}

#[derive(Serialize)]
struct TableOutput<'a> {
    set: &'a DescentSet,
    rows: Vec<TableRow>,
}

fn table(a: &TableArgs) -> Result<Rendered, Failure> {
    let d = EnumerationBudget::default();
    let budget = EnumerationBudget::new(
        a.budget_cells.unwrap_or(d.max_total_cells),
        a.budget_prefix_states.unwrap_or(d.max_prefix_states),
    )?;
    let methods = a.method.methods();
    let mut rec = Recurrence::new();
    let mut rows = Vec::new();
    for n in a.n.clone() {
        for m in a.m.clone() {
            let mut value: Option<Count> = None;
            for &method in &methods {
                let c = match method {
                    Method::Recurrence => rec.descent_count(&a.set, n, m),
                    // n*m <= max(I) leaves no room for the descents.
                    Method::JacobiTrudi if a.set.max_element().is_some_and(|t| n * m <= t) => {
                        Ok(Count::default())
                    }
                    other => other.count(&a.set, n, m, &budget),
                }?;
                match &value {
                    Some(v) if *v != c => {
                        return Err(Failure {
                            code: EXIT_VERIFY,
                            message: format!(
                                "methods disagree at n={n}, m={m}: {v} vs {c} ({method})"
                            ),
                        })
                    }
                    _ => value = Some(c),
                }
            }
            rows.push(TableRow {
                n,
                m,
                count: value.expect("at least one method").to_string(),
            });
        }
    }
    let body = match a.format {
        Format::Json => to_json(&TableOutput { set: &a.set, rows })?,
        Format::Csv | Format::Text => {
            let mut s = String::from("n,m,count\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{}", r.n, r.m, r.count);
            }
            s
        }
    };
    Ok(Rendered::ok(body))
}
