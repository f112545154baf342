//! The `rmcover` command line.
//!
//! Everything except process setup lives here so that it can be driven from
//! tests: [`run`] takes the argument list and a writer and returns the exit
//! code.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bounds::{
    asymptotic_display, best_upper_bound, certified_upper_bounds, kappa_entropy_curve,
    kappa_points, lb_ball_covering, BoundValue, Regime, Side,
};
use crate::cover::{cover, CoverOptions, CoverPath};
use crate::error::{invalid, Error, Result};
use crate::exact::{closed_form_exact, exact_rt_geometric, exact_rt_lifted, exact_rt_span, Caps};
use crate::gf2::{BitMatrix, BitVector};
use crate::planner::Planner;
use crate::rm::rm;
use crate::selftest::{run_selftest, SelftestConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

/// Largest `m` for which `bounds` also computes the ball-covering lower bound.
const BALL_COVERING_MAX_M: usize = 16;
/// Largest `m_max` accepted by `kappa`.
const KAPPA_MAX_M: usize = 20;
/// Entropy-curve samples emitted by `kappa`.
const CURVE_SAMPLES: usize = 101;

#[derive(Debug, Parser)]
#[command(
    name = "rmcover",
    version,
    about = "Generalized covering radii of Reed-Muller codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Raise every brute-force cap to this many bits.
    #[arg(long = "cap-override", global = true)]
    pub cap_override: Option<usize>,
    /// Worker threads for the parallel searches. Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    #[value(alias = "rt1")]
    Geometric,
    #[value(alias = "rt2")]
    Span,
    #[value(alias = "rt3")]
    Lifted,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every applicable bound on R_t(r, m).
    Bounds {
        #[arg(long = "t")]
        t: usize,
        #[arg(long = "r")]
        r: usize,
        #[arg(long = "m")]
        m: usize,
    },
    /// Exact R_t(r, m) by brute force.
    Exact {
        #[arg(long = "t")]
        t: usize,
        #[arg(long = "r")]
        r: usize,
        #[arg(long = "m")]
        m: usize,
        #[arg(long, value_enum, default_value_t = Method::Geometric)]
        method: Method,
    },
    /// Decode a t x 2^m matrix to a nearby element of RM(r, m)^t.
    Cover {
        #[arg(long = "t")]
        t: Option<usize>,
        #[arg(long = "r")]
        r: usize,
        #[arg(long = "m")]
        m: Option<usize>,
        #[arg(long)]
        input: PathBuf,
    },
    /// Rate against normalized radius for RM codes, with the entropy curve.
    Kappa {
        #[arg(long = "t")]
        t: usize,
        /// Largest m to include.
        #[arg(long = "m", default_value_t = KAPPA_MAX_M)]
        m: usize,
    },
    /// Probe positions answering a batch of parity queries.
    Plan {
        #[arg(long = "t")]
        t: Option<usize>,
        #[arg(long = "r")]
        r: usize,
        #[arg(long = "m")]
        m: usize,
        #[arg(long)]
        input: PathBuf,
    },
    /// Small-instance consistency checks.
    Selftest {
        /// Random inputs per parameter set in the decoder and planner suites.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

/// Parses the matrix text format: a `t n` header, then `t` rows of `n` bits.
///
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_matrix(text: &str) -> Result<BitMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let parse_err = |line, column, message: String| Error::Parse {
        line,
        column,
        message,
    };
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "missing `t n` header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(parse_err(
            header_line,
            1,
            format!("expected `t n`, found {header:?}"),
        ));
    }
    let number = |s: &str, name: &str| {
        s.parse::<usize>().map_err(|_| {
            parse_err(
                header_line,
                header.find(s).unwrap_or(0) + 1,
                format!("{name} must be a number"),
            )
        })
    };
    let t = number(fields[0], "t")?;
    let n = number(fields[1], "n")?;
    let mut rows = Vec::with_capacity(t);
    for (line_no, line) in lines.by_ref() {
        if rows.len() == t {
            return Err(parse_err(line_no, 1, format!("more than {t} rows")));
        }
        let mut bits = Vec::with_capacity(n);
        for (col, ch) in line.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(parse_err(
                        line_no,
                        col + 1,
                        format!("unexpected character {other:?}"),
                    ))
                }
            }
        }
        if bits.len() != n {
            return Err(parse_err(
                line_no,
                bits.len() + 1,
                format!("row has {} bits, expected {n}", bits.len()),
            ));
        }
        rows.push(BitVector::from_bits(bits));
    }
    if rows.len() != t {
        let last = text.lines().count().max(1);
        return Err(parse_err(
            last,
            1,
            format!("expected {t} rows, found {}", rows.len()),
        ));
    }
    BitMatrix::from_rows(rows, n)
}

/// Renders a matrix in the format read by [`parse_matrix`].
pub fn format_matrix(v: &BitMatrix) -> String {
    let mut out = format!("{} {}\n", v.num_rows(), v.num_cols());
    for row in v.rows() {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Invariant(_) => EXIT_INVARIANT,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
///
/// Normal output goes to `out`, or to the `--output` file; diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.threads {
        Some(0) => Err(invalid("--threads must be at least 1")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Error::Io(e.to_string())),
        },
        None => execute(&cli),
    };
    let (text, code) = match result {
        Ok(outcome) => outcome,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, Error::CapExceeded { .. }) {
                let _ = writeln!(err, "hint: raise the cap with --cap-override <bits>");
            }
            return exit_code(&e);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => out.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    code
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    let caps = cli.cap_override.map(Caps::uniform).unwrap_or_default();
    match &cli.command {
        Command::Bounds { t, r, m } => cmd_bounds(*t, *r, *m, cli.format).map(ok),
        Command::Exact { t, r, m, method } => {
            cmd_exact(*t, *r, *m, *method, &caps, cli.format).map(ok)
        }
        Command::Cover { t, r, m, input } => {
            let v = read_matrix(input)?;
            check_dims(&v, *t, m.map(|m| 1usize << m.min(40)))?;
            cmd_cover(&v, *r, cli.format).map(ok)
        }
        Command::Kappa { t, m } => cmd_kappa(*t, *m, cli.format).map(ok),
        Command::Plan { t, r, m, input } => {
            let queries = read_matrix(input)?;
            check_dims(&queries, *t, None)?;
            cmd_plan(&queries, *r, *m, cli.format).map(ok)
        }
        Command::Selftest { samples } => {
            let config = SelftestConfig {
                seed: cli.seed,
                samples: *samples,
                ..SelftestConfig::default()
            };
            let report = run_selftest(&config);
            let code = if report.passed() {
                EXIT_OK
            } else {
                EXIT_INVARIANT
            };
            let text = match cli.format {
                Format::Json => to_json(&report)?,
                _ => report.to_string(),
            };
            Ok((text, code))
        }
    }
}

fn ok(text: String) -> (String, i32) {
    (text, EXIT_OK)
}

fn read_matrix(path: &PathBuf) -> Result<BitMatrix> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_matrix(&text)
}

fn check_dims(v: &BitMatrix, t: Option<usize>, n: Option<usize>) -> Result<()> {
    if let Some(t) = t {
        if v.num_rows() != t {
            return Err(invalid(format!(
                "--t {t} but the input has {} rows",
                v.num_rows()
            )));
        }
    }
    if let Some(n) = n {
        if v.num_cols() != n {
            return Err(invalid(format!(
                "--m implies {n} columns but the input has {}",
                v.num_cols()
            )));
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::Io(e.to_string()))
}

/// Everything `bounds` reports for one parameter set.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub t: usize,
    pub r: usize,
    pub m: usize,
    pub exact: Option<u64>,
    pub best_upper: BoundValue,
    pub bounds: Vec<BoundValue>,
}

pub fn bounds_report(t: usize, r: usize, m: usize) -> Result<BoundsReport> {
    let mut bounds = Vec::new();
    if m <= BALL_COVERING_MAX_M {
        bounds.push(lb_ball_covering(t, r, m)?);
    }
    bounds.extend(certified_upper_bounds(t, r, m)?);
    for regime in [Regime::ConstantR, Regime::ConstantS, Regime::Alpha] {
        for side in [Side::Upper, Side::Lower] {
            match asymptotic_display(t, r, m, regime, side) {
                Ok(b) => bounds.push(b),
                Err(Error::NotApplicable(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(BoundsReport {
        t,
        r,
        m,
        exact: closed_form_exact(t, r, m),
        best_upper: best_upper_bound(t, r, m)?,
        bounds,
    })
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Upper => "upper",
        Side::Lower => "lower",
    }
}

pub fn cmd_bounds(t: usize, r: usize, m: usize, format: Format) -> Result<String> {
    let report = bounds_report(t, r, m)?;
    match format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut s = String::from("source,side,raw,integer_form,certified\n");
            for b in &report.bounds {
                let _ = writeln!(
                    s,
                    "{},{},{:.6},{},{}",
                    b.source,
                    side_name(b.side),
                    b.raw,
                    b.integer_form,
                    b.certified
                );
            }
            Ok(s)
        }
        Format::Human => {
            let mut s = format!("R_{t}({r},{m}), length {}\n", 1u64 << m);
            match report.exact {
                Some(e) => {
                    let _ = writeln!(s, "exact        {e}");
                }
                None => s.push_str("exact        unknown\n"),
            }
            let _ = writeln!(
                s,
                "best upper   {} ({})",
                report.best_upper.integer_form, report.best_upper.source
            );
            let _ = writeln!(
                s,
                "\n{:<32} {:<6} {:>16} {:>12}  certified",
                "source", "side", "raw", "integer"
            );
            for b in &report.bounds {
                let _ = write!(
                    s,
                    "{:<32} {:<6} {:>16.4} {:>12}  {}",
                    b.source.as_str(),
                    side_name(b.side),
                    b.raw,
                    b.integer_form,
                    if b.certified { "yes" } else { "no" }
                );
                if let Some(c) = b.caveat {
                    let _ = write!(s, " ({c})");
                }
                s.push('\n');
            }
            Ok(s)
        }
    }
}

pub fn cmd_exact(
    t: usize,
    r: usize,
    m: usize,
    method: Method,
    caps: &Caps,
    format: Format,
) -> Result<String> {
    let code = rm(r, m)?;
    let mut oracles = Vec::new();
    let mut witness = None;
    if matches!(method, Method::Geometric | Method::All) {
        let report = exact_rt_geometric(&code, t, caps)?;
        oracles.push(("geometric".to_string(), report.exact));
        witness = Some(report.witness);
    }
    if matches!(method, Method::Span | Method::All) {
        oracles.push(("span".to_string(), exact_rt_span(&code, t, caps)?));
    }
    if matches!(method, Method::Lifted | Method::All) {
        oracles.push(("lifted".to_string(), exact_rt_lifted(&code, t, caps)?));
    }
    let exact = oracles[0].1;
    if oracles.iter().any(|(_, v)| *v != exact) {
        let listing: Vec<String> = oracles.iter().map(|(k, v)| format!("{k}={v}")).collect();
        return Err(Error::Invariant(format!(
            "oracles disagree: {}",
            listing.join(", ")
        )));
    }
    if let Some(expected) = closed_form_exact(t, r, m) {
        if expected != exact as u64 {
            return Err(Error::Invariant(format!(
                "closed form gives {expected}, search gives {exact}"
            )));
        }
    }
    match format {
        Format::Json => {
            let by_name: serde_json::Map<String, serde_json::Value> =
                oracles.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
            to_json(&json!({
                "t": t,
                "r": r,
                "m": m,
                "exact": exact,
                "oracles": by_name,
                "witness": witness,
            }))
        }
        Format::Csv => {
            let mut s = String::from("oracle,exact\n");
            for (k, v) in &oracles {
                let _ = writeln!(s, "{k},{v}");
            }
            Ok(s)
        }
        Format::Human => {
            let mut s = format!("R_{t}({r},{m}) = {exact}\n");
            for (k, v) in &oracles {
                let _ = writeln!(s, "  {k:<10} {v}");
            }
            if let Some(w) = &witness {
                let _ = writeln!(s, "deepest matrix:\n{w}");
            }
            Ok(s)
        }
    }
}

pub fn cmd_cover(v: &BitMatrix, r: usize, format: Format) -> Result<String> {
    let res = cover(v, r, CoverOptions::default())?;
    let branch = match res.path {
        CoverPath::Recursive => "recursive",
        CoverPath::Subadditive => "subadditive",
        CoverPath::Majority => "majority",
    };
    match format {
        Format::Json => to_json(&json!({
            "codeword": res.codeword,
            "distance": res.distance,
            "guarantee": res.guarantee,
            "branch": branch,
        })),
        Format::Csv => {
            let mut s = String::from("row,codeword\n");
            for (i, row) in res.codeword.rows().iter().enumerate() {
                let _ = writeln!(s, "{i},{row}");
            }
            Ok(s)
        }
        Format::Human => Ok(format!(
            "distance  {}\nguarantee {}\nbranch    {branch}\ncodeword\n{}",
            res.distance,
            res.guarantee,
            format_matrix(&res.codeword)
        )),
    }
}

/// One row of the `kappa` CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaRow {
    pub rho: f64,
    pub rate: f64,
    pub source: String,
}

/// RM points marked against the binary entropy curve, followed by samples of that curve.
pub fn kappa_rows(t: usize, m_max: usize) -> Result<Vec<KappaRow>> {
    if m_max > KAPPA_MAX_M {
        return Err(invalid(format!("m_max={m_max} exceeds {KAPPA_MAX_M}")));
    }
    let mut rows = Vec::new();
    for p in kappa_points(t, m_max)? {
        if !p.certified {
            return Err(Error::Invariant(format!(
                "uncertified point at r={}, m={}",
                p.r, p.m
            )));
        }
        let curve = kappa_entropy_curve(t, 2.0, p.rho)?;
        let mark = if p.rate < curve { "below" } else { "above" };
        rows.push(KappaRow {
            rho: p.rho,
            rate: p.rate,
            source: format!("rm:r={}:m={}:{mark}", p.r, p.m),
        });
    }
    let rho_max = 1.0 - (-(t as f64)).exp2();
    for i in 0..CURVE_SAMPLES {
        let rho = rho_max * i as f64 / (CURVE_SAMPLES - 1) as f64;
        rows.push(KappaRow {
            rho,
            rate: kappa_entropy_curve(t, 2.0, rho)?,
            source: format!("entropy:t={t}"),
        });
    }
    Ok(rows)
}

pub fn format_kappa_csv(rows: &[KappaRow]) -> String {
    let mut s = String::from("rho,rate,source\n");
    for row in rows {
        let _ = writeln!(s, "{:.6},{:.6},{}", row.rho, row.rate, row.source);
    }
    s
}

/// Reads back the output of [`format_kappa_csv`].
pub fn parse_kappa_csv(text: &str) -> Result<Vec<KappaRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "rho,rate,source")) => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: "expected header `rho,rate,source`".into(),
            })
        }
    }
    lines
        .map(|(i, line)| {
            let bad = |column, message: &str| Error::Parse {
                line: i + 1,
                column,
                message: message.into(),
            };
            let mut fields = line.splitn(3, ',');
            let rho = fields
                .next()
                .and_then(|f| f.parse().ok())
                .ok_or_else(|| bad(1, "bad rho"))?;
            let rate = fields
                .next()
                .and_then(|f| f.parse().ok())
                .ok_or_else(|| bad(2, "bad rate"))?;
            let source = fields
                .next()
                .ok_or_else(|| bad(3, "missing source"))?
                .to_string();
            Ok(KappaRow { rho, rate, source })
        })
        .collect()
}

pub fn cmd_kappa(t: usize, m_max: usize, format: Format) -> Result<String> {
    let rows = kappa_rows(t, m_max)?;
    match format {
        Format::Json => to_json(
            &rows
                .iter()
                .map(|r| json!({"rho": r.rho, "rate": r.rate, "source": r.source}))
                .collect::<Vec<_>>(),
        ),
        _ => Ok(format_kappa_csv(&rows)),
    }
}

pub fn cmd_plan(queries: &BitMatrix, r: usize, m: usize, format: Format) -> Result<String> {
    let planner = Planner::new(r, m)?;
    let plan = planner.plan(queries)?;
    planner.verify(queries, &plan)?;
    let one_based: Vec<usize> = plan.indices.iter().map(|i| i + 1).collect();
    match format {
        Format::Json => to_json(&json!({
            "indices": one_based,
            "coefficients": plan.coefficients,
            "bound": plan.bound,
        })),
        Format::Csv => {
            let mut s = String::from("query,indices\n");
            for (j, row) in plan.coefficients.rows().iter().enumerate() {
                let used: Vec<String> = row.iter_ones().map(|p| one_based[p].to_string()).collect();
                let _ = writeln!(s, "{},{}", j + 1, used.join(" "));
            }
            Ok(s)
        }
        Format::Human => {
            let list: Vec<String> = one_based.iter().map(usize::to_string).collect();
            let mut s = format!(
                "probes ({} of at most {}): {}\n",
                one_based.len(),
                plan.bound,
                list.join(" ")
            );
            for (j, row) in plan.coefficients.rows().iter().enumerate() {
                let used: Vec<String> = row.iter_ones().map(|p| one_based[p].to_string()).collect();
                let _ = writeln!(s, "query {}: sum of columns {}", j + 1, used.join(" "));
            }
            Ok(s)
        }
    }
}
