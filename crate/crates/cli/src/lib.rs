//! Argument parsing and output formatting for the `kstirling` binary.
//!
//! [`run`] never touches the process streams; it returns the text for stdout
//! and stderr together with the exit status, so the whole command surface is
//! testable in-process.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use kstirling_core::bench::{bench, Method};
use kstirling_core::closed_forms::{mk_sum_parks_wills, mk_sum_stirling, sum_formula, SumFormula};
use kstirling_core::kbonacci::{kbonacci_sequence, kbonacci_term, mk_sum_oracle, KbonacciQuery};
use kstirling_core::numeric::{format_rational, pow2};
use kstirling_core::pyramid::{build_pyramid, render_pyramid, row_numerators, OutputFormat};
use kstirling_core::stirling::StirlingTable;
use kstirling_core::verify::{audit_published_formulas, full_verification, literal_lemma_probe, VerificationReport};
use kstirling_core::{Error, KPolynomial};

/// Environment variable capping the worker threads used by sweeps.
pub const THREADS_ENV: &str = "KSTIRLING_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "kstirling", version, about = "Exact k-bonacci block sums, Stirling closed forms and coefficient pyramids")]
pub struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
    Latex,
    Markdown,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Plain => OutputFormat::Plain,
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Latex => OutputFormat::Latex,
            Format::Markdown => OutputFormat::Markdown,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SumMethod {
    Oracle,
    ParksWills,
    Stirling,
    /// Evaluate all three and require agreement.
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One term f_n of the width-k sequence (f_0 = 1).
    Term {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// The first `count` terms of the width-k sequence.
    Sequence {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        count: usize,
    },
    /// Sum of the first m*k terms.
    Sum {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = SumMethod::Stirling)]
        method: SumMethod,
    },
    /// Closed form for fixed m as a function of k.
    Formula {
        #[arg(long)]
        m: u32,
    },
    /// Coefficient pyramid for fixed m.
    Pyramid {
        #[arg(long)]
        m: u32,
        /// Show each row as integers over (r-1)! 2^r instead of reduced fractions.
        #[arg(long)]
        numerators: bool,
    },
    /// Stirling numbers of the first kind.
    Stirling {
        #[arg(long)]
        n: usize,
        /// Signed numbers s(n, j) instead of unsigned S(n, j).
        #[arg(long)]
        signed: bool,
        /// Every row 0..=n instead of row n alone.
        #[arg(long)]
        triangle: bool,
    },
    /// Identity sweeps over 1..=k-max by 1..=m-max.
    Verify {
        #[arg(long, default_value_t = 12)]
        k_max: u32,
        #[arg(long, default_value_t = 12)]
        m_max: u32,
    },
    /// Compare the published m = 2, 3, 4 formulas and lemma with computed values.
    Audit,
    /// Time the three evaluators after checking they agree.
    Bench {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 3)]
        repetitions: u32,
        /// Print the full value as well as its digit count.
        #[arg(long)]
        show_value: bool,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Self { code: EXIT_USAGE, stdout: String::new(), stderr }
    }

    fn report(report: &VerificationReport, format: Format) -> Self {
        let stdout = match format {
            Format::Json => report.to_json() + "\n",
            _ => report.to_table(),
        };
        let code = if report.all_passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
        Self { code, stdout, stderr: String::new() }
    }
}

fn from_error(e: Error) -> Outcome {
    let code = match e {
        Error::Inconsistency(_) => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    };
    Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
}

fn unsupported(cmd: &str, format: Format, allowed: &[Format]) -> Option<Outcome> {
    if allowed.contains(&format) {
        return None;
    }
    let names: Vec<&str> = allowed.iter().map(|f| OutputFormat::from(*f).name()).collect();
    Some(Outcome::usage(format!(
        "error: `{cmd}` does not support --format {}; use one of: {}",
        OutputFormat::from(format).name(),
        names.join(", ")
    )))
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let format = cli.format;
    use Format::*;
    match &cli.command {
        Command::Term { k, n } => unsupported("term", format, &[Plain, Json])
            .unwrap_or_else(|| term(*k, *n, format).unwrap_or_else(from_error)),
        Command::Sequence { k, count } => unsupported("sequence", format, &[Plain, Json, Csv])
            .unwrap_or_else(|| sequence(*k, *count, format).unwrap_or_else(from_error)),
        Command::Sum { k, m, method } => unsupported("sum", format, &[Plain, Json])
            .unwrap_or_else(|| sum(*k, *m, *method, format).unwrap_or_else(from_error)),
        Command::Formula { m } => formula(*m, format).unwrap_or_else(from_error),
        Command::Pyramid { m, numerators } => {
            if *numerators {
                unsupported("pyramid --numerators", format, &[Plain, Json, Csv])
                    .unwrap_or_else(|| numerator_rows(*m, format).unwrap_or_else(from_error))
            } else {
                build_pyramid(*m)
                    .map(|p| Outcome::ok(render_pyramid(&p, format.into())))
                    .unwrap_or_else(from_error)
            }
        }
        Command::Stirling { n, signed, triangle } => unsupported("stirling", format, &[Plain, Json, Csv])
            .unwrap_or_else(|| stirling(*n, *signed, *triangle, format)),
        Command::Verify { k_max, m_max } => {
            if let Some(o) = unsupported("verify", format, &[Plain, Json]) {
                return o;
            }
            if *k_max == 0 || *m_max == 0 {
                return Outcome::usage("error: --k-max and --m-max must be at least 1");
            }
            Outcome::report(&full_verification(*k_max, *m_max), format)
        }
        Command::Audit => {
            if let Some(o) = unsupported("audit", format, &[Plain, Json]) {
                return o;
            }
            let mut report = audit_published_formulas();
            report.checks.push(literal_lemma_probe(2, 2));
            Outcome::report(&VerificationReport::from_checks(report.checks), format)
        }
        Command::Bench { k, m, repetitions, show_value } => unsupported("bench", format, &[Plain, Json])
            .unwrap_or_else(|| run_bench(*k, *m, *repetitions, *show_value, format).unwrap_or_else(from_error)),
    }
}

fn term(k: u32, n: i64, format: Format) -> kstirling_core::Result<Outcome> {
    let v = kbonacci_term(KbonacciQuery::term(k, n))?;
    Ok(Outcome::ok(match format {
        Format::Json => json!({ "k": k, "n": n, "value": v.to_string() }).to_string() + "\n",
        _ => format!("{v}\n"),
    }))
}

fn sequence(k: u32, count: usize, format: Format) -> kstirling_core::Result<Outcome> {
    let seq = kbonacci_sequence(k, count)?;
    let terms: Vec<String> = seq.terms.iter().map(BigInt::to_string).collect();
    Ok(Outcome::ok(match format {
        Format::Json => json!({ "k": k, "terms": terms }).to_string() + "\n",
        Format::Csv => {
            let mut out = String::from("index,value\n");
            for (i, t) in terms.iter().enumerate() {
                let _ = writeln!(out, "{i},{t}");
            }
            out
        }
        _ => terms.join(", ") + "\n",
    }))
}

fn sum(k: u32, m: u32, method: SumMethod, format: Format) -> kstirling_core::Result<Outcome> {
    let value = match method {
        SumMethod::Oracle => mk_sum_oracle(k, m)?,
        SumMethod::ParksWills => mk_sum_parks_wills(k, m)?,
        SumMethod::Stirling => mk_sum_stirling(k, m)?,
        SumMethod::All => {
            let values = Method::ALL.map(|mm| mm.evaluate(k, m));
            let [a, b, c] = values;
            let (a, b, c) = (a?, b?, c?);
            if a != b || a != c {
                return Err(Error::Inconsistency(format!(
                    "evaluators disagree at k={k}, m={m}: oracle={a}, parks-wills={b}, stirling={c}"
                )));
            }
            a
        }
    };
    let method_name = match method {
        SumMethod::Oracle => "oracle",
        SumMethod::ParksWills => "parks-wills",
        SumMethod::Stirling => "stirling",
        SumMethod::All => "all",
    };
    Ok(Outcome::ok(match format {
        Format::Json => {
            json!({ "k": k, "m": m, "method": method_name, "value": value.to_string() }).to_string() + "\n"
        }
        _ => format!("{value}\n"),
    }))
}

fn power_base(f: &SumFormula, index: u32) -> BigInt {
    pow2(u64::from(f.power_multiplier(index)))
}

fn latex_poly(p: &KPolynomial) -> String {
    let mut out = String::new();
    for (pow, c) in p.coeffs().iter().enumerate().rev() {
        if c.numer() == &BigInt::from(0) {
            continue;
        }
        let neg = c.numer() < &BigInt::from(0);
        let (n, d) = (c.numer().magnitude().clone(), c.denom().clone());
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag_is_one = n == 1u32.into() && d == 1u32.into();
        if !(mag_is_one && pow > 0) {
            if d == 1u32.into() {
                let _ = write!(out, "{n}");
            } else {
                let _ = write!(out, "\\frac{{{n}}}{{{d}}}");
            }
        }
        match pow {
            0 => {}
            1 => out.push('k'),
            _ => {
                let _ = write!(out, "k^{{{pow}}}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn formula(m: u32, format: Format) -> kstirling_core::Result<Outcome> {
    let f = sum_formula(m)?;
    let text = match format {
        Format::Plain => {
            let parts: Vec<String> =
                f.blocks.iter().map(|b| format!("({})*{}^k", b.polynomial, power_base(&f, b.index))).collect();
            parts.join(" + ") + "\n"
        }
        Format::Latex | Format::Markdown => {
            let parts: Vec<String> = f
                .blocks
                .iter()
                .map(|b| format!("\\left({}\\right){}^{{k}}", latex_poly(&b.polynomial), power_base(&f, b.index)))
                .collect();
            let body = parts.join(" + ");
            if format == Format::Latex {
                format!("\\[ {body} \\]\n")
            } else {
                format!("$$ {body} $$\n")
            }
        }
        Format::Json => {
            let blocks: Vec<_> = f
                .blocks
                .iter()
                .map(|b| {
                    let coeffs: Vec<String> = (0..b.index as usize)
                        .rev()
                        .map(|p| format_rational(&b.polynomial.coeff(p), true))
                        .collect();
                    json!({
                        "index": b.index,
                        "power_base": power_base(&f, b.index).to_string(),
                        "coefficients": coeffs,
                    })
                })
                .collect();
            json!({ "m": m, "blocks": blocks }).to_string() + "\n"
        }
        Format::Csv => {
            let mut out = String::from("block,power_base,power,value\n");
            for b in &f.blocks {
                for p in (0..b.index as usize).rev() {
                    let _ = writeln!(
                        out,
                        "{},{},{p},{}",
                        b.index,
                        power_base(&f, b.index),
                        format_rational(&b.polynomial.coeff(p), true)
                    );
                }
            }
            out
        }
    };
    Ok(Outcome::ok(text))
}

fn numerator_rows(m: u32, format: Format) -> kstirling_core::Result<Outcome> {
    let rows = (1..=m.max(1)).map(|r| row_numerators(m, r)).collect::<kstirling_core::Result<Vec<_>>>()?;
    let text = match format {
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|nr| {
                    json!({
                        "r": nr.r,
                        "denominator": nr.denominator.to_string(),
                        "numerators": nr.numerators.iter().map(BigInt::to_string).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({ "m": m, "rows": rows }).to_string() + "\n"
        }
        Format::Csv => {
            let mut out = String::from("row,position,numerator,denominator\n");
            for nr in &rows {
                for (p, n) in nr.numerators.iter().enumerate() {
                    let _ = writeln!(out, "{},{},{n},{}", nr.r, p + 1, nr.denominator);
                }
            }
            out
        }
        _ => {
            let mut out = String::new();
            for nr in &rows {
                let nums: Vec<String> = nr.numerators.iter().map(BigInt::to_string).collect();
                let _ = writeln!(out, "r{}: [{}] / {}", nr.r, nums.join(", "), nr.denominator);
            }
            out
        }
    };
    Ok(Outcome::ok(text))
}

fn stirling(n: usize, signed: bool, triangle: bool, format: Format) -> Outcome {
    let table = StirlingTable::new(n);
    let value = |i: usize, j: usize| if signed { table.signed(i, j) } else { table.unsigned(i, j) };
    // row 0 is [S(0,0)]; other rows start at j = 1
    let row = |i: usize| -> Vec<String> {
        let lo = usize::from(i > 0);
        (lo..=i).map(|j| value(i, j).to_string()).collect()
    };
    let rows: Vec<usize> = if triangle { (0..=n).collect() } else { vec![n] };
    let text = match format {
        Format::Json => {
            let body: Vec<_> = rows.iter().map(|&i| json!({ "n": i, "values": row(i) })).collect();
            json!({ "signed": signed, "rows": body }).to_string() + "\n"
        }
        Format::Csv => {
            let mut out = String::from("n,j,value\n");
            for &i in &rows {
                let lo = usize::from(i > 0);
                for (off, v) in row(i).iter().enumerate() {
                    let _ = writeln!(out, "{i},{},{v}", lo + off);
                }
            }
            out
        }
        _ => rows.iter().map(|&i| row(i).join(" ") + "\n").collect(),
    };
    Outcome::ok(text)
}

fn run_bench(k: u32, m: u32, repetitions: u32, show_value: bool, format: Format) -> kstirling_core::Result<Outcome> {
    let report = bench(k, m, repetitions)?;
    let text = match format {
        Format::Json => {
            let mut doc = json!({
                "k": k,
                "m": m,
                "repetitions": repetitions,
                "digits": report.digits(),
                "timings": report.timings,
            });
            if show_value {
                doc["value"] = json!(report.value.to_string());
            }
            doc.to_string() + "\n"
        }
        _ => {
            let mut out = format!("k={k} m={m} repetitions={repetitions} digits={}\n", report.digits());
            if show_value {
                let _ = writeln!(out, "value={}", report.value);
            }
            for t in &report.timings {
                let _ = writeln!(
                    out,
                    "{:<12} mean {:>12.6} s  min {:>12.6} s",
                    t.method.name(),
                    t.mean.as_secs_f64(),
                    t.min.as_secs_f64()
                );
            }
            out
        }
    };
    Ok(Outcome::ok(text))
}

/// Applies [`THREADS_ENV`] to the global worker pool, if set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}
