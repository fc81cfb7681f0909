//! The mk-sum pyramid: row `r` lists the coefficients of the polynomial that
//! multiplies `2^((m-r+1)k)`, leading coefficient first.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::closed_forms::coefficient_polynomial;
use crate::error::{require_positive, Error, Result};
use crate::numeric::{as_integer, factorial, format_rational, rational_from_int, rational_make, Rational, UnboundedInt};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pyramid {
    pub m: u32,
    /// `rows[r-1]` has `r` entries, highest power of `k` first.
    pub rows: Vec<Vec<Rational>>,
}

impl Pyramid {
    pub fn row(&self, r: u32) -> Option<&[Rational]> {
        self.rows.get((r as usize).checked_sub(1)?).map(Vec::as_slice)
    }
}

/// A pyramid row rewritten over its canonical denominator `(r-1)! 2^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumeratorRow {
    pub r: u32,
    pub denominator: UnboundedInt,
    /// Signed numerators, highest power of `k` first.
    pub numerators: Vec<UnboundedInt>,
}

pub fn build_pyramid(m: u32) -> Result<Pyramid> {
    require_positive("m", m)?;
    let rows = (1..=m)
        .map(|r| {
            let poly = coefficient_polynomial(m, r)?;
            Ok((0..r as usize).rev().map(|p| poly.coeff(p)).collect())
        })
        .collect::<Result<_>>()?;
    Ok(Pyramid { m, rows })
}

/// `(r-1)! * 2^r`
pub fn canonical_denominator(r: u32) -> Result<UnboundedInt> {
    require_positive("r", r)?;
    Ok(factorial(u64::from(r) - 1) << r)
}

/// Least common multiple of the reduced denominators in row `r`. Equals the
/// canonical denominator when `r = m`, and can be smaller above that row.
pub fn lowest_common_denominator(m: u32, r: u32) -> Result<UnboundedInt> {
    let row = pyramid_row(m, r)?;
    Ok(row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom())))
}

pub fn row_numerators(m: u32, r: u32) -> Result<NumeratorRow> {
    let row = pyramid_row(m, r)?;
    let denominator = canonical_denominator(r)?;
    let scale = rational_from_int(denominator.clone());
    let numerators = row
        .iter()
        .map(|q| {
            as_integer(&(q * &scale)).ok_or_else(|| {
                Error::Inconsistency(format!("row {r} entry {q} does not divide into {denominator}"))
            })
        })
        .collect::<Result<_>>()?;
    Ok(NumeratorRow { r, denominator, numerators })
}

fn pyramid_row(m: u32, r: u32) -> Result<Vec<Rational>> {
    require_positive("m", m)?;
    if r == 0 || r > m {
        return Err(Error::OutOfRange { name: "r", value: u64::from(r), lo: 1, hi: u64::from(m) });
    }
    let poly = coefficient_polynomial(m, r)?;
    Ok((0..r as usize).rev().map(|p| poly.coeff(p)).collect())
}

/// For `m = 1..=m_max`, the absolute numerators of row `m` of the `m`-pyramid
/// (left to right), concatenated. These are the unsigned Stirling rows
/// `S(m, m), ..., S(m, 1)`.
pub fn stitched_numerator_sequence(m_max: u32) -> Result<Vec<UnboundedInt>> {
    require_positive("m_max", m_max)?;
    let mut out = Vec::new();
    for m in 1..=m_max {
        out.extend(row_numerators(m, m)?.numerators.into_iter().map(|n| n.abs()));
    }
    Ok(out)
}

/// Rightmost entry of each row: `[1/2, 1/4, ..., 1/2^m]`.
pub fn diagonal_constants(m: u32) -> Result<Vec<Rational>> {
    let p = build_pyramid(m)?;
    Ok(p.rows.iter().map(|row| row.last().cloned().expect("rows are nonempty")).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Plain,
    Latex,
    Markdown,
    Csv,
    Json,
}

impl OutputFormat {
    pub const ALL: [OutputFormat; 5] = [
        OutputFormat::Plain,
        OutputFormat::Latex,
        OutputFormat::Markdown,
        OutputFormat::Csv,
        OutputFormat::Json,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Plain => "plain",
            OutputFormat::Latex => "latex",
            OutputFormat::Markdown => "markdown",
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OutputFormat::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFormat(s.to_string()))
    }
}

pub fn render_pyramid(pyramid: &Pyramid, format: OutputFormat) -> String {
    match format {
        OutputFormat::Plain => render_plain(pyramid),
        OutputFormat::Latex => render_latex(pyramid),
        OutputFormat::Markdown => render_markdown(pyramid),
        OutputFormat::Csv => render_csv(pyramid),
        OutputFormat::Json => render_json(pyramid),
    }
}

/// Column of entry `p` (0-based) in row `r` on the staggered grid of width
/// `2m - 1`.
fn grid_column(m: u32, r: u32, p: usize) -> usize {
    (m - r) as usize + 2 * p
}

fn staggered_cells(pyramid: &Pyramid, r: u32, cell: impl Fn(&Rational) -> String) -> Vec<String> {
    let width = 2 * pyramid.m as usize - 1;
    let mut cells = vec![String::new(); width];
    for (p, q) in pyramid.rows[r as usize - 1].iter().enumerate() {
        cells[grid_column(pyramid.m, r, p)] = cell(q);
    }
    cells
}

fn render_plain(pyramid: &Pyramid) -> String {
    let w = pyramid
        .rows
        .iter()
        .flatten()
        .map(|q| format_rational(q, false).len())
        .max()
        .unwrap_or(1);
    let label_w = format!("r{}:", pyramid.m).len();
    let mut out = String::new();
    for r in 1..=pyramid.m {
        let cells = staggered_cells(pyramid, r, |q| format_rational(q, false));
        let body: Vec<String> = cells.iter().map(|c| format!("{c:^w$}")).collect();
        let line = format!("{:<label_w$} {}", format!("r{r}:"), body.join(" "));
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn latex_entry(q: &Rational) -> String {
    if q.is_integer() {
        return format!("${}$", q.numer());
    }
    let sign = if q.is_negative() { "-" } else { "" };
    format!("${sign}\\frac{{{}}}{{{}}}$", q.numer().abs(), q.denom())
}

fn render_latex(pyramid: &Pyramid) -> String {
    let width = 2 * pyramid.m as usize - 1;
    let mut out = format!("\\begin{{tabular}}{{r{}}}\n", "c".repeat(width));
    for r in 1..=pyramid.m {
        let cells = staggered_cells(pyramid, r, latex_entry);
        // trailing empty cells are dropped, as in a hand-written tabular
        let last = cells.iter().rposition(|c| !c.is_empty()).unwrap_or(0);
        let _ = writeln!(out, "$r_{{{r}}}$: & {} \\\\", cells[..=last].join(" & "));
    }
    out.push_str("\\end{tabular}\n");
    out
}

fn render_markdown(pyramid: &Pyramid) -> String {
    let width = 2 * pyramid.m as usize - 1;
    let mut out = String::from("| r |");
    out.push_str(&" |".repeat(width));
    out.push_str("\n|---|");
    out.push_str(&":-:|".repeat(width));
    out.push('\n');
    for r in 1..=pyramid.m {
        let cells = staggered_cells(pyramid, r, |q| format_rational(q, false));
        let _ = writeln!(out, "| {r} | {} |", cells.join(" | "));
    }
    out
}

fn render_csv(pyramid: &Pyramid) -> String {
    let mut out = String::from("row,position,power,value\n");
    for (ri, row) in pyramid.rows.iter().enumerate() {
        let r = ri + 1;
        for (p, q) in row.iter().enumerate() {
            let _ = writeln!(out, "{r},{},{},{}", p + 1, r - 1 - p, format_rational(q, true));
        }
    }
    out
}

#[derive(Serialize)]
struct PyramidJson {
    m: u32,
    rows: Vec<Vec<String>>,
}

pub fn pyramid_to_json_value(pyramid: &Pyramid) -> serde_json::Value {
    let doc = PyramidJson {
        m: pyramid.m,
        rows: pyramid
            .rows
            .iter()
            .map(|row| row.iter().map(|q| format_rational(q, true)).collect())
            .collect(),
    };
    serde_json::to_value(doc).expect("pyramid serializes")
}

fn render_json(pyramid: &Pyramid) -> String {
    let mut s = serde_json::to_string(&pyramid_to_json_value(pyramid)).expect("pyramid serializes");
    s.push('\n');
    s
}

/// Parses a `num/den` or bare integer string, the inverse of the renderers'
/// fraction format.
pub fn parse_fraction(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("not a fraction: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            rational_make(n, d)
        }
        None => Ok(rational_from_int(s.trim().parse::<BigInt>().map_err(|_| bad())?)),
    }
}
