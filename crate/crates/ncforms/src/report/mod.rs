//! Run configuration, golden files, and table emission.

pub mod expr;
pub mod golden;

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aswd::detect::{detect_basis, CongruenceReport};
use crate::catalog::groups::{trace_rows, GroupRecord};
use crate::error::{Error, Result};
use crate::series::io::{compare_terms, parse_terms, Term};
use crate::series::rational::ExactRational;
use crate::series::PuiseuxSeries;
use crate::trace::frobenius_trace;

pub use golden::{check_ratio_table, GoldenMismatch, RatioGolden};

pub const GOLDEN_DIR_ENV: &str = "NCFORMS_GOLDEN_DIR";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Human,
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "human" => Ok(OutputFormat::Human),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Parse(format!("output format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunConfig {
    /// Series order in powers of `q`.
    pub series_order: i64,
    pub prime_bound: u64,
    pub pn_bound: u64,
    pub output_format: OutputFormat,
    pub modular_poly_path: Option<PathBuf>,
    pub thread_count: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            series_order: 501,
            prime_bound: 47,
            pn_bound: 500,
            output_format: OutputFormat::Human,
            modular_poly_path: None,
            thread_count: None,
        }
    }
}

impl RunConfig {
    pub const TRACE_PRIME_BOUND: u64 = 73;

    /// `pn_bound` must be reachable by the series of every `mu`.
    pub fn validate(&self) -> Result<()> {
        if self.pn_bound as i64 > self.series_order {
            return Err(Error::Invalid(format!(
                "pn bound {} exceeds series order {}",
                self.pn_bound, self.series_order
            )));
        }
        if self.thread_count == Some(0) {
            return Err(Error::Invalid("thread count must be positive".into()));
        }
        Ok(())
    }
}

/// Location of the shipped golden files.
pub fn golden_dir() -> PathBuf {
    std::env::var_os(GOLDEN_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../golden"))
}

/// Ratio-table golden files, in a fixed order.
pub const RATIO_TABLES: &[&str] = &[
    "table10.csv",
    "ratios2.csv",
    "ratios3.csv",
    "ratios4.csv",
    "ratios5.csv",
    "ratios6.csv",
    "ratios7.csv",
    "ratios8.csv",
    "ratios_3a.csv",
    "ratios_3b.csv",
    "ratios_4a.csv",
    "ratios_4b.csv",
];

pub fn read_golden(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// `(file name, which form)` of the series golden files for a group.
pub fn series_golden_paths(g: &GroupRecord) -> [PathBuf; 2] {
    let dir = golden_dir().join("series");
    [dir.join(format!("{}_h1.txt", g.id)), dir.join(format!("{}_h2.txt", g.id))]
}

/// Golden terms that disagree with `s`.
pub fn check_series(s: &PuiseuxSeries, golden_text: &str) -> Result<Vec<(Term, Result<ExactRational>)>> {
    Ok(compare_terms(s, &parse_terms(golden_text)?))
}

/// Largest exponent, in powers of `q`, named in a series golden file.
pub fn series_golden_extent(golden_text: &str) -> Result<i64> {
    Ok(parse_terms(golden_text)?.iter().map(|t| t.exp_num.div_euclid(t.exp_den as i64) + 1).max().unwrap_or(0))
}

fn q_power(num: i64, den: i64) -> String {
    let g = num_integer::gcd(num, den).max(1);
    let (n, d) = (num / g, den / g);
    match (n, d) {
        (0, _) => String::new(),
        (1, 1) => "q".into(),
        (n, 1) => format!("q^{n}"),
        (n, d) => format!("q^({n}/{d})"),
    }
}

/// `1 + 12q + 36q^2 + O(q^4)`-style rendering with exact coefficients.
pub fn format_series_human(s: &PuiseuxSeries) -> String {
    let mu = s.mu() as i64;
    let mut out = String::new();
    for (e, c) in s.terms() {
        let neg = c < &ExactRational::from_integer(0.into());
        let mag = if neg { -c.clone() } else { c.clone() };
        let mono = q_power(e, mu);
        let coeff = mag.to_string();
        let term = match (coeff.as_str(), mono.is_empty()) {
            (k, true) => k.to_string(),
            ("1", false) => mono,
            (k, false) if k.contains('/') => format!("{k} {mono}"),
            (k, false) => format!("{k}{mono}"),
        };
        if out.is_empty() {
            out = if neg { format!("-{term}") } else { term };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    let tail = q_power(s.prec(), mu);
    format!("{out} + O({})", if tail.is_empty() { "1".into() } else { tail })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub group: String,
    pub parameterization: String,
    pub p: u64,
    pub tr_p: i64,
    pub tr_p2: i64,
}

pub fn parse_trace_csv(text: &str) -> Result<Vec<TraceRow>> {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(text.as_bytes());
    reader.deserialize().map(|r| r.map_err(|e| Error::Parse(e.to_string()))).collect()
}

pub fn write_trace_csv(rows: &[TraceRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8")
}

/// Traces of the catalog surfaces (optionally only those of `group`), in
/// catalog row order, primes in the given order.
pub fn trace_table(group: Option<&GroupRecord>, primes: &[u64]) -> Result<Vec<TraceRow>> {
    let rows: Vec<_> = trace_rows().into_iter().filter(|(g, _)| group.is_none_or(|x| x.id == g.id)).collect();
    if rows.is_empty() {
        return Err(Error::OutOfScope("group has no elliptic surface in the catalog".into()));
    }
    let jobs: Vec<_> = rows.iter().flat_map(|(g, s)| primes.iter().map(move |&p| (*g, *s, p))).collect();
    jobs.par_iter()
        .map(|(g, s, p)| {
            let m = s.model();
            Ok(TraceRow {
                group: g.display_name(),
                parameterization: s.label(),
                p: *p,
                tr_p: frobenius_trace(&m, *p, 1)?,
                tr_p2: frobenius_trace(&m, *p, 2)?,
            })
        })
        .collect()
}

/// Congruence reports at every prime `5 <= p <= prime_bound`.
pub fn congruence_reports(g: &GroupRecord, primes: &[u64], pn_bound: u64) -> Result<Vec<CongruenceReport>> {
    primes.par_iter().map(|&p| detect_basis(g, p, pn_bound)).collect()
}

/// Primes `5 <= p <= bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (5..=bound).filter(|&p| crate::trace::field::is_prime(p)).collect()
}

/// Parse `5..23,73`-style prime lists.
pub fn parse_prime_list(s: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let bad = || Error::Parse(format!("prime list {s:?}"));
        match part.split_once("..") {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().map_err(|_| bad())?;
                let b: u64 = b.trim().parse().map_err(|_| bad())?;
                out.extend((a..=b).filter(|&p| crate::trace::field::is_prime(p)));
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}

/// One CSV line per report: constants (blank when not constant), case and newform match.
pub fn write_congruence_csv(reports: &[CongruenceReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["group", "p", "case", "aa", "bb", "ab", "ba", "alpha_squared", "ap_squared", "twist", "twist_order", "matched"])
        .expect("in-memory csv");
    let k = |t: &Option<crate::aswd::RatioTest>| {
        t.as_ref().and_then(|t| t.constant()).map(|r| r.value.to_string()).unwrap_or_default()
    };
    for r in reports {
        let twist = r.newform.product.as_ref().or(r.newform.aa.as_ref());
        let case = match (r.case_kind, r.degenerate) {
            (crate::aswd::CaseKind::Case1, false) => "case1",
            (crate::aswd::CaseKind::Case1, true) => "case1-zero",
            (crate::aswd::CaseKind::Case2, false) => "case2",
            (crate::aswd::CaseKind::Case2, true) => "case2-zero",
            (crate::aswd::CaseKind::Indeterminate, _) => "indeterminate",
        };
        w.write_record([
            r.group.clone(),
            r.p.to_string(),
            case.to_string(),
            k(&r.aa),
            k(&r.bb),
            k(&r.ab),
            k(&r.ba),
            r.alpha.as_ref().map(|a| a.alpha_squared.value.to_string()).unwrap_or_default(),
            r.newform.ap_squared.map(|a| a.value.to_string()).unwrap_or_default(),
            twist.and_then(|t| t.u).map(|u| u.value.to_string()).unwrap_or_default(),
            twist.and_then(|t| t.order).map(|o| o.to_string()).unwrap_or_default(),
            r.newform_matches().map(|m| m.to_string()).unwrap_or("derived".into()),
        ])
        .expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8")
}
