//! Ratio-table golden files: parsing and comparison against detected
//! congruence reports.
//!
//! A file starts with `# group: <name>` and has a CSV header naming any of
//! the columns below. Blank cells are not compared.
//!
//! | column | check |
//! |---|---|
//! | `aa`, `bb`, `ab`, `ba` | the detected ratio constant |
//! | `w`, `ord_w`, `w_sq` | `w^6 = 1`, its order, `w_sq = w^2` |
//! | `root`, `root_radicand` | `root^2 = radicand` |
//! | `cbrt`, `cbrt_radicand` | `cbrt^3 = radicand`, and it is the unique cube root |
//! | `*_expr` | the expression evaluates to the detected constant (or product) |
//! | `aa_over_bb_pow3`, `ab_over_ba_pow3`, `ab_over_ba_pow6` | powers of ratio quotients |
//! | `aa_times_bb_expr`, `ab_times_ba_expr` | products of constants |
//!
//! In expressions `r` is `root`, `c` is `cbrt` and `w` is the row's `w`;
//! without a `w` cell, some sixth root of unity (of order `ord_w` when given)
//! must satisfy every expression of the row at once.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::aswd::detect::CongruenceReport;
use crate::aswd::ratios::RatioTest;
use crate::aswd::residue::{cbrt_mod_p2, sixth_roots_mod_p2, Residue};
use crate::error::{Error, Result};
use crate::report::expr::Expr;

pub const RATIO_COLUMNS: &[&str] = &[
    "p",
    "aa",
    "bb",
    "ab",
    "ba",
    "w",
    "w_sq",
    "ord_w",
    "root",
    "root_radicand",
    "cbrt",
    "cbrt_radicand",
    "aa_expr",
    "bb_expr",
    "ab_expr",
    "ba_expr",
    "aa_over_bb_pow3",
    "aa_times_bb_expr",
    "ab_over_ba_pow3",
    "ab_over_ba_pow6",
    "ab_times_ba_expr",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioGolden {
    pub group: String,
    pub columns: Vec<String>,
    /// Nonblank cells per row, keyed by column.
    pub rows: Vec<BTreeMap<String, String>>,
}

impl RatioGolden {
    pub fn parse(text: &str) -> Result<Self> {
        let group = text
            .lines()
            .filter_map(|l| l.trim().strip_prefix('#'))
            .find_map(|l| l.trim().strip_prefix("group:"))
            .map(|g| g.trim().to_string())
            .ok_or_else(|| Error::Parse("golden table lacks a `# group:` line".into()))?;
        let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(text.as_bytes());
        let columns: Vec<String> =
            reader.headers().map_err(|e| Error::Parse(e.to_string()))?.iter().map(str::to_string).collect();
        if let Some(c) = columns.iter().find(|c| !RATIO_COLUMNS.contains(&c.as_str())) {
            return Err(Error::Parse(format!("unknown golden column {c:?}")));
        }
        if columns.first().map(String::as_str) != Some("p") {
            return Err(Error::Parse("first golden column must be p".into()));
        }
        let mut rows = Vec::new();
        for rec in reader.records() {
            let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
            let row: BTreeMap<String, String> = columns
                .iter()
                .zip(rec.iter())
                .filter(|(_, v)| !v.is_empty())
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect();
            for (k, v) in &row {
                if k.ends_with("_expr") {
                    Expr::parse(v)?;
                } else {
                    v.parse::<i64>().map_err(|_| Error::Parse(format!("{k} = {v:?} is not an integer")))?;
                }
            }
            rows.push(row);
        }
        Ok(RatioGolden { group, columns, rows })
    }

    pub fn primes(&self) -> Vec<u64> {
        self.rows.iter().filter_map(|r| r.get("p")?.parse().ok()).collect()
    }

    pub fn max_prime(&self) -> u64 {
        self.primes().into_iter().max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenMismatch {
    pub p: u64,
    pub column: String,
    pub expected: String,
    pub got: String,
}

impl fmt::Display for GoldenMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p = {}: {} expected {}, got {}", self.p, self.column, self.expected, self.got)
    }
}

fn show(r: Option<Residue>) -> String {
    match r {
        Some(r) if r.e == 2 => r.value.to_string(),
        Some(r) => format!("{} (mod p^{})", r.value, r.e),
        None => "not constant".into(),
    }
}

/// Equal modulo the coarser of the two moduli.
fn agree(a: Residue, b: Residue) -> bool {
    let e = a.e.min(b.e);
    a.weaken(e) == b.weaken(e)
}

fn constant(t: &Option<RatioTest>) -> Option<Residue> {
    t.as_ref().and_then(RatioTest::constant)
}

/// Compare one golden row against the report for the same prime.
pub fn check_ratio_row(row: &BTreeMap<String, String>, report: &CongruenceReport) -> Result<Vec<GoldenMismatch>> {
    let p = report.p;
    let int = |k: &str| row.get(k).map(|v| v.parse::<i64>().expect("validated"));
    let res = |k: &str| int(k).map(|v| Residue::p2(v, p));
    let mut out = Vec::new();
    let mut miss = |column: &str, expected: String, got: String| {
        out.push(GoldenMismatch { p, column: column.into(), expected, got });
    };

    let got: BTreeMap<&str, Option<Residue>> = [
        ("aa", constant(&report.aa)),
        ("bb", constant(&report.bb)),
        ("ab", constant(&report.ab)),
        ("ba", constant(&report.ba)),
    ]
    .into_iter()
    .collect();
    for k in ["aa", "bb", "ab", "ba"] {
        if let Some(want) = res(k) {
            if got[k].is_none_or(|g| !agree(g, want)) {
                miss(k, want.value.to_string(), show(got[k]));
            }
        }
    }

    let mut vars = BTreeMap::new();
    if let (Some(root), Some(d)) = (res("root"), res("root_radicand")) {
        if root.mul(&root) != d {
            miss("root", format!("square root of {}", d.signed()), format!("{}^2 = {}", root.value, root.mul(&root).value));
        }
        vars.insert('r', root);
    }
    if let (Some(c), Some(d)) = (res("cbrt"), res("cbrt_radicand")) {
        match cbrt_mod_p2(d) {
            Ok(unique) if unique == c => {}
            Ok(unique) => miss("cbrt", c.value.to_string(), unique.value.to_string()),
            Err(e) => miss("cbrt", c.value.to_string(), e.to_string()),
        }
        vars.insert('c', c);
    }
    let ord = int("ord_w").map(|o| o as u32);
    let ws: Vec<Residue> = match res("w") {
        Some(w) => {
            if !w.pow(6).is_some_and(|x| x.value == 1) {
                miss("w", format!("{} a sixth root of unity", w.value), "w^6 != 1".into());
            }
            if let Some(o) = ord {
                if w.order() != Some(o) {
                    miss("ord_w", o.to_string(), format!("{:?}", w.order()));
                }
            }
            if let Some(w2) = res("w_sq") {
                if w.mul(&w) != w2 {
                    miss("w_sq", w2.value.to_string(), w.mul(&w).value.to_string());
                }
            }
            vec![w]
        }
        None => sixth_roots_mod_p2(p)?.into_iter().filter(|w| ord.is_none_or(|o| w.order() == Some(o))).collect(),
    };

    // Expressions share one choice of w.
    let exprs: Vec<(&str, Expr, Option<Residue>)> = [
        ("aa_expr", got["aa"]),
        ("bb_expr", got["bb"]),
        ("ab_expr", got["ab"]),
        ("ba_expr", got["ba"]),
        ("aa_times_bb_expr", got["aa"].zip(got["bb"]).map(|(a, b)| a.mul(&b))),
        ("ab_times_ba_expr", got["ab"].zip(got["ba"]).map(|(a, b)| a.mul(&b))),
    ]
    .into_iter()
    .filter_map(|(k, g)| Some((k, Expr::parse(row.get(k)?).expect("validated"), g)))
    .collect();
    if !exprs.is_empty() {
        let holds_with = |w: Option<&Residue>| {
            let mut v = vars.clone();
            if let Some(w) = w {
                v.insert('w', *w);
            }
            exprs.iter().all(|(_, e, g)| {
                let Some(g) = g else { return false };
                e.eval(p, &v).is_some_and(|vals| vals.iter().any(|x| agree(*g, *x)))
            })
        };
        let uses_w = exprs.iter().any(|(_, e, _)| e.uses('w'));
        let ok = if uses_w { ws.iter().any(|w| holds_with(Some(w))) } else { holds_with(None) };
        if !ok {
            for (k, e, g) in &exprs {
                let sample = ws.first().copied();
                let mut v = vars.clone();
                if let Some(w) = sample {
                    v.insert('w', w);
                }
                let shown = e.eval(p, &v).map(|x| format!("{:?}", x.iter().map(|r| r.value).collect::<Vec<_>>()));
                miss(k, row[*k].clone(), format!("{} (expression gives {})", show(*g), shown.unwrap_or("?".into())));
            }
        }
    }

    let quotient_pow = |a: &str, b: &str, k: i64| got[a].zip(got[b]).and_then(|(x, y)| x.div(&y)?.pow(k));
    for (col, a, b, k) in
        [("aa_over_bb_pow3", "aa", "bb", 3), ("ab_over_ba_pow3", "ab", "ba", 3), ("ab_over_ba_pow6", "ab", "ba", 6)]
    {
        if let Some(want) = res(col) {
            let g = quotient_pow(a, b, k);
            if g.is_none_or(|g| !agree(g, want)) {
                miss(col, want.value.to_string(), show(g));
            }
        }
    }
    Ok(out)
}

/// Compare a whole table; `reports` must contain one report per golden prime.
pub fn check_ratio_table(golden: &RatioGolden, reports: &[CongruenceReport]) -> Result<Vec<GoldenMismatch>> {
    let mut out = Vec::new();
    for row in &golden.rows {
        let p: u64 = row["p"].parse().map_err(|_| Error::Parse(format!("bad prime {:?}", row["p"])))?;
        match reports.iter().find(|r| r.p == p) {
            Some(r) => out.extend(check_ratio_row(row, r)?),
            None => out.push(GoldenMismatch { p, column: "p".into(), expected: "a report".into(), got: "none".into() }),
        }
    }
    Ok(out)
}
