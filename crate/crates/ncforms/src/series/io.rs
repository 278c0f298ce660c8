//! Golden-file text format: one term per line, `exp_num/mu<TAB>num/den`.

use num_integer::Integer;

use super::puiseux::PuiseuxSeries;
use super::rational::{format_rational, parse_rational, ExactRational};
use crate::error::{Error, Result};

/// Nonzero terms of `s`, ascending.
pub fn write_series(s: &PuiseuxSeries) -> String {
    let mut out = String::new();
    for (e, c) in s.terms() {
        out.push_str(&format!("{e}/{}\t{}\n", s.mu(), format_rational(c)));
    }
    out
}

/// A parsed term: exponent `num/den` (reduced) and coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub exp_num: i64,
    pub exp_den: u32,
    pub coeff: ExactRational,
}

pub fn parse_terms(text: &str) -> Result<Vec<Term>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Parse(format!("line {}: {line:?}", lineno + 1));
        let (exp, coeff) = line.split_once('\t').ok_or_else(bad)?;
        let (n, d) = exp.trim().split_once('/').ok_or_else(bad)?;
        let n: i64 = n.parse().map_err(|_| bad())?;
        let d: i64 = d.parse().map_err(|_| bad())?;
        if d <= 0 {
            return Err(bad());
        }
        let g = n.gcd(&d).max(1);
        out.push(Term { exp_num: n / g, exp_den: (d / g) as u32, coeff: parse_rational(coeff)? });
    }
    Ok(out)
}

/// Terms of `golden` that disagree with `s`, with the computed value
/// (an `Err` when `s` is not known that far).
pub fn compare_terms(s: &PuiseuxSeries, golden: &[Term]) -> Vec<(Term, Result<ExactRational>)> {
    golden
        .iter()
        .filter_map(|t| {
            let got = s.coefficient_at(t.exp_num, t.exp_den);
            match &got {
                Ok(c) if *c == t.coeff => None,
                _ => Some((t.clone(), got)),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::{int, rat};

    #[test]
    fn round_trip() {
        let s = PuiseuxSeries::new(3, 1, vec![int(1), int(0), int(0), rat(-16, 3)], 10);
        let text = write_series(&s);
        assert_eq!(text, "1/3\t1/1\n4/3\t-16/3\n");
        let terms = parse_terms(&text).unwrap();
        assert!(compare_terms(&s, &terms).is_empty());
    }

    #[test]
    fn mismatch_and_out_of_range_are_reported() {
        let s = PuiseuxSeries::from_ints(&[1, 2], 2);
        let terms = parse_terms("0/1\t1/1\n1/1\t3/1\n5/1\t0/1\n").unwrap();
        let bad = compare_terms(&s, &terms);
        assert_eq!(bad.len(), 2);
        assert!(bad[1].1.is_err());
    }
}
