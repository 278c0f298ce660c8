//! Factored residue expressions from ratio tables, e.g. `-22*w^-1`, `±6*r/c`
//! or `-18*13^2`.
//!
//! A product of factors joined by `*` or `/`, with an optional leading `+`,
//! `-` or `±`. A factor is an integer or one of the symbols `w` (a root of
//! unity), `r` (a tabulated square root) or `c` (a tabulated cube root), each
//! with an optional integer exponent `^k`.

use std::collections::BTreeMap;

use crate::aswd::residue::Residue;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Base {
    Int(i64),
    Sym(char),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    /// `Some(-1)` for `-`, `None` for `±`.
    sign: Option<i64>,
    /// `(base, exponent)`; division contributes a negated exponent.
    factors: Vec<(Base, i64)>,
}

impl Expr {
    pub fn parse(src: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expression {src:?}"));
        let s = src.trim();
        let (sign, body) = if let Some(rest) = s.strip_prefix('±') {
            (None, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (Some(-1), rest)
        } else {
            (Some(1), s.strip_prefix('+').unwrap_or(s))
        };
        let mut factors = Vec::new();
        let mut divide = false;
        let mut rest = body.trim();
        loop {
            let end = rest.find(['*', '/']).unwrap_or(rest.len());
            let (tok, tail) = rest.split_at(end);
            let (base, exp) = match tok.trim().split_once('^') {
                Some((b, e)) => (b.trim(), e.trim().parse::<i64>().map_err(|_| bad())?),
                None => (tok.trim(), 1),
            };
            let base = match base {
                "w" | "r" | "c" => Base::Sym(base.chars().next().expect("nonempty")),
                n => Base::Int(n.parse().map_err(|_| bad())?),
            };
            factors.push((base, if divide { -exp } else { exp }));
            if tail.is_empty() {
                break;
            }
            divide = tail.starts_with('/');
            rest = &tail[1..];
        }
        Ok(Expr { sign, factors })
    }

    pub fn uses(&self, sym: char) -> bool {
        self.factors.iter().any(|(b, _)| *b == Base::Sym(sym))
    }

    /// Every value of the expression mod `p^2` (two when the sign is `±`).
    /// `None` if a symbol is unbound or a divisor is not a unit.
    pub fn eval(&self, p: u64, vars: &BTreeMap<char, Residue>) -> Option<Vec<Residue>> {
        let mut acc = Residue::p2(1, p);
        for (base, exp) in &self.factors {
            let b = match base {
                Base::Int(n) => Residue::p2(*n, p),
                Base::Sym(s) => *vars.get(s)?,
            };
            acc = acc.mul(&b.pow(*exp)?);
        }
        Some(match self.sign {
            Some(s) => vec![acc.mul(&Residue::p2(s, p))],
            None => vec![acc, acc.neg()],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(p: u64, pairs: &[(char, i64)]) -> BTreeMap<char, Residue> {
        pairs.iter().map(|&(k, v)| (k, Residue::p2(v, p))).collect()
    }

    #[test]
    fn printed_forms() {
        let e = Expr::parse("-2*w").unwrap();
        assert_eq!(e.eval(7, &vars(7, &[('w', 31)])).unwrap(), vec![Residue::p2(36, 7)]);
        let e = Expr::parse("-2*w^-1").unwrap();
        assert_eq!(e.eval(7, &vars(7, &[('w', 31)])).unwrap(), vec![Residue::p2(11, 7)]);
        let e = Expr::parse("-18*6^2").unwrap();
        assert_eq!(e.eval(17, &vars(17, &[])).unwrap()[0], Residue::p2(-648, 17));
        let e = Expr::parse("±6*r/c").unwrap();
        let v = e.eval(5, &vars(5, &[('r', 7), ('c', 3)])).unwrap();
        assert!(v.contains(&Residue::p2(14, 5)));
        let e = Expr::parse("-r*w^2").unwrap();
        assert_eq!(e.eval(7, &vars(7, &[('r', 12), ('w', 18)])).unwrap(), vec![Residue::p2(32, 7)]);
        assert!(e.uses('r') && !e.uses('c'));
    }

    #[test]
    fn unbound_and_bad_input() {
        assert!(Expr::parse("3*c").unwrap().eval(5, &BTreeMap::new()).is_none());
        assert!(Expr::parse("3*x").is_err());
        assert!(Expr::parse("3*").is_err());
        assert!(Expr::parse("1/5").unwrap().eval(5, &BTreeMap::new()).is_none());
    }
}
