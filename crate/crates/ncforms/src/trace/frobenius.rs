//! Frobenius traces of elliptic surfaces `y^2 = x^3 + A(r) x + B(r)`.
//!
//! At every point of P^1(F_q) the model is twisted to be integral with
//! minimal `k`: `A u^{4k}`, `B u^{6k}` for a uniformizer `u`. The reduced
//! curve gives the local term; `Tr = -sum` of local terms.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::counting::{local_value, FiberType};
use super::field::{FiniteField, PrimeField, QuadExtField};
use crate::error::{Error, Result};
use crate::surface::ratfunc::RationalFunctionQ;
use crate::surface::weierstrass::BaseFamily;

/// `A(r), B(r)` for a base family pulled back along `t = sub(r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    pub base: BaseFamily,
    pub parameterization: RationalFunctionQ,
    pub a: RationalFunctionQ,
    pub b: RationalFunctionQ,
}

impl SurfaceModel {
    pub fn new(base: BaseFamily, parameterization: RationalFunctionQ) -> Self {
        let s = base.short().substitute(&parameterization);
        SurfaceModel { base, parameterization, a: s.a, b: s.b }
    }

    /// Parse a parameterization in `r`, e.g. `"(1-3r^3)/(9-3r^3)"`.
    pub fn parse(base: BaseFamily, sub: &str) -> Result<Self> {
        Ok(Self::new(base, RationalFunctionQ::parse(sub, 'r')?))
    }

    pub fn label(&self) -> String {
        format!("{}({})", self.base.label(), self.parameterization.fmt_var('r'))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalTrace {
    /// `"inf"` or the coordinates of the point (pairs for F_{p^2}).
    pub point: String,
    pub fiber_type: FiberType,
    pub value: i64,
}

struct Reduced {
    an: Vec<u64>,
    ad: Vec<u64>,
    bn: Vec<u64>,
    bd: Vec<u64>,
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn reduce(model: &SurfaceModel, p: u64) -> Result<Reduced> {
    if p <= 3 {
        return Err(Error::BadPrime(p, "characteristic 2 and 3 are excluded".into()));
    }
    let bad = |why: &str| Error::BadPrime(p, why.into());
    let (an, ad) = model.a.reduce_mod(p).ok_or_else(|| bad("p divides a denominator of A"))?;
    let (bn, bd) = model.b.reduce_mod(p).ok_or_else(|| bad("p divides a denominator of B"))?;
    let r = Reduced { an: trim(an), ad: trim(ad), bn: trim(bn), bd: trim(bd) };
    if r.an.is_empty() || r.bn.is_empty() {
        return Err(bad("A or B vanishes identically mod p"));
    }
    Ok(r)
}

/// Order of vanishing at `x` and the value of `poly / (r - x)^ord` there.
fn ord_at<F: FiniteField>(f: &F, coeffs: &[u64], x: F::Elem) -> (i64, F::Elem) {
    let mut cs: Vec<F::Elem> = coeffs.iter().map(|&c| f.from_base(c)).collect();
    let mut ord = 0;
    loop {
        // synthetic division by (r - x)
        let mut acc = f.zero();
        let mut quo = Vec::with_capacity(cs.len());
        for &c in cs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
            quo.push(acc);
        }
        if !f.is_zero(acc) {
            return (ord, acc);
        }
        quo.pop();
        quo.reverse();
        cs = quo;
        ord += 1;
    }
}

fn ord_at_infinity<F: FiniteField>(f: &F, coeffs: &[u64]) -> (i64, F::Elem) {
    (-(coeffs.len() as i64 - 1), f.from_base(*coeffs.last().expect("nonzero polynomial")))
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Reduced minimal twist `(A0, B0)` from the local data of A and B.
fn minimal_fibre<F: FiniteField>(f: &F, a: ((i64, F::Elem), (i64, F::Elem)), b: ((i64, F::Elem), (i64, F::Elem))) -> (F::Elem, F::Elem) {
    let va = a.0 .0 - a.1 .0;
    let vb = b.0 .0 - b.1 .0;
    let k = ceil_div(-va, 4).max(ceil_div(-vb, 6));
    let lead = |n: F::Elem, d: F::Elem| f.mul(n, f.inv(d).expect("leading value is a unit"));
    let a0 = if va + 4 * k > 0 { f.zero() } else { lead(a.0 .1, a.1 .1) };
    let b0 = if vb + 6 * k > 0 { f.zero() } else { lead(b.0 .1, b.1 .1) };
    (a0, b0)
}

fn fibres<F: FiniteField>(f: &F, r: &Reduced) -> Vec<(Option<F::Elem>, (F::Elem, F::Elem))> {
    let mut out: Vec<_> = f
        .elements()
        .into_par_iter()
        .map(|x| {
            let a = (ord_at(f, &r.an, x), ord_at(f, &r.ad, x));
            let b = (ord_at(f, &r.bn, x), ord_at(f, &r.bd, x));
            (Some(x), minimal_fibre(f, a, b))
        })
        .collect();
    let a = (ord_at_infinity(f, &r.an), ord_at_infinity(f, &r.ad));
    let b = (ord_at_infinity(f, &r.bn), ord_at_infinity(f, &r.bd));
    out.push((None, minimal_fibre(f, a, b)));
    out
}

fn trace_in<F: FiniteField>(f: &F, r: &Reduced) -> i64 {
    let mut counts: HashMap<(F::Elem, F::Elem), i64> = HashMap::new();
    for (_, key) in fibres(f, r) {
        *counts.entry(key).or_insert(0) += 1;
    }
    let total: i64 = counts.into_par_iter().map(|((a, b), n)| n * local_value(f, a, b).1).sum();
    -total
}

fn local_in<F: FiniteField>(f: &F, r: &Reduced, fmt: impl Fn(F::Elem) -> String + Sync) -> Vec<LocalTrace> {
    fibres(f, r)
        .into_par_iter()
        .map(|(pt, (a, b))| {
            let (fiber_type, value) = local_value(f, a, b);
            LocalTrace { point: pt.map(&fmt).unwrap_or_else(|| "inf".into()), fiber_type, value }
        })
        .collect()
}

/// `Tr(Frob_q)` with `q = p^degree`, `degree` 1 or 2.
pub fn frobenius_trace(model: &SurfaceModel, p: u64, degree: u32) -> Result<i64> {
    let r = reduce(model, p)?;
    match degree {
        1 => Ok(trace_in(&PrimeField::new(p)?, &r)),
        2 => Ok(trace_in(&QuadExtField::new(p)?, &r)),
        _ => Err(Error::OutOfScope(format!("only q = p and q = p^2 are supported, got degree {degree}"))),
    }
}

/// As [`frobenius_trace`] over F_{p^2} presented with a chosen nonresidue.
pub fn frobenius_trace_p2_with(model: &SurfaceModel, p: u64, nonresidue: u64) -> Result<i64> {
    let r = reduce(model, p)?;
    Ok(trace_in(&QuadExtField::with_nonresidue(p, nonresidue)?, &r))
}

/// Every local term over P^1(F_q), affine points first.
pub fn local_traces(model: &SurfaceModel, p: u64, degree: u32) -> Result<Vec<LocalTrace>> {
    let r = reduce(model, p)?;
    match degree {
        1 => Ok(local_in(&PrimeField::new(p)?, &r, |x| x.to_string())),
        2 => Ok(local_in(&QuadExtField::new(p)?, &r, |x| format!("{}+{}v", x.a, x.b))),
        _ => Err(Error::OutOfScope(format!("degree {degree}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FingerprintRow {
    pub p: u64,
    pub tr_p: (i64, i64),
    pub tr_p2: (i64, i64),
}

impl FingerprintRow {
    pub fn p2_equal(&self) -> bool {
        self.tr_p2.0 == self.tr_p2.1
    }
    pub fn p_equal(&self) -> bool {
        self.tr_p.0 == self.tr_p.1
    }
}

/// Side-by-side `Tr_p`, `Tr_{p^2}` of two models.
pub fn trace_fingerprint(a: &SurfaceModel, b: &SurfaceModel, primes: &[u64]) -> Result<Vec<FingerprintRow>> {
    primes
        .par_iter()
        .map(|&p| {
            Ok(FingerprintRow {
                p,
                tr_p: (frobenius_trace(a, p, 1)?, frobenius_trace(b, p, 1)?),
                tr_p2: (frobenius_trace(a, p, 2)?, frobenius_trace(b, p, 2)?),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e8(s: &str) -> SurfaceModel {
        SurfaceModel::parse(BaseFamily::E8, s).unwrap()
    }

    #[test]
    fn table_entries_for_24_6_1() {
        let m = e8("r^3");
        assert_eq!(frobenius_trace(&m, 7, 1).unwrap(), 4);
        assert_eq!(frobenius_trace(&m, 13, 1).unwrap(), -44);
        assert_eq!(frobenius_trace(&m, 5, 2).unwrap(), 100);
    }

    #[test]
    fn local_terms_sum_to_trace() {
        let m = e8("r^3");
        let loc = local_traces(&m, 7, 1).unwrap();
        assert_eq!(loc.len(), 8);
        let sum: i64 = loc.iter().map(|l| l.value).sum();
        assert_eq!(-sum, frobenius_trace(&m, 7, 1).unwrap());
        for l in &loc {
            match l.fiber_type {
                FiberType::Smooth => assert!(l.value * l.value <= 28),
                FiberType::SplitMult => assert_eq!(l.value, 1),
                FiberType::NonsplitMult => assert_eq!(l.value, -1),
                FiberType::Additive => assert_eq!(l.value, 0),
            }
        }
    }

    #[test]
    fn nonresidue_choice_is_irrelevant() {
        let m = SurfaceModel::parse(BaseFamily::E6, "1/(24r^3+9)").unwrap();
        let base = frobenius_trace(&m, 19, 2).unwrap();
        assert_eq!(base, -866);
        assert_eq!(frobenius_trace_p2_with(&m, 19, 13).unwrap(), base);
    }

    #[test]
    fn bad_primes_refused() {
        let m = e8("r^3");
        assert!(matches!(frobenius_trace(&m, 3, 1), Err(Error::BadPrime(3, _))));
        let m = SurfaceModel::parse(BaseFamily::E6, "1-8/(3r^3)").unwrap();
        assert!(frobenius_trace(&m, 5, 1).is_ok());
        assert!(frobenius_trace(&m, 4, 1).is_err());
    }

    #[test]
    fn fingerprint_against_itself() {
        let m = e8("r^3-1");
        for row in trace_fingerprint(&m, &m, &[5, 7]).unwrap() {
            assert!(row.p_equal() && row.p2_equal());
        }
    }
}
