//! Ratio-constancy tests, `alpha` and `A_p` recovery, and the three-term
//! congruence check.

use serde::Serialize;

use crate::aswd::residue::{reduce_mod_p2, Residue};
use crate::error::{Error, Result};
use crate::series::rational::{padic_valuation, ExactRational};
use crate::series::PuiseuxSeries;

/// Coefficients `a_0, a_1, ...` of `q^{n/mu}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientSequence {
    pub mu: u32,
    pub coeffs: Vec<ExactRational>,
}

impl CoefficientSequence {
    /// Index `n` is the exponent of `q^{1/mu}`; every known coefficient is kept.
    pub fn from_series(s: &PuiseuxSeries, mu: u32) -> Result<Self> {
        let len = (s.prec() as i128 * mu as i128 / s.mu() as i128).max(0) as usize;
        let coeffs = (0..len as i64).map(|n| s.coefficient_at(n, mu)).collect::<Result<_>>()?;
        Ok(CoefficientSequence { mu, coeffs })
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, n: u64) -> Result<&ExactRational> {
        self.coeffs.get(n as usize).ok_or(Error::InsufficientPrecision {
            index: n as i64,
            mu: self.mu,
            prec: self.coeffs.len() as i64,
        })
    }

    /// All coefficients with index `<= bound`, reduced mod `p^2`.
    pub fn reduce(&self, p: u64, bound: u64) -> Result<Vec<Residue>> {
        self.get(bound)?;
        self.coeffs[..=bound as usize].iter().map(|c| reduce_mod_p2(c, p)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum RatioOutcome {
    Constant { value: Residue },
    /// Two test indices giving different ratios.
    NotConstant { n1: u64, r1: Residue, n2: u64, r2: Residue },
}

impl RatioOutcome {
    pub fn constant(&self) -> Option<Residue> {
        match self {
            RatioOutcome::Constant { value } => Some(*value),
            RatioOutcome::NotConstant { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RatioTest {
    pub outcome: RatioOutcome,
    /// Size of the test set.
    pub tested: usize,
}

impl RatioTest {
    pub fn constant(&self) -> Option<Residue> {
        self.outcome.constant()
    }
}

/// `a_{np} / b_n mod p^2` over `n` with `p ∤ n`, `np <= bound` and `b_n` a unit.
pub fn ratio_test(a: &CoefficientSequence, b: &CoefficientSequence, p: u64, bound: u64) -> Result<RatioTest> {
    let ra = a.reduce(p, bound)?;
    let rb = b.reduce(p, bound / p)?;
    ratio_test_reduced(&ra, &rb, p, bound)
}

pub(crate) fn ratio_test_reduced(ra: &[Residue], rb: &[Residue], p: u64, bound: u64) -> Result<RatioTest> {
    let mut first: Option<(u64, Residue)> = None;
    let mut tested = 0;
    for n in 1..=bound / p {
        if n % p == 0 || !rb[n as usize].is_unit() {
            continue;
        }
        tested += 1;
        let r = ra[(n * p) as usize].mul(&rb[n as usize].inv().expect("unit"));
        match first {
            None => first = Some((n, r)),
            Some((n1, r1)) if r1 != r => {
                return Ok(RatioTest { outcome: RatioOutcome::NotConstant { n1, r1, n2: n, r2: r }, tested })
            }
            Some(_) => {}
        }
    }
    let (_, value) = first.ok_or(Error::InsufficientData)?;
    Ok(RatioTest { outcome: RatioOutcome::Constant { value }, tested })
}

/// Constancy of `a_{np}/a_n`.
pub fn ratio_constancy(a: &CoefficientSequence, p: u64, bound: u64) -> Result<Option<Residue>> {
    Ok(ratio_test(a, a, p, bound)?.constant())
}

/// Constancy of `a_{np}/b_n` and `b_{np}/a_n`; `None` unless both are constant.
pub fn cross_ratio_constancy(
    a: &CoefficientSequence,
    b: &CoefficientSequence,
    p: u64,
    bound: u64,
) -> Result<Option<(Residue, Residue)>> {
    let c1 = ratio_test(a, b, p, bound)?.constant();
    let c2 = ratio_test(b, a, p, bound)?.constant();
    Ok(c1.zip(c2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AlphaData {
    pub alpha_squared: Residue,
    pub ap_squared: Residue,
    /// `(k, (c1/c2)^k)` for `k = 1..=6`.
    pub power_pattern: Vec<(u32, Residue)>,
}

/// `alpha^2 = c1/c2`, `A_p^2 = c1 c2` and the powers of `c1/c2`.
pub fn solve_alpha_ap(c1: Residue, c2: Residue) -> Result<AlphaData> {
    let inv = c2.inv().ok_or(Error::NotUnit(c2.value))?;
    let alpha_squared = c1.mul(&inv);
    let power_pattern = (1..=6).map(|k| (k, alpha_squared.pow(k as i64).expect("nonnegative"))).collect();
    Ok(AlphaData { alpha_squared, ap_squared: c1.mul(&c2), power_pattern })
}

/// Hecke eigenvalue used by the three-term check.
#[derive(Clone, Debug, PartialEq)]
pub enum ApValue {
    Exact(ExactRational),
    /// Only known mod `p^2`: indices with `p | n` are checked mod `p^2` too.
    Residue(Residue),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ThreeTermReport {
    pub p: u64,
    pub checked: usize,
    /// `(n, v_p(lhs))` for every failing index (`None` valuation: exact zero).
    pub failures: Vec<(u64, Option<i64>)>,
    /// The eigenvalue was only known mod `p^2`.
    pub capped: bool,
}

impl ThreeTermReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `v_p(a_{np} - A_p a_n + chi p^2 a_{n/p}) >= 2(1 + ord_p n)` for `1 <= n <= n_bound`.
pub fn aswd_three_term_check(
    a: &CoefficientSequence,
    ap: &ApValue,
    chi: i8,
    p: u64,
    n_bound: u64,
) -> Result<ThreeTermReport> {
    a.get(n_bound * p)?;
    let mut failures = Vec::new();
    for n in 1..=n_bound {
        let an = a.get(n)?;
        let anp = a.get(n * p)?;
        let anp_div = if n % p == 0 { Some(a.get(n / p)?) } else { None };
        let ord_n = padic_valuation(&ExactRational::from_integer(n.into()), p).unwrap_or(0);
        let need = 2 * (1 + ord_n);
        match ap {
            ApValue::Exact(ap) => {
                let mut lhs = anp - ap * an;
                if let Some(x) = anp_div {
                    lhs += ExactRational::from_integer((chi as i64 * (p * p) as i64).into()) * x;
                }
                let v = padic_valuation(&lhs, p);
                if v.is_some_and(|v| v < need) {
                    failures.push((n, v));
                }
            }
            ApValue::Residue(r) => {
                let lhs = reduce_mod_p2(anp, p)?.sub(&r.mul(&reduce_mod_p2(an, p)?));
                if !lhs.is_zero() {
                    failures.push((n, Some(lhs.valuation() as i64)));
                }
            }
        }
    }
    Ok(ThreeTermReport { p, checked: n_bound as usize, failures, capped: matches!(ap, ApValue::Residue(_)) })
}
