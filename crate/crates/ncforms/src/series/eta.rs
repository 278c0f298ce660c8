//! Dedekind eta products and quotients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::eisenstein::divisor_sigma;
use super::puiseux::PuiseuxSeries;
use super::rational::{int, ExactRational};
use crate::error::{Error, Result};

/// `prod_{n>=1} (1 - q^{m n})` known modulo `q^order`, by the pentagonal
/// number theorem. The `q^{m/24}` prefactor of eta is not included.
pub fn eta_expansion(m: u32, order: i64) -> PuiseuxSeries {
    assert!(m >= 1);
    let order = order.max(0);
    let mut coeffs = vec![ExactRational::zero(); order as usize];
    let m = m as i64;
    if order > 0 {
        coeffs[0] = int(1);
    }
    let mut k: i64 = 1;
    while m * k * (3 * k - 1) / 2 < order {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        for e in [m * k * (3 * k - 1) / 2, m * k * (3 * k + 1) / 2] {
            if e < order {
                coeffs[e as usize] = int(sign);
            }
        }
        k += 1;
    }
    PuiseuxSeries::new(1, 0, coeffs, order)
}

/// A finite product `prod eta(m z)^{e_m}` with distinct scales.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaQuotient {
    factors: BTreeMap<u32, i64>,
}

impl EtaQuotient {
    pub fn new(pairs: &[(u32, i64)]) -> Self {
        let mut factors = BTreeMap::new();
        for &(m, e) in pairs {
            assert!(m >= 1, "eta scale must be positive");
            *factors.entry(m).or_insert(0) += e;
        }
        factors.retain(|_, e| *e != 0);
        EtaQuotient { factors }
    }

    /// Parse `"1:4,2:-6,4:20"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (m, e) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("eta factor {part:?} is not m:e")))?;
            let m: u32 = m.trim().parse().map_err(|_| Error::Parse(format!("bad scale in {part:?}")))?;
            let e: i64 = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {part:?}")))?;
            if m == 0 {
                return Err(Error::Parse("eta scale must be positive".into()));
            }
            pairs.push((m, e));
        }
        Ok(Self::new(&pairs))
    }

    pub fn factors(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.factors.iter().map(|(&m, &e)| (m, e))
    }

    pub fn mul(&self, other: &EtaQuotient) -> EtaQuotient {
        let pairs: Vec<_> = self.factors().chain(other.factors()).collect();
        Self::new(&pairs)
    }

    pub fn pow(&self, k: i64) -> EtaQuotient {
        let pairs: Vec<_> = self.factors().map(|(m, e)| (m, e * k)).collect();
        Self::new(&pairs)
    }

    pub fn inverse(&self) -> EtaQuotient {
        self.pow(-1)
    }

    /// `sum m e`; the q-power prefactor is this over 24.
    pub fn prefactor_24(&self) -> i64 {
        self.factors().map(|(m, e)| m as i64 * e).sum()
    }

    /// Weight `sum e / 2`, as a rational.
    pub fn weight(&self) -> ExactRational {
        BigRational::new(self.factors().map(|(_, e)| e).sum::<i64>().into(), 2.into())
    }

    /// Coefficients `C_k` of `q d/dq log` of the body: `C_k = -sum_{m|k} e_m m sigma(k/m)`.
    pub fn log_derivative(&self, order: usize) -> Vec<i64> {
        let mut c = vec![0i64; order];
        for (m, e) in self.factors() {
            let m = m as usize;
            let mut j = 1;
            while m * j < order {
                c[m * j] -= e * m as i64 * divisor_sigma(j as u64) as i64;
                j += 1;
            }
        }
        c
    }

    /// Expansion of the quotient, including the prefactor `q^{sum m e / 24}`,
    /// with the body known modulo `q^order`.
    pub fn expansion(&self, order: i64) -> Result<PuiseuxSeries> {
        let mut body = PuiseuxSeries::one(order);
        for (m, e) in self.factors() {
            let eta = eta_expansion(m, order).pow(e)?;
            body = body.mul(&eta);
        }
        let pre = self.prefactor_24();
        Ok(body.shift(pre, 24))
    }

    /// The real n-th root of the quotient, with its body known modulo `q^order`.
    ///
    /// Uses `k f_k = (1/n) sum_j C_j f_{k-j}` on integers `F_k = n^{2k} f_k`,
    /// keeping `T_i = n^{2(k-i)} F_i` so each step only does big-by-small
    /// products.
    pub fn root(&self, n: u32, order: i64) -> Result<PuiseuxSeries> {
        assert!(n >= 1);
        let order = order.max(1) as usize;
        let c = self.log_derivative(order);
        let n_big = BigInt::from(n);
        let n2 = BigInt::from(n as u64 * n as u64);
        let mut t: Vec<BigInt> = Vec::with_capacity(order);
        t.push(BigInt::one());
        let mut f = vec![ExactRational::one()];
        let mut denom = BigInt::one();
        for k in 1..order {
            for ti in t.iter_mut() {
                *ti *= &n2;
            }
            denom *= &n2;
            let mut s = BigInt::zero();
            for j in 1..=k {
                if c[j] != 0 {
                    s += &t[k - j] * c[j];
                }
            }
            let d = &n_big * BigInt::from(k);
            let (fk, r) = s.div_rem(&d);
            if !r.is_zero() {
                return Err(Error::Consistency(format!("non-integral root numerator at q^{k}")));
            }
            f.push(BigRational::new(fk.clone(), denom.clone()));
            t.push(fk);
        }
        let pre = self.prefactor_24();
        let body = PuiseuxSeries::new(1, 0, f, order as i64);
        // q^{pre/(24 n)}
        Ok(body.shift(pre, 24 * n))
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors().map(|(m, e)| format!("{m}:{e}")).collect();
        write!(f, "{}", parts.join(","))
    }
}
