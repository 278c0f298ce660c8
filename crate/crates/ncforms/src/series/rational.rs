//! Exact rationals. `ExactRational` is `BigRational`, which is kept in lowest
//! terms with a positive denominator by construction.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type ExactRational = BigRational;

pub fn rat(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `num/den`, always with an explicit denominator.
pub fn format_rational(x: &ExactRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Exact integer n-th root, if one exists.
pub fn int_nth_root(x: &BigInt, n: u32) -> Option<BigInt> {
    if x.is_negative() {
        if n.is_multiple_of(2) {
            return None;
        }
        return int_nth_root(&-x, n).map(|r| -r);
    }
    let r = x.nth_root(n);
    (num_traits::pow(r.clone(), n as usize) == *x).then_some(r)
}

pub fn rational_nth_root(x: &ExactRational, n: u32) -> Option<ExactRational> {
    let num = int_nth_root(x.numer(), n)?;
    let den = int_nth_root(x.denom(), n)?;
    Some(BigRational::new(num, den))
}

pub fn rational_pow(x: &ExactRational, e: i64) -> ExactRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// p-adic valuation of a nonzero integer.
pub fn int_valuation(x: &BigInt, p: u64) -> u32 {
    debug_assert!(!x.is_zero());
    let p = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        y = q;
        v += 1;
    }
}

/// ord_p(x); `None` stands for +infinity (x = 0).
pub fn padic_valuation(x: &ExactRational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(int_valuation(x.numer(), p) as i64 - int_valuation(x.denom(), p) as i64)
}

pub fn is_integer(x: &ExactRational) -> bool {
    x.denom().is_one()
}

pub fn sign_of(x: &ExactRational) -> Sign {
    x.numer().sign()
}
