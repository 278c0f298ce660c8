//! Residues modulo `p^e` (`e <= 2`) and root extraction mod `p^2`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::rational::ExactRational;
use crate::trace::field::{is_prime, pow_mod};

/// A residue modulo `p^e`. Values produced by cancelling a common power of
/// `p` carry the weakened exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Residue {
    pub value: u64,
    pub p: u64,
    pub e: u32,
}

pub type ResidueModP2 = Residue;

fn modulus(p: u64, e: u32) -> u64 {
    p.pow(e)
}

impl Residue {
    pub fn new(x: i64, p: u64, e: u32) -> Self {
        let m = modulus(p, e);
        Residue { value: x.rem_euclid(m as i64) as u64, p, e }
    }

    pub fn p2(x: i64, p: u64) -> Self {
        Self::new(x, p, 2)
    }

    pub fn modulus(&self) -> u64 {
        modulus(self.p, self.e)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_unit(&self) -> bool {
        !self.value.is_multiple_of(self.p)
    }

    /// `ord_p` of the value, capped at `e` (a zero residue has valuation `e`).
    pub fn valuation(&self) -> u32 {
        let mut v = 0;
        let mut x = self.value;
        while v < self.e && x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    /// Reduce to a smaller exponent.
    pub fn weaken(&self, e: u32) -> Self {
        let e = e.min(self.e);
        Residue { value: self.value % modulus(self.p, e), p: self.p, e }
    }

    fn common(&self, o: &Self) -> (Self, Self) {
        assert_eq!(self.p, o.p, "residues modulo different primes");
        let e = self.e.min(o.e);
        (self.weaken(e), o.weaken(e))
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = self.common(o);
        Residue { value: (a.value + b.value) % a.modulus(), ..a }
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus();
        Residue { value: (m - self.value) % m, ..*self }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = self.common(o);
        Residue { value: ((a.value as u128 * b.value as u128) % a.modulus() as u128) as u64, ..a }
    }

    pub fn pow(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { *self };
        Some(Residue { value: pow_mod(base.value, k.unsigned_abs(), self.modulus()), ..*self })
    }

    pub fn inv(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let m = self.modulus();
        let ph = m / self.p * (self.p - 1);
        Some(Residue { value: pow_mod(self.value, ph - 1, m), ..*self })
    }

    /// `self / o`, cancelling the common power of `p` first. The result is
    /// known modulo `p^{e - v(o)}`; `None` if `o` has the larger valuation.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let (a, b) = self.common(o);
        let v = b.valuation();
        if v == a.e {
            return None;
        }
        if a.valuation() < v {
            return None;
        }
        let k = a.p.pow(v);
        let e = a.e - v;
        let an = Residue { value: a.value / k % modulus(a.p, e), p: a.p, e };
        let bn = Residue { value: b.value / k % modulus(a.p, e), p: a.p, e };
        Some(an.mul(&bn.inv()?))
    }

    /// Multiplicative order, for units.
    pub fn order(&self) -> Option<u32> {
        if !self.is_unit() {
            return None;
        }
        let one = Residue { value: 1 % self.modulus(), ..*self };
        let mut x = *self;
        let mut k = 1;
        while x != one {
            x = x.mul(self);
            k += 1;
        }
        Some(k)
    }

    /// Signed representative in `(-m/2, m/2]`.
    pub fn signed(&self) -> i64 {
        let m = self.modulus() as i64;
        let v = self.value as i64;
        if v > m / 2 {
            v - m
        } else {
            v
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn check_p(p: u64) -> Result<()> {
    if p < 5 || !is_prime(p) {
        return Err(Error::BadPrime(p, "need a prime p >= 5".into()));
    }
    Ok(())
}

/// `numerator * denominator^{-1} mod p^2`.
pub fn reduce_mod_p2(x: &ExactRational, p: u64) -> Result<Residue> {
    check_p(p)?;
    let m = BigInt::from(p * p);
    let d = x.denom().mod_floor(&m);
    if (&d % BigInt::from(p)).is_zero() {
        return Err(Error::NotPIntegral { value: x.to_string(), p });
    }
    let n = u64::try_from(x.numer().mod_floor(&m)).expect("reduced");
    let d = u64::try_from(d).expect("reduced");
    let dn = Residue::p2(d as i64, p).inv().expect("unit");
    Ok(Residue::p2(n as i64, p).mul(&dn))
}

pub use crate::series::rational::padic_valuation;

/// Both square roots of a unit mod `p^2`, or `None` for a nonresidue mod p.
pub fn sqrt_mod_p2(a: Residue) -> Option<(Residue, Residue)> {
    let p = a.p;
    if !a.is_unit() {
        return None;
    }
    let a1 = a.value % p;
    let x0 = (1..p).find(|x| x * x % p == a1)?;
    // Hensel: x1 = x0 - (x0^2 - a) / (2 x0)
    let x = Residue::new(x0 as i64, p, a.e);
    let f = x.mul(&x).sub(&a);
    let x1 = x.sub(&f.mul(&Residue::new(2 * x0 as i64, p, a.e).inv()?));
    let (r, s) = (x1, x1.neg());
    Some(if r.value <= s.value { (r, s) } else { (s, r) })
}

/// The unique cube root of a unit mod `p^2` when `p = 2 mod 3`.
pub fn cbrt_mod_p2(a: Residue) -> Result<Residue> {
    let p = a.p;
    if p % 3 == 1 {
        return Err(Error::CubeRootNotUnique(p));
    }
    if !a.is_unit() {
        return Err(Error::NotUnit(a.value));
    }
    let group = a.modulus() / p * (p - 1);
    let e = (1..group).find(|k| (3 * k) % group == 1).expect("3 is invertible mod p(p-1)");
    Ok(a.pow(e as i64).expect("nonnegative"))
}

/// Every `x` with `x^6 = 1 mod p^2`, ascending.
pub fn sixth_roots_mod_p2(p: u64) -> Result<Vec<Residue>> {
    check_p(p)?;
    let m = p * p;
    Ok((1..m).filter(|&x| pow_mod(x, 6, m) == 1).map(|x| Residue::p2(x as i64, p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::{int, rat};
    use rand::{Rng, SeedableRng};

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_mod_p2(&rat(-4, 3), 5).unwrap().value, 7);
        assert_eq!(reduce_mod_p2(&int(0), 5).unwrap().value, 0);
        assert_eq!(reduce_mod_p2(&int(-22), 13).unwrap().value, 147);
        assert!(matches!(reduce_mod_p2(&rat(1, 10), 5), Err(Error::NotPIntegral { .. })));
    }

    #[test]
    fn reduction_round_trips() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..500 {
            let p = [5u64, 7, 11, 13, 47][rng.gen_range(0..5)];
            let n: i64 = rng.gen_range(-10_000..10_000);
            let d: i64 = loop {
                let d = rng.gen_range(1..5000);
                if d % p as i64 != 0 {
                    break d;
                }
            };
            let r = reduce_mod_p2(&rat(n, d), p).unwrap();
            assert_eq!(r.mul(&Residue::p2(d, p)), Residue::p2(n, p));
        }
    }

    #[test]
    fn sqrt_examples() {
        let (a, b) = sqrt_mod_p2(Residue::p2(-3, 7)).unwrap();
        assert_eq!((a.value, b.value), (12, 37));
        assert_eq!(sqrt_mod_p2(Residue::p2(1, 5)).unwrap(), (Residue::p2(1, 5), Residue::p2(24, 5)));
        assert!(sqrt_mod_p2(Residue::p2(2, 5)).is_none());
    }

    #[test]
    fn cbrt_examples() {
        assert_eq!(cbrt_mod_p2(Residue::p2(3, 5)).unwrap().value, 12);
        assert_eq!(cbrt_mod_p2(Residue::p2(3, 11)).unwrap().value, 9);
        assert_eq!(cbrt_mod_p2(Residue::p2(1, 17)).unwrap().value, 1);
        assert!(matches!(cbrt_mod_p2(Residue::p2(3, 7)), Err(Error::CubeRootNotUnique(7))));
    }

    #[test]
    fn roots_round_trip_random() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        let primes: Vec<u64> = (5..50).filter(|&p| is_prime(p)).collect();
        let mut sq = 0;
        let mut cb = 0;
        while sq < 200 || cb < 200 {
            let p = primes[rng.gen_range(0..primes.len())];
            let a = Residue::p2(rng.gen_range(1..(p * p) as i64), p);
            if !a.is_unit() {
                continue;
            }
            if let Some((r, s)) = sqrt_mod_p2(a) {
                assert_eq!(r.mul(&r), a);
                assert_eq!(s.mul(&s), a);
                sq += 1;
            }
            if p % 3 == 2 {
                let c = cbrt_mod_p2(a).unwrap();
                assert_eq!(c.mul(&c).mul(&c), a);
                cb += 1;
            }
        }
    }

    #[test]
    fn sixth_roots() {
        let r7 = sixth_roots_mod_p2(7).unwrap();
        assert_eq!(r7.len(), 6);
        assert!(r7.contains(&Residue::p2(18, 7)));
        assert_eq!(Residue::p2(18, 7).order(), Some(3));
        let r13 = sixth_roots_mod_p2(13).unwrap();
        assert_eq!(Residue::p2(22, 13).order(), Some(3));
        assert_eq!(Residue::p2(22, 13).pow(2).unwrap().value, 146);
        assert!(r13.contains(&Residue::p2(146, 13)));
        for p in [5u64, 11, 17] {
            let r = sixth_roots_mod_p2(p).unwrap();
            assert_eq!(r.iter().map(|x| x.value).collect::<Vec<_>>(), vec![1, p * p - 1]);
        }
    }

    #[test]
    fn cancelling_division() {
        // 35 / 21 mod 49 is 5/3 mod 7.
        let q = Residue::p2(35, 7).div(&Residue::p2(21, 7)).unwrap();
        assert_eq!(q.e, 1);
        assert_eq!(q, Residue::new(5 * 5, 7, 1));
        assert_eq!(q.pow(3).unwrap().value, 1);
        assert!(Residue::p2(3, 7).div(&Residue::p2(7, 7)).is_none());
    }
}
