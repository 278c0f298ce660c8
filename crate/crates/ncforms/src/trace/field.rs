//! Arithmetic in F_p and F_{p^2}.
//!
//! Both fields precompute a quadratic-character table for F_p; the character
//! on F_{p^2} is the F_p character of the norm.

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

pub fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut r: u128 = 1 % m128;
    let mut b128 = b as u128 % m128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m128;
        }
        b128 = b128 * b128 % m128;
        e >>= 1;
    }
    r as u64
}

/// Inverse of `a` modulo prime `p`; `a` must be nonzero mod p.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Legendre symbol by Euler's criterion.
pub fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `x mod p` for a signed integer.
pub fn reduce_i64(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

/// A finite field of odd characteristic.
pub trait FiniteField: Sync + Send {
    type Elem: Copy + Eq + Hash + Debug + Send + Sync;

    fn p(&self) -> u64;
    fn q(&self) -> u64;
    fn from_base(&self, a: u64) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;
    fn chi(&self, a: Self::Elem) -> i8;
    fn elements(&self) -> Vec<Self::Elem>;

    fn zero(&self) -> Self::Elem {
        self.from_base(0)
    }
    fn one(&self) -> Self::Elem {
        self.from_base(1)
    }
    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }
    fn from_i64(&self, x: i64) -> Self::Elem {
        self.from_base(reduce_i64(x, self.p()))
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p <= 3 || !is_prime(p) {
        return Err(Error::BadPrime(p, "need a prime p > 3".into()));
    }
    if p > 1 << 20 {
        return Err(Error::BadPrime(p, "prime too large for character tables".into()));
    }
    Ok(())
}

fn char_table(p: u64) -> Vec<i8> {
    let mut t = vec![-1i8; p as usize];
    t[0] = 0;
    for x in 1..p {
        t[(x * x % p) as usize] = 1;
    }
    t
}

#[derive(Clone, Debug)]
pub struct PrimeField {
    p: u64,
    chi: Vec<i8>,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(PrimeField { p, chi: char_table(p) })
    }
}

impl FiniteField for PrimeField {
    type Elem = u64;

    fn p(&self) -> u64 {
        self.p
    }
    fn q(&self) -> u64 {
        self.p
    }
    fn from_base(&self, a: u64) -> u64 {
        a % self.p
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| inv_mod(a, self.p))
    }
    fn chi(&self, a: u64) -> i8 {
        self.chi[a as usize]
    }
    fn elements(&self) -> Vec<u64> {
        (0..self.p).collect()
    }
}

/// `a + b sqrt(nu)` with `nu` the least positive nonresidue unless chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp2 {
    pub a: u64,
    pub b: u64,
}

#[derive(Clone, Debug)]
pub struct QuadExtField {
    p: u64,
    nu: u64,
    chi: Vec<i8>,
}

impl QuadExtField {
    pub fn new(p: u64) -> Result<Self> {
        check_prime(p)?;
        let nu = (2..p).find(|&a| legendre(a, p) == -1).expect("odd prime has a nonresidue");
        Ok(QuadExtField { p, nu, chi: char_table(p) })
    }

    /// Same field presented with another nonresidue.
    pub fn with_nonresidue(p: u64, nu: u64) -> Result<Self> {
        check_prime(p)?;
        if legendre(nu, p) != -1 {
            return Err(Error::Invalid(format!("{nu} is not a nonresidue mod {p}")));
        }
        Ok(QuadExtField { p, nu: nu % p, chi: char_table(p) })
    }

    pub fn nonresidue(&self) -> u64 {
        self.nu
    }

    pub fn norm(&self, x: Fp2) -> u64 {
        let p = self.p;
        (x.a * x.a % p + p - self.nu * (x.b * x.b % p) % p) % p
    }
}

impl FiniteField for QuadExtField {
    type Elem = Fp2;

    fn p(&self) -> u64 {
        self.p
    }
    fn q(&self) -> u64 {
        self.p * self.p
    }
    fn from_base(&self, a: u64) -> Fp2 {
        Fp2 { a: a % self.p, b: 0 }
    }
    fn add(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 { a: (x.a + y.a) % self.p, b: (x.b + y.b) % self.p }
    }
    fn sub(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 { a: (x.a + self.p - y.a) % self.p, b: (x.b + self.p - y.b) % self.p }
    }
    fn mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let p = self.p;
        Fp2 { a: (x.a * y.a + self.nu * (x.b * y.b % p)) % p, b: (x.a * y.b + x.b * y.a) % p }
    }
    fn inv(&self, x: Fp2) -> Option<Fp2> {
        let n = self.norm(x);
        if n == 0 {
            return None;
        }
        let ni = inv_mod(n, self.p);
        Some(Fp2 { a: x.a * ni % self.p, b: (self.p - x.b) % self.p * ni % self.p })
    }
    fn chi(&self, x: Fp2) -> i8 {
        if x.a == 0 && x.b == 0 {
            return 0;
        }
        self.chi[self.norm(x) as usize]
    }
    fn elements(&self) -> Vec<Fp2> {
        let p = self.p;
        (0..p).flat_map(|a| (0..p).map(move |b| Fp2 { a, b })).collect()
    }
}
