//! Dense univariate polynomials over Q.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::series::rational::{int, ExactRational};

/// Coefficients ascending; no trailing zeros (the zero polynomial is empty).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<ExactRational>,
}

impl Poly {
    pub fn new(mut c: Vec<ExactRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(x: ExactRational) -> Self {
        Self::new(vec![x])
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::new(vec![ExactRational::zero(), ExactRational::one()])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| int(x)).collect())
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; -1 for zero.
    pub fn degree(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn leading(&self) -> ExactRational {
        self.c.last().cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let z = ExactRational::zero();
        Poly::new((0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &ExactRational) -> Poly {
        Poly::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![ExactRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.c.clone();
        let dl = d.leading().recip();
        let dd = d.c.len();
        if r.len() < dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![ExactRational::zero(); r.len() - dd + 1];
        for k in (0..q.len()).rev() {
            let coef = &r[k + dd - 1] * &dl;
            if !coef.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= &coef * b;
                }
            }
            q[k] = coef;
        }
        r.truncate(dd - 1);
        (Poly::new(q), Poly::new(r))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.primitive(), o.primitive());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// Scaled to integer coefficients with content 1 and positive leading term.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut den = BigInt::one();
        for x in &self.c {
            den = den.lcm(x.denom());
        }
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(&(x.numer() * (&den / x.denom())));
        }
        let mut k = ExactRational::new(den, g);
        if self.leading().is_negative() {
            k = -k;
        }
        self.scale(&k)
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        let mut acc = ExactRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Content-free integer form and the rational factor: `self = k * prim`.
    pub fn integer_coeffs(&self) -> (ExactRational, Vec<BigInt>) {
        let prim = self.primitive();
        let k = if self.is_zero() { ExactRational::zero() } else { self.leading() / prim.leading() };
        (k, prim.c.iter().map(|x| x.numer().clone()).collect())
    }

    /// Coefficients reduced mod p, or `None` if p divides a denominator.
    pub fn reduce_mod(&self, p: u64) -> Option<Vec<u64>> {
        let pb = BigInt::from(p);
        self.c
            .iter()
            .map(|x| {
                let d = x.denom().mod_floor(&pb);
                if d.is_zero() {
                    return None;
                }
                let n = x.numer().mod_floor(&pb);
                let d = u64::try_from(d).ok()?;
                let n = u64::try_from(n).ok()?;
                Some(n * crate::trace::field::inv_mod(d, p) % p)
            })
            .collect()
    }

    pub fn fmt_var(&self, var: char) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let coef = if a.is_integer() { a.numer().to_string() } else { format!("({}/{})", a.numer(), a.denom()) };
            match i {
                0 => s.push_str(&coef),
                _ => {
                    if !a.is_one() {
                        s.push_str(&coef);
                        s.push('*');
                    }
                    s.push(var);
                    if i > 1 {
                        s.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        s
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var('t'))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reconstructs() {
        let a = Poly::from_ints(&[-1, 0, 0, 1]);
        let b = Poly::from_ints(&[-1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, Poly::from_ints(&[1, 1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_is_monic() {
        let a = Poly::from_ints(&[-2, 0, 2]);
        let b = Poly::from_ints(&[3, 3]);
        assert_eq!(a.gcd(&b), Poly::from_ints(&[1, 1]));
        assert_eq!(a.gcd(&Poly::from_ints(&[5])), Poly::one());
    }

    #[test]
    fn formatting() {
        assert_eq!(Poly::from_ints(&[-1, 0, 3]).fmt_var('t'), "3*t^2 - 1");
        assert_eq!(Poly::from_ints(&[0, -1]).fmt_var('r'), "-r");
    }
}
