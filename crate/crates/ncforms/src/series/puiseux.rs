use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{format_rational, int, rational_nth_root, ExactRational};
use crate::error::{Error, Result};

/// A truncated series `sum c_k q^{k/mu}`, with terms known for exponents
/// `k < prec`. Coefficients are stored densely from `val` to `prec - 1`.
///
/// After every operation the leading stored coefficient is nonzero (or the
/// series is empty, i.e. zero to the known precision) and `mu` is minimal.
#[derive(Clone, PartialEq, Eq)]
pub struct PuiseuxSeries {
    mu: u32,
    val: i64,
    coeffs: Vec<ExactRational>,
    prec: i64,
}

impl PuiseuxSeries {
    /// Build from dense coefficients starting at exponent `val/mu`, known
    /// below `prec/mu`. Coefficients at or past `prec` are discarded.
    pub fn new(mu: u32, val: i64, mut coeffs: Vec<ExactRational>, prec: i64) -> Self {
        assert!(mu > 0, "ramification must be positive");
        let keep = (prec - val).max(0) as usize;
        coeffs.truncate(keep);
        coeffs.resize(keep, ExactRational::zero());
        let mut s = PuiseuxSeries { mu, val: val.min(prec), coeffs, prec };
        s.normalize();
        s
    }

    /// Series in integral powers of q from integer coefficients `c[0] + c[1] q + ...`.
    pub fn from_ints(coeffs: &[i64], prec: i64) -> Self {
        Self::new(1, 0, coeffs.iter().map(|&c| int(c)).collect(), prec)
    }

    pub fn zero(prec: i64) -> Self {
        Self::new(1, prec, Vec::new(), prec)
    }

    pub fn one(prec: i64) -> Self {
        Self::new(1, 0, vec![ExactRational::one()], prec)
    }

    /// `c q^{e/mu}` known to all orders below `prec/mu`.
    pub fn monomial(c: ExactRational, e: i64, mu: u32, prec: i64) -> Self {
        Self::new(mu, e, vec![c], prec)
    }

    pub fn mu(&self) -> u32 {
        self.mu
    }

    /// Exponent numerator of the leading term (equals `prec` for the zero series).
    pub fn valuation(&self) -> i64 {
        self.val
    }

    /// Terms with exponent numerator below this are known.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coefficient(&self) -> Option<&ExactRational> {
        self.coeffs.first()
    }

    /// Nonzero terms as (exponent numerator, coefficient), ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &ExactRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.val + i as i64, c))
    }

    /// Coefficient of `q^{n/mu}` in this series' own units.
    pub fn coefficient(&self, n: i64) -> Result<ExactRational> {
        if n >= self.prec {
            return Err(Error::InsufficientPrecision { index: n, mu: self.mu, prec: self.prec });
        }
        if n < self.val {
            return Ok(ExactRational::zero());
        }
        Ok(self.coeffs[(n - self.val) as usize].clone())
    }

    /// Coefficient of `q^{num/den}` for an arbitrary rational exponent.
    pub fn coefficient_at(&self, num: i64, den: u32) -> Result<ExactRational> {
        // exponent num/den in units of 1/mu is num*mu/den
        let scaled = num * self.mu as i64;
        if scaled % den as i64 != 0 {
            let limit = self.prec as i128 * den as i128;
            if (num as i128) * (self.mu as i128) >= limit {
                return Err(Error::InsufficientPrecision { index: num, mu: den, prec: self.prec });
            }
            return Ok(ExactRational::zero());
        }
        self.coefficient(scaled / den as i64)
    }

    /// Re-express with ramification `mu * k` (exponents spread by `k`).
    fn lifted(&self, k: u32) -> PuiseuxSeries {
        if k == 1 {
            return self.clone();
        }
        let k64 = k as i64;
        let mut coeffs = vec![ExactRational::zero(); (self.prec - self.val) as usize * k as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        let val = self.val * k64;
        let prec = self.prec * k64;
        coeffs.truncate((prec - val) as usize);
        PuiseuxSeries { mu: self.mu * k, val, coeffs, prec }
    }

    fn common(a: &PuiseuxSeries, b: &PuiseuxSeries) -> (PuiseuxSeries, PuiseuxSeries) {
        let l = a.mu.lcm(&b.mu);
        (a.lifted(l / a.mu), b.lifted(l / b.mu))
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.val = self.prec;
            }
            Some(i) => {
                self.coeffs.drain(..i);
                self.val += i as i64;
            }
        }
        let mut g = self.mu as i64;
        for (e, _) in self.terms() {
            g = g.gcd(&e);
            if g == 1 {
                return;
            }
        }
        if self.coeffs.is_empty() {
            // zero series: report it in integral powers of q
            g = self.mu as i64;
        }
        if g <= 1 {
            return;
        }
        let new_val = Integer::div_floor(&self.val, &g);
        let new_prec = Integer::div_floor(&self.prec, &g);
        let mut coeffs = Vec::with_capacity((new_prec - new_val).max(0) as usize);
        let mut e = new_val * g;
        while e < new_prec * g {
            let idx = e - self.val;
            coeffs.push(if idx >= 0 && (idx as usize) < self.coeffs.len() {
                self.coeffs[idx as usize].clone()
            } else {
                ExactRational::zero()
            });
            e += g;
        }
        self.mu = (self.mu as i64 / g) as u32;
        self.val = new_val;
        self.prec = new_prec;
        self.coeffs = coeffs;
        if let Some(i) = self.coeffs.iter().position(|c| !c.is_zero()) {
            self.coeffs.drain(..i);
            self.val += i as i64;
        } else {
            self.coeffs.clear();
            self.val = self.prec;
        }
    }

    pub fn add(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        let (a, b) = Self::common(self, other);
        let prec = a.prec.min(b.prec);
        let val = a.val.min(b.val).min(prec);
        let mut coeffs = vec![ExactRational::zero(); (prec - val) as usize];
        for s in [&a, &b] {
            for (i, c) in s.coeffs.iter().enumerate() {
                let e = s.val + i as i64;
                if e >= prec {
                    break;
                }
                coeffs[(e - val) as usize] += c;
            }
        }
        Self::new(a.mu, val, coeffs, prec)
    }

    pub fn neg(&self) -> PuiseuxSeries {
        PuiseuxSeries {
            mu: self.mu,
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &ExactRational) -> PuiseuxSeries {
        Self::new(self.mu, self.val, self.coeffs.iter().map(|x| x * c).collect(), self.prec)
    }

    pub fn mul(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        let (a, b) = Self::common(self, other);
        // a = q^va (known to relative length prec_a - va), likewise b
        let prec = (a.val + b.prec).min(b.val + a.prec);
        let val = (a.val + b.val).min(prec);
        let len = (prec - val).max(0) as usize;
        let mut coeffs = vec![ExactRational::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() || i >= len {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    coeffs[i + j] += x * y;
                }
            }
        }
        Self::new(a.mu, val, coeffs, prec)
    }

    /// Multiply by `q^{e/mu}`.
    pub fn shift(&self, e: i64, mu: u32) -> PuiseuxSeries {
        let l = self.mu.lcm(&mu);
        let a = self.lifted(l / self.mu);
        let e = e * (l / mu) as i64;
        Self::new(a.mu, a.val + e, a.coeffs, a.prec + e)
    }

    /// Drop everything at or above `q^{prec/mu}` (in this series' units).
    pub fn truncate(&self, prec: i64) -> PuiseuxSeries {
        Self::new(self.mu, self.val, self.coeffs.clone(), prec.min(self.prec))
    }

    /// Unit part `u` with `self = c q^{v/mu} u`, u = 1 + ..., as coefficients in q^{1/mu}.
    fn unit_part(&self) -> Result<(ExactRational, Vec<ExactRational>)> {
        let c = self.leading_coefficient().ok_or(Error::NotInvertible)?.clone();
        let inv = c.recip();
        Ok((c, self.coeffs.iter().map(|x| x * &inv).collect()))
    }

    /// `u^alpha` for `u = 1 + u_1 x + ...` via the standard power recurrence
    /// `m g_m = sum_{k=1}^m ((alpha+1)k - m) u_k g_{m-k}`.
    fn unit_power_coeffs(u: &[ExactRational], alpha: &ExactRational) -> Vec<ExactRational> {
        let n = u.len();
        let mut g = Vec::with_capacity(n);
        if n == 0 {
            return g;
        }
        g.push(ExactRational::one());
        let a1 = alpha + ExactRational::one();
        for m in 1..n {
            let mut acc = ExactRational::zero();
            let mr = int(m as i64);
            for k in 1..=m {
                if u[k].is_zero() || g[m - k].is_zero() {
                    continue;
                }
                let w = &a1 * int(k as i64) - &mr;
                acc += w * &u[k] * &g[m - k];
            }
            g.push(acc / mr);
        }
        g
    }

    pub fn invert(&self) -> Result<PuiseuxSeries> {
        let (c, u) = self.unit_part()?;
        let g = Self::unit_power_coeffs(&u, &int(-1));
        let rel = (self.prec - self.val) as usize;
        let inv_c = c.recip();
        let coeffs: Vec<_> = g.into_iter().take(rel).map(|x| x * &inv_c).collect();
        Ok(Self::new(self.mu, -self.val, coeffs, -self.val + rel as i64))
    }

    pub fn div(&self, other: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        Ok(self.mul(&other.invert()?))
    }

    /// Integer power; negative exponents need an invertible series.
    pub fn pow(&self, e: i64) -> Result<PuiseuxSeries> {
        if e == 0 {
            self.unit_part()?;
            return Ok(Self::new(self.mu, 0, vec![ExactRational::one()], self.prec - self.val));
        }
        self.pow_rational(&int(e))
    }

    /// `self^(a/b)`; the leading coefficient must have a rational b-th root
    /// (the real positive one is taken for even b).
    pub fn pow_rational(&self, alpha: &ExactRational) -> Result<PuiseuxSeries> {
        let (c, u) = self.unit_part()?;
        let b = u32::try_from(alpha.denom().clone())
            .map_err(|_| Error::Invalid("exponent denominator too large".into()))?;
        let a = i64::try_from(alpha.numer().clone())
            .map_err(|_| Error::Invalid("exponent numerator too large".into()))?;
        let root = rational_nth_root(&c, b).ok_or_else(|| Error::NoRationalRoot(format_rational(&c), b))?;
        let lead = super::rational::rational_pow(&root, a);
        let g = Self::unit_power_coeffs(&u, alpha);
        // exponents: (val/mu)*alpha + k/mu  ->  in units 1/(mu*b): val*a + k*b
        let mu = self.mu * b;
        let val = self.val * a;
        let rel = (self.prec - self.val) as usize;
        let mut coeffs = vec![ExactRational::zero(); rel * b as usize];
        for (k, x) in g.into_iter().enumerate().take(rel) {
            coeffs[k * b as usize] = x * &lead;
        }
        let prec = val + (rel as i64) * b as i64;
        Ok(Self::new(mu, val, coeffs, prec))
    }

    pub fn nth_root(&self, n: u32) -> Result<PuiseuxSeries> {
        self.pow_rational(&ExactRational::new(1.into(), n.into()))
    }

    /// Substitute `q -> q^k` (integer k >= 1).
    pub fn substitute_power(&self, k: u32) -> PuiseuxSeries {
        let k64 = k as i64;
        let mut coeffs = vec![ExactRational::zero(); self.coeffs.len() * k as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        Self::new(self.mu, self.val * k64, coeffs, self.prec * k64)
    }
}

impl fmt::Debug for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})q^({e}/{})", self.mu)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^({}/{}))", self.prec, self.mu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::rat;

    fn q(prec: i64) -> PuiseuxSeries {
        PuiseuxSeries::monomial(int(1), 1, 1, prec)
    }

    #[test]
    fn difference_of_squares() {
        let a = PuiseuxSeries::from_ints(&[1, -1], 10);
        let b = PuiseuxSeries::from_ints(&[1, 1], 10);
        assert_eq!(a.mul(&b), PuiseuxSeries::from_ints(&[1, 0, -1], 10));
    }

    #[test]
    fn additive_identity() {
        let h = PuiseuxSeries::from_ints(&[0, 1, -4, 7], 12);
        assert_eq!(h.add(&PuiseuxSeries::zero(20)), h);
    }

    #[test]
    fn fractional_exponents_collapse() {
        let a = PuiseuxSeries::monomial(int(1), 1, 3, 30);
        let b = PuiseuxSeries::monomial(int(1), 2, 3, 30);
        let p = a.mul(&b);
        assert_eq!(p.mu(), 1);
        assert_eq!(p.valuation(), 1);
        assert_eq!(p.coefficient(1).unwrap(), int(1));
    }

    #[test]
    fn geometric_series() {
        let inv = PuiseuxSeries::from_ints(&[1, -1], 8).invert().unwrap();
        assert_eq!(inv, PuiseuxSeries::from_ints(&[1; 8], 8));
        assert!(PuiseuxSeries::zero(5).invert().is_err());
    }

    #[test]
    fn exact_cube_root() {
        let s = PuiseuxSeries::from_ints(&[1, 3, 3, 1], 12);
        assert_eq!(s.nth_root(3).unwrap(), PuiseuxSeries::from_ints(&[1, 1], 12));
    }

    #[test]
    fn root_of_monomial_prefactor() {
        let s = PuiseuxSeries::monomial(rat(8, 27), 2, 1, 10);
        let r = s.nth_root(3).unwrap();
        assert_eq!(r.mu(), 3);
        assert_eq!(r.valuation(), 2);
        assert_eq!(r.coefficient(2).unwrap(), rat(2, 3));
        assert!(PuiseuxSeries::monomial(int(2), 0, 1, 5).nth_root(3).is_err());
    }

    #[test]
    fn coefficient_beyond_precision_is_an_error() {
        let s = PuiseuxSeries::from_ints(&[1, 2], 2);
        assert!(s.coefficient(2).is_err());
        assert_eq!(PuiseuxSeries::zero(10).coefficient(4).unwrap(), int(0));
    }

    #[test]
    fn product_precision_is_tight() {
        // (q + O(q^5)) * (1 + O(q^3)) = q + O(q^4)
        let a = q(5);
        let b = PuiseuxSeries::one(3);
        assert_eq!(a.mul(&b).prec(), 4);
    }

    #[test]
    fn mu_reduction_floors_precision() {
        let s = PuiseuxSeries::new(3, 0, vec![int(1), int(0), int(0), int(2)], 4);
        assert_eq!(s.mu(), 1);
        assert_eq!(s.prec(), 1);
    }

    #[test]
    fn substitution() {
        let s = PuiseuxSeries::from_ints(&[1, -1], 5).substitute_power(2);
        assert_eq!(s, PuiseuxSeries::from_ints(&[1, 0, -1], 10));
    }
}
