//! Elements of Q(t): reduced quotients of polynomials with a monic denominator.

use std::fmt;

use num_traits::{One, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::series::rational::{int, parse_rational, rational_pow, ExactRational};
use crate::series::PuiseuxSeries;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionQ {
    num: Poly,
    den: Poly,
}

impl RationalFunctionQ {
    /// `num / den`, reduced. Panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::constant(ExactRational::zero());
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        let l = den.leading().recip();
        RationalFunctionQ { num: num.scale(&l), den: den.scale(&l) }
    }

    pub fn poly(p: Poly) -> Self {
        RationalFunctionQ { num: p, den: Poly::one() }
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::poly(Poly::constant(c))
    }

    pub fn int(c: i64) -> Self {
        Self::constant(int(c))
    }

    /// The variable.
    pub fn var() -> Self {
        Self::poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree() <= 0 && self.den.degree() == 0
    }

    /// max(deg num, deg den).
    pub fn degree(&self) -> i64 {
        self.num.degree().max(self.den.degree())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunctionQ { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn scale(&self, k: &ExactRational) -> Self {
        Self::new(self.num.scale(k), self.den.clone())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Invalid("reciprocal of zero rational function".into()));
        }
        Ok(Self::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(RationalFunctionQ { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// `self(inner)`: substitute `inner` for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        let horner = |p: &Poly| {
            let mut acc = Self::int(0);
            for c in p.coeffs().iter().rev() {
                acc = acc.mul(inner).add(&Self::constant(c.clone()));
            }
            acc
        };
        let n = horner(&self.num);
        let d = horner(&self.den);
        n.div(&d).expect("composition hits a pole identically")
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, x: &ExactRational) -> Option<ExactRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Expand as a series, substituting a series of nonnegative valuation
    /// for the variable.
    pub fn eval_series(&self, s: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        if s.valuation() < 0 {
            return Err(Error::Invalid("series substitution needs nonnegative valuation".into()));
        }
        let horner = |p: &Poly| {
            let k = |c: &ExactRational| PuiseuxSeries::monomial(c.clone(), 0, s.mu(), s.prec());
            let mut it = p.coeffs().iter().rev();
            let mut acc = it.next().map(k).unwrap_or_else(|| PuiseuxSeries::zero(s.prec()));
            for c in it {
                acc = acc.mul(s);
                if !c.is_zero() {
                    acc = acc.add(&k(c));
                }
            }
            acc
        };
        horner(&self.num).div(&horner(&self.den))
    }

    /// If every exponent is a multiple of `k`, the function of `x^k` it equals.
    pub fn in_power(&self, k: usize) -> Option<Self> {
        let squeeze = |p: &Poly| -> Option<Poly> {
            let mut out = Vec::new();
            for (i, c) in p.coeffs().iter().enumerate() {
                if i % k == 0 {
                    out.push(c.clone());
                } else if !c.is_zero() {
                    return None;
                }
            }
            Some(Poly::new(out))
        };
        Some(Self::new(squeeze(&self.num)?, squeeze(&self.den)?))
    }

    /// Numerator and denominator reduced mod p, if p divides no denominator
    /// and the denominator does not vanish identically mod p.
    pub fn reduce_mod(&self, p: u64) -> Option<(Vec<u64>, Vec<u64>)> {
        let n = self.num.reduce_mod(p)?;
        let d = self.den.reduce_mod(p)?;
        if d.iter().all(|&x| x == 0) {
            return None;
        }
        Some((n, d))
    }

    /// Parse an expression in one variable: integers, `+ - * / ^`, parentheses,
    /// and implicit products such as `4r^3` or `2(t+1)`.
    pub fn parse(src: &str, var: char) -> Result<Self> {
        let mut p = Parser { s: src.chars().filter(|c| !c.is_whitespace()).collect(), i: 0, var };
        let e = p.expr()?;
        if p.i != p.s.len() {
            return Err(Error::Parse(format!("trailing input in {src:?} at {}", p.i)));
        }
        Ok(e)
    }

    pub fn fmt_var(&self, var: char) -> String {
        if self.den.degree() == 0 {
            return self.num.fmt_var(var);
        }
        format!("({})/({})", self.num.fmt_var(var), self.den.fmt_var(var))
    }
}

impl fmt::Debug for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var('t'))
    }
}

struct Parser {
    s: Vec<char>,
    i: usize,
    var: char,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.s.get(self.i).copied()
    }

    fn err(&self, what: &str) -> Error {
        let src: String = self.s.iter().collect();
        Error::Parse(format!("{what} at position {} of {src:?}", self.i))
    }

    fn expr(&mut self) -> Result<RationalFunctionQ> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.i += 1;
                    acc = acc.add(&self.term()?);
                }
                '-' => {
                    self.i += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunctionQ> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.i += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some('/') => {
                    self.i += 1;
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| self.err("division by zero"))?;
                }
                Some(c) if c == '(' || c == self.var || c.is_ascii_digit() => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunctionQ> {
        match self.peek() {
            Some('-') => {
                self.i += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.i += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunctionQ> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.i += 1;
            let neg = if self.peek() == Some('-') {
                self.i += 1;
                true
            } else {
                false
            };
            let start = self.i;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.i += 1;
            }
            let e: i64 = self.s[start..self.i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| self.err("expected exponent"))?;
            return base.pow(if neg { -e } else { e }).map_err(|_| self.err("zero to a negative power"));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunctionQ> {
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c == self.var => {
                self.i += 1;
                Ok(RationalFunctionQ::var())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.i;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.i += 1;
                }
                let lit: String = self.s[start..self.i].iter().collect();
                Ok(RationalFunctionQ::constant(parse_rational(&lit)?))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

/// `c^e` for a rational constant; convenience for catalog data.
pub fn const_pow(c: i64, e: i64) -> ExactRational {
    rational_pow(&int(c), e)
}

impl Default for RationalFunctionQ {
    fn default() -> Self {
        Self::constant(ExactRational::one())
    }
}
