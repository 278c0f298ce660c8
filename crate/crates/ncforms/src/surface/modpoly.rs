//! Classical modular polynomials Phi_d(X, Y).
//!
//! Phi_1 is built in, Phi_2 and Phi_3 are compiled in from the shipped data
//! files, and higher d are read at runtime from a directory holding
//! `phi_<d>.txt`.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::ratfunc::RationalFunctionQ;
use crate::error::{Error, Result};
use crate::series::rational::ExactRational;

const PHI2: &str = include_str!("../../data/modpoly/phi_2.txt");
const PHI3: &str = include_str!("../../data/modpoly/phi_3.txt");

/// Environment variable naming the directory of `phi_<d>.txt` files.
pub const MODPOLY_DIR_ENV: &str = "NCFORMS_MODPOLY_DIR";

pub fn default_modpoly_dir() -> PathBuf {
    if let Some(d) = std::env::var_os(MODPOLY_DIR_ENV) {
        return PathBuf::from(d);
    }
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join("modpoly")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularPolynomial {
    d: u32,
    /// All terms `c X^i Y^j`, symmetric pairs expanded.
    terms: Vec<(u32, u32, BigInt)>,
}

impl ModularPolynomial {
    pub fn phi1() -> Self {
        ModularPolynomial { d: 1, terms: vec![(1, 0, BigInt::one()), (0, 1, -BigInt::one())] }
    }

    /// Phi_1, Phi_2, Phi_3 without touching the filesystem.
    pub fn builtin(d: u32) -> Option<Self> {
        match d {
            1 => Some(Self::phi1()),
            2 => Some(Self::parse(PHI2).expect("shipped Phi_2 parses")),
            3 => Some(Self::parse(PHI3).expect("shipped Phi_3 parses")),
            _ => None,
        }
    }

    /// Built-in data for small d, otherwise `dir/phi_<d>.txt`.
    pub fn load(d: u32, dir: Option<&Path>) -> Result<Self> {
        if let Some(m) = Self::builtin(d) {
            return Ok(m);
        }
        let dir = dir.map(Path::to_path_buf).unwrap_or_else(default_modpoly_dir);
        let path = dir.join(format!("phi_{d}.txt"));
        let text = std::fs::read_to_string(&path).map_err(|_| Error::PolynomialDataRequired(d))?;
        let m = Self::parse(&text)?;
        if m.d != d {
            return Err(Error::Parse(format!("{} holds Phi_{}, expected Phi_{d}", path.display(), m.d)));
        }
        Ok(m)
    }

    /// First line `d`, optional `sym` line, then `i j c` per term.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let d: u32 = lines
            .next()
            .ok_or_else(|| Error::Parse("empty modular polynomial file".into()))?
            .parse()
            .map_err(|_| Error::Parse("first line must be d".into()))?;
        let mut sym = false;
        let mut terms = std::collections::BTreeMap::<(u32, u32), BigInt>::new();
        for line in lines {
            if line == "sym" {
                sym = true;
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Parse(format!("bad term line {line:?}"));
            if f.len() != 3 {
                return Err(bad());
            }
            let i: u32 = f[0].parse().map_err(|_| bad())?;
            let j: u32 = f[1].parse().map_err(|_| bad())?;
            let c: BigInt = f[2].parse().map_err(|_| bad())?;
            *terms.entry((i, j)).or_default() += &c;
            if sym && i != j {
                *terms.entry((j, i)).or_default() += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        let terms = terms.into_iter().map(|((i, j), c)| (i, j, c)).collect();
        Ok(ModularPolynomial { d, terms })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> &[(u32, u32, BigInt)] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.iter().map(|t| t.0).max().unwrap_or(0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.iter().map(|t| t.1).max().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        let set: std::collections::HashSet<_> = self.terms.iter().cloned().collect();
        self.terms.iter().all(|(i, j, c)| set.contains(&(*j, *i, c.clone())))
    }

    pub fn eval_q(&self, x: &ExactRational, y: &ExactRational) -> ExactRational {
        // Homogenize to integers: x = a/b, y = c/e.
        let (a, b) = (x.numer(), x.denom());
        let (c, e) = (y.numer(), y.denom());
        let dx = self.degree_x();
        let dy = self.degree_y();
        let s = self.eval_homogeneous(a, b, c, e);
        ExactRational::new(s, num_traits::pow(b.clone(), dx as usize) * num_traits::pow(e.clone(), dy as usize))
    }

    /// `sum c a^i b^(dx-i) c^j e^(dy-j)`.
    pub fn eval_homogeneous(&self, a: &BigInt, b: &BigInt, c: &BigInt, e: &BigInt) -> BigInt {
        let powers = |u: &BigInt, n: u32| {
            let mut v = vec![BigInt::one()];
            for _ in 0..n {
                let next = v.last().unwrap() * u;
                v.push(next);
            }
            v
        };
        let (dx, dy) = (self.degree_x(), self.degree_y());
        let (pa, pb, pc, pe) = (powers(a, dx), powers(b, dx), powers(c, dy), powers(e, dy));
        self.terms
            .iter()
            .map(|(i, j, k)| k * &pa[*i as usize] * &pb[(dx - i) as usize] * &pc[*j as usize] * &pe[(dy - j) as usize])
            .sum()
    }

    pub fn eval_mod(&self, x: u64, y: u64, p: u64) -> u64 {
        let pb = BigInt::from(p);
        let (dx, dy) = (self.degree_x() as usize, self.degree_y() as usize);
        let mut px = vec![1u64; dx + 1];
        for i in 1..=dx {
            px[i] = px[i - 1] * x % p;
        }
        let mut py = vec![1u64; dy + 1];
        for j in 1..=dy {
            py[j] = py[j - 1] * y % p;
        }
        let mut acc: u64 = 0;
        for (i, j, c) in &self.terms {
            let c = u64::try_from(c.mod_floor(&pb)).expect("reduced below p");
            acc = (acc + c * px[*i as usize] % p * py[*j as usize]) % p;
        }
        acc
    }

    /// Exact value in Q(t). Expensive for large d; intended for small cases.
    pub fn eval_ratfunc(&self, x: &RationalFunctionQ, y: &RationalFunctionQ) -> RationalFunctionQ {
        let mut acc = RationalFunctionQ::int(0);
        for (i, j, c) in &self.terms {
            let term = x
                .pow(*i as i64)
                .expect("nonnegative")
                .mul(&y.pow(*j as i64).expect("nonnegative"))
                .scale(&ExactRational::from_integer(c.clone()));
            acc = acc.add(&term);
        }
        acc
    }
}
