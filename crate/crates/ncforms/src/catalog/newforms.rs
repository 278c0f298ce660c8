//! Congruence newforms attached to the groups, with coefficients in
//! biquadratic fields `Q(sqrt d1, sqrt d2)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::rational::{int, ExactRational};
use crate::series::{eisenstein_e6, EtaQuotient, PuiseuxSeries};
use crate::trace::field::{is_prime, legendre};

/// `c0 + c1 sqrt(d1) + c2 sqrt(d2) + c3 sqrt(d1 d2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiquadraticNumber {
    pub config: (i64, i64),
    pub c: [ExactRational; 4],
}

impl BiquadraticNumber {
    pub fn new(config: (i64, i64), c: [ExactRational; 4]) -> Self {
        assert!(config.0 != config.1 && config.0 != 1 && config.1 != 1, "bad biquadratic configuration");
        BiquadraticNumber { config, c }
    }

    pub fn from_ints(config: (i64, i64), c: [i64; 4]) -> Self {
        Self::new(config, c.map(int))
    }

    pub fn rational(config: (i64, i64), x: ExactRational) -> Self {
        Self::new(config, [x, int(0), int(0), int(0)])
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.config, o.config, "mixed biquadratic fields");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let c = std::array::from_fn(|i| &self.c[i] + &o.c[i]);
        BiquadraticNumber { config: self.config, c }
    }

    pub fn neg(&self) -> Self {
        BiquadraticNumber { config: self.config, c: self.c.clone().map(|x| -x) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &ExactRational) -> Self {
        BiquadraticNumber { config: self.config, c: self.c.clone().map(|x| x * k) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let (d1, d2) = (int(self.config.0), int(self.config.1));
        let d12 = &d1 * &d2;
        let (a, b) = (&self.c, &o.c);
        // basis 1, s1, s2, s1 s2 with s1^2 = d1, s2^2 = d2
        let c0 = &a[0] * &b[0] + &d1 * &a[1] * &b[1] + &d2 * &a[2] * &b[2] + &d12 * &a[3] * &b[3];
        let c1 = &a[0] * &b[1] + &a[1] * &b[0] + &d2 * (&a[2] * &b[3] + &a[3] * &b[2]);
        let c2 = &a[0] * &b[2] + &a[2] * &b[0] + &d1 * (&a[1] * &b[3] + &a[3] * &b[1]);
        let c3 = &a[0] * &b[3] + &a[3] * &b[0] + &a[1] * &b[2] + &a[2] * &b[1];
        BiquadraticNumber { config: self.config, c: [c0, c1, c2, c3] }
    }

    /// Radicand of the basis element at position `i` (1 for the rational part).
    pub fn radicand(&self, i: usize) -> i64 {
        [1, self.config.0, self.config.1, self.config.0 * self.config.1][i]
    }
}

impl fmt::Display for BiquadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            let body = match (i, mag == int(1)) {
                (0, _) => mag.to_string(),
                (_, true) => format!("sqrt({})", self.radicand(i)),
                (_, false) => format!("{mag}*sqrt({})", self.radicand(i)),
            };
            parts.push((sign, body));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (k, (sign, body)) in parts.iter().enumerate() {
            match (k, *sign) {
                (0, "-") => write!(f, "-{body}")?,
                (0, _) => write!(f, "{body}")?,
                (_, s) => write!(f, " {s} {body}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for BiquadraticNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Debug for BiquadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NewformTag {
    L48,
    L432,
    L243,
    L486,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CoefficientSource {
    EtaQuotientExpression,
    EtaEisensteinCombination,
    StoredTable,
}

#[derive(Clone, Debug, Serialize)]
pub struct NewformRecord {
    pub tag: NewformTag,
    pub level: u64,
    /// Discriminants whose Kronecker symbols multiply to the character, as
    /// given in the group tables.
    pub character: Vec<i64>,
    /// The character in the Hecke relation of the stored or computed
    /// coefficients. Differs from `character` only for L48.
    pub nebentypus: Vec<i64>,
    pub config: (i64, i64),
    pub source: CoefficientSource,
}

impl NewformTag {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "L48" | "48" => Ok(NewformTag::L48),
            "L432" | "432" => Ok(NewformTag::L432),
            "L243" | "243" => Ok(NewformTag::L243),
            "L486" | "486" => Ok(NewformTag::L486),
            _ => Err(Error::Unknown(format!("newform {s:?}"))),
        }
    }

    pub fn record(self) -> NewformRecord {
        use CoefficientSource::*;
        let (level, character, nebentypus, config, source) = match self {
            NewformTag::L48 => (48, vec![-3, -4], vec![-3], (2, -3), EtaQuotientExpression),
            NewformTag::L432 => (432, vec![-4], vec![-4], (2, -3), EtaEisensteinCombination),
            NewformTag::L243 => (243, vec![-3], vec![-3], (-1, 3), StoredTable),
            NewformTag::L486 => (486, vec![-3], vec![-3], (-2, 3), StoredTable),
        };
        NewformRecord { tag: self, level, character, nebentypus, config, source }
    }

    pub fn config(self) -> (i64, i64) {
        self.record().config
    }
}

/// Product of Kronecker symbols `(d/p)` at an odd prime `p`.
pub fn character_value(discriminants: &[i64], p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::BadPrime(p, "character needs an odd prime".into()));
    }
    let mut v = 1;
    for &d in discriminants {
        let r = d.rem_euclid(p as i64) as u64;
        if r == 0 {
            return Err(Error::BadPrime(p, format!("p divides the discriminant {d}")));
        }
        v *= legendre(r, p);
    }
    Ok(v)
}

/// Stored `A_p`: `(p, [c0, c1, c2, c3])`.
fn stored(tag: NewformTag) -> &'static [(u64, [i64; 4])] {
    match tag {
        NewformTag::L243 => &[
            (5, [0, 6, 0, 0]),
            (7, [11, 0, 0, 0]),
            (11, [0, 12, 0, 0]),
            (13, [5, 0, 0, 0]),
            (17, [0, -18, 0, 0]),
            (19, [-19, 0, 0, 0]),
            (23, [0, -30, 0, 0]),
            (29, [0, 48, 0, 0]),
            (31, [-13, 0, 0, 0]),
            (37, [17, 0, 0, 0]),
        ],
        NewformTag::L486 => &[
            (5, [0, 3, 0, 0]),
            (7, [-7, 0, 0, 0]),
            (11, [0, -3, 0, 0]),
            (13, [5, 0, 0, 0]),
            (17, [0, -18, 0, 0]),
            (19, [17, 0, 0, 0]),
            (23, [0, -6, 0, 0]),
            (29, [0, -39, 0, 0]),
            (31, [59, 0, 0, 0]),
            (37, [-19, 0, 0, 0]),
            (41, [0, 39, 0, 0]),
            (43, [47, 0, 0, 0]),
            (47, [0, -57, 0, 0]),
            (53, [0, 27, 0, 0]),
            (59, [0, -15, 0, 0]),
            (61, [-4, 0, 0, 0]),
            (67, [-46, 0, 0, 0]),
        ],
        _ => &[],
    }
}

fn eta(pairs: &[(u32, i64)]) -> EtaQuotient {
    EtaQuotient::new(pairs)
}

/// `a_1 .. a_{n_max}` of the L48 form, as integers.
fn l48_series(n_max: usize) -> Result<PuiseuxSeries> {
    let f = eta(&[(4, 9), (12, 9), (2, -3), (6, -3), (8, -3), (24, -3)]);
    f.expansion(n_max as i64)
}

/// The four components `f_i(12 z)` of the L432 form, each integral in q.
fn l432_components(n_max: usize) -> Result<[PuiseuxSeries; 4]> {
    let order = (n_max / 12 + 2) as i64;
    let e6 = eisenstein_e6(order);
    let f1 = eta(&[(2, 3), (3, 1), (6, -1), (1, -1)]).expansion(order)?.mul(&e6);
    let f5 = eta(&[(1, 1), (2, 3), (3, 3), (6, -1)]).expansion(order)?;
    let f7 = eta(&[(6, 3), (1, 1), (2, -1), (3, -1)]).expansion(order)?.mul(&e6);
    let f11 = eta(&[(3, 1), (1, 3), (6, 3), (2, -1)]).expansion(order)?;
    Ok([f1, f5, f7, f11].map(|f| f.substitute_power(12)))
}

fn cached<T: Clone>(cell: &OnceLock<std::sync::Mutex<Option<(usize, T)>>>, n: usize, make: impl FnOnce(usize) -> Result<T>) -> Result<T> {
    let m = cell.get_or_init(Default::default);
    let mut guard = m.lock().expect("cache lock");
    if let Some((have, v)) = guard.as_ref() {
        if *have >= n {
            return Ok(v.clone());
        }
    }
    let v = make(n)?;
    *guard = Some((n, v.clone()));
    Ok(v)
}

/// Coefficients `a_1 .. a_{n_max}` (index 0 unused) for the computed forms.
pub fn newform_series(tag: NewformTag, n_max: usize) -> Result<Vec<BiquadraticNumber>> {
    static L48: OnceLock<std::sync::Mutex<Option<(usize, Vec<BiquadraticNumber>)>>> = OnceLock::new();
    static L432: OnceLock<std::sync::Mutex<Option<(usize, Vec<BiquadraticNumber>)>>> = OnceLock::new();
    let cfg = tag.config();
    let v = match tag {
        NewformTag::L48 => cached(&L48, n_max, |n| {
            let s = l48_series(n + 1)?;
            (0..=n as i64).map(|k| Ok(BiquadraticNumber::rational(cfg, s.coefficient(k)?))).collect()
        })?,
        NewformTag::L432 => cached(&L432, n_max, |n| {
            let comps = l432_components(n)?;
            (0..=n as i64)
                .map(|k| {
                    let c: Vec<ExactRational> = comps.iter().map(|f| f.coefficient(k)).collect::<Result<_>>()?;
                    // 1, 6 sqrt 2, sqrt(-3), 6 sqrt(-6)
                    Ok(BiquadraticNumber::new(cfg, [c[0].clone(), &c[1] * int(6), c[2].clone(), &c[3] * int(6)]))
                })
                .collect()
        })?,
        _ => return Err(Error::CoefficientUnknown(format!("{tag:?} has only stored prime coefficients"))),
    };
    Ok(v[..=n_max].to_vec())
}

/// `A_p` for primes `5 <= p <= bound` (primes dividing the level skipped).
pub fn newform_coefficients(tag: NewformTag, bound: u64) -> Result<BTreeMap<u64, BiquadraticNumber>> {
    let level = tag.record().level;
    let primes: Vec<u64> = (5..=bound).filter(|&p| is_prime(p) && !level.is_multiple_of(p)).collect();
    match tag {
        NewformTag::L48 | NewformTag::L432 => {
            let s = newform_series(tag, bound as usize)?;
            Ok(primes.into_iter().map(|p| (p, s[p as usize].clone())).collect())
        }
        _ => primes.into_iter().map(|p| Ok((p, coefficient(tag, p)?))).collect(),
    }
}

/// A single `A_p`.
pub fn coefficient(tag: NewformTag, p: u64) -> Result<BiquadraticNumber> {
    match tag {
        NewformTag::L48 | NewformTag::L432 => Ok(newform_series(tag, p as usize)?[p as usize].clone()),
        _ => stored(tag)
            .iter()
            .find(|(q, _)| *q == p)
            .map(|(_, c)| BiquadraticNumber::from_ints(tag.config(), *c))
            .ok_or_else(|| Error::CoefficientUnknown(format!("{tag:?} at p = {p} is outside the stored table"))),
    }
}

/// Primes with a stored coefficient (empty for computed forms).
pub fn stored_primes(tag: NewformTag) -> Vec<u64> {
    stored(tag).iter().map(|(p, _)| *p).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeReport {
    pub tag: NewformTag,
    pub checked: usize,
    /// `(p, n)` pairs where the relation fails.
    pub violations: Vec<(u64, u64)>,
}

impl HeckeReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `a_{np} - a_p a_n + chi(p) p^2 a_{n/p} = 0` for good `p <= prime_bound`,
/// `n <= n_bound`, with the form's nebentypus.
pub fn hecke_check(tag: NewformTag, prime_bound: u64, n_bound: u64) -> Result<HeckeReport> {
    hecke_check_with(tag, &tag.record().nebentypus, prime_bound, n_bound)
}

/// As [`hecke_check`] with an explicit character.
pub fn hecke_check_with(tag: NewformTag, character: &[i64], prime_bound: u64, n_bound: u64) -> Result<HeckeReport> {
    let rec = tag.record();
    let a = newform_series(tag, (prime_bound * n_bound) as usize)?;
    let zero = BiquadraticNumber::rational(rec.config, int(0));
    let mut checked = 0;
    let mut violations = Vec::new();
    for p in (2..=prime_bound).filter(|&p| is_prime(p) && !rec.level.is_multiple_of(p)) {
        let chi = character_value(character, p)?;
        for n in 1..=n_bound {
            let tail = if n % p == 0 { a[(n / p) as usize].clone() } else { zero.clone() };
            let lhs = a[(n * p) as usize]
                .sub(&a[p as usize].mul(&a[n as usize]))
                .add(&tail.scale(&int(chi as i64 * (p * p) as i64)));
            checked += 1;
            if !lhs.is_zero() {
                violations.push((p, n));
            }
        }
    }
    Ok(HeckeReport { tag, checked, violations })
}
