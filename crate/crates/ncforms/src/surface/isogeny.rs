//! Modular-polynomial relations between specialized families.
//!
//! A relation `Phi_d(j(E(s1(t))), j(E'(s2(t)))) = 0` is checked either by
//! sampling t in F_p, or exactly: clearing denominators turns the left side
//! into a polynomial in t of degree at most `deg_X Phi * deg j1 +
//! deg_Y Phi * deg j2`, so vanishing at one more rational point than that
//! proves the identity.

use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::modpoly::ModularPolynomial;
use super::ratfunc::RationalFunctionQ;
use super::weierstrass::BaseFamily;
use crate::error::{Error, Result};
use crate::series::rational::int;
use crate::trace::SurfaceModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Symbolic,
    Sampled,
}

impl CheckMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "symbolic" => Ok(CheckMode::Symbolic),
            "sampled" | "sampledModP" => Ok(CheckMode::Sampled),
            _ => Err(Error::Unknown(format!("mode {s:?} (expected symbolic or sampled)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IsogenyRelation {
    pub label: String,
    pub d: u32,
    pub left: (BaseFamily, RationalFunctionQ),
    pub right: (BaseFamily, RationalFunctionQ),
    pub kernel: Option<String>,
    pub field: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsogenyCheck {
    pub label: String,
    pub d: u32,
    pub mode: CheckMode,
    /// Points tested (rational points, or F_p points summed over primes).
    pub points: usize,
    pub holds: bool,
}

fn t(s: &str) -> RationalFunctionQ {
    RationalFunctionQ::parse(s, 't').expect("relation data parses")
}

/// `j(E(sub(t)))`.
pub fn specialized_j(fam: BaseFamily, sub: &RationalFunctionQ) -> RationalFunctionQ {
    let j = fam.short().j_invariant().expect("base families are nonsingular");
    j.compose(sub)
}

/// Evaluate reduced coefficient vectors at `x` mod p; `None` at a pole.
pub fn eval_mod(num: &[u64], den: &[u64], x: u64, p: u64) -> Option<u64> {
    let h = |c: &[u64]| c.iter().rev().fold(0u64, |acc, &k| (acc * x + k) % p);
    let d = h(den);
    (d != 0).then(|| h(num) * crate::trace::field::inv_mod(d, p) % p)
}

impl IsogenyRelation {
    pub fn new(label: &str, d: u32, left: (BaseFamily, &str), right: (BaseFamily, &str)) -> Self {
        IsogenyRelation {
            label: label.into(),
            d,
            left: (left.0, t(left.1)),
            right: (right.0, t(right.1)),
            kernel: None,
            field: None,
        }
    }

    pub fn with_kernel(mut self, kernel: &str, field: &str) -> Self {
        self.kernel = Some(kernel.into());
        self.field = Some(field.into());
        self
    }

    pub fn j_left(&self) -> RationalFunctionQ {
        specialized_j(self.left.0, &self.left.1)
    }

    pub fn j_right(&self) -> RationalFunctionQ {
        specialized_j(self.right.0, &self.right.1)
    }

    /// Both sides pulled back along `t = r^3`, as surfaces over the cover.
    pub fn cover_models(&self) -> (SurfaceModel, SurfaceModel) {
        let cube = RationalFunctionQ::var().pow(3).expect("nonnegative power");
        let pull = |(fam, sub): &(BaseFamily, RationalFunctionQ)| SurfaceModel::new(*fam, sub.compose(&cube));
        (pull(&self.left), pull(&self.right))
    }

    pub fn check(&self, mode: CheckMode, primes: &[u64], samples: usize, dir: Option<&Path>) -> Result<IsogenyCheck> {
        let phi = ModularPolynomial::load(self.d, dir)?;
        match mode {
            CheckMode::Sampled => self.check_sampled(&phi, primes, samples),
            CheckMode::Symbolic => self.check_symbolic(&phi),
        }
    }

    /// `Phi_d(j1(tau), j2(tau)) = 0 mod p` at up to `samples` non-pole tau per prime.
    pub fn check_sampled(&self, phi: &ModularPolynomial, primes: &[u64], samples: usize) -> Result<IsogenyCheck> {
        if primes.is_empty() || samples == 0 {
            return Err(Error::InsufficientData);
        }
        let (j1, j2) = (self.j_left(), self.j_right());
        let mut points = 0;
        let mut holds = true;
        for &p in primes {
            let bad = || Error::BadPrime(p, "p divides a coefficient denominator".into());
            let (n1, d1) = j1.reduce_mod(p).ok_or_else(bad)?;
            let (n2, d2) = j2.reduce_mod(p).ok_or_else(bad)?;
            let mut taken = 0;
            for tau in 0..p {
                if taken == samples {
                    break;
                }
                let (Some(x), Some(y)) = (eval_mod(&n1, &d1, tau, p), eval_mod(&n2, &d2, tau, p)) else {
                    continue;
                };
                taken += 1;
                holds &= phi.eval_mod(x, y, p) == 0;
            }
            points += taken;
        }
        Ok(IsogenyCheck { label: self.label.clone(), d: self.d, mode: CheckMode::Sampled, points, holds })
    }

    /// Exact proof by evaluation at enough integer points.
    pub fn check_symbolic(&self, phi: &ModularPolynomial) -> Result<IsogenyCheck> {
        let (j1, j2) = (self.j_left(), self.j_right());
        let needed = (phi.degree_x() as i64 * j1.degree() + phi.degree_y() as i64 * j2.degree() + 1) as usize;
        let mut points = 0;
        let mut holds = true;
        let mut k: i64 = 0;
        while points < needed {
            k += 1;
            // alternate 1, -1, 2, -2, ...
            let x = int(if k % 2 == 1 { k / 2 + 1 } else { -(k / 2) });
            let (Some(a), Some(b)) = (j1.eval(&x), j2.eval(&x)) else { continue };
            points += 1;
            if !phi.eval_q(&a, &b).is_zero() {
                holds = false;
                break;
            }
        }
        Ok(IsogenyCheck { label: self.label.clone(), d: self.d, mode: CheckMode::Symbolic, points, holds })
    }
}

/// Self-relation `Phi_d(j(E(t)), j(E(i(t))))` induced by a base involution.
pub fn involution_relation(label: &str, fam: BaseFamily, i: &RationalFunctionQ, d: u32) -> IsogenyRelation {
    IsogenyRelation {
        label: label.into(),
        d,
        left: (fam, RationalFunctionQ::var()),
        right: (fam, i.clone()),
        kernel: None,
        field: None,
    }
}

/// Relations between the specialized families of different groups.
pub fn inter_family_relations() -> Vec<IsogenyRelation> {
    use BaseFamily::*;
    vec![
        IsogenyRelation::new("24.6.1^6~8^3.2^3.3^2", 8, (E8, "(t-1)/(t+1)"), (E8, "1/t")),
        IsogenyRelation::new("8^3.6.3.1^3~24.3.2^3.1^3", 8, (E8, "4t-1"), (E8, "2/(1/t-2)")),
        IsogenyRelation::new("18.6.3^3.1^3~9.6^3.3.2^3", 6, (E6, "(1-3t)/(9-3t)"), (E6, "t/3")),
        IsogenyRelation::new("9.6^4.1^3~18.3^4.2^3", 3, (E6, "1-8/(3t)"), (E6, "1/(9-24/t)")),
    ]
}

/// `iota(r)^3 = m(i(t))` under `r^3 = m(t)`, as an identity in Q(t).
pub fn involution_identity(m: &RationalFunctionQ, i: &RationalFunctionQ, iota: &RationalFunctionQ) -> bool {
    let cube = iota.pow(3).expect("nonnegative power");
    let Some(g) = cube.in_power(3) else { return false };
    g.compose(m) == m.compose(i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_d1() {
        let r = involution_relation("24.6.1^6", BaseFamily::E8, &t("-t"), 1);
        let phi = ModularPolynomial::phi1();
        assert!(r.check_symbolic(&phi).unwrap().holds);
        assert!(r.check_sampled(&phi, &[101], 20).unwrap().holds);
    }

    #[test]
    fn level6_involution_has_degree_3() {
        let r = involution_relation("18.6.3^3.1^3", BaseFamily::E6, &t("1/(9t)"), 3);
        let phi = ModularPolynomial::builtin(3).unwrap();
        let c = r.check_symbolic(&phi).unwrap();
        assert!(c.holds);
        assert!(c.points > 1);
        let phi2 = ModularPolynomial::builtin(2).unwrap();
        assert!(!r.check_sampled(&phi2, &[101], 30).unwrap().holds);
    }

    #[test]
    fn printed_phi3_relation_fails_and_corrected_holds() {
        let phi = ModularPolynomial::builtin(3).unwrap();
        let printed = IsogenyRelation::new("printed", 3, (BaseFamily::E6, "1-8/(3t)"), (BaseFamily::E6, "1/(9+24/t)"));
        assert!(!printed.check_symbolic(&phi).unwrap().holds);
        let fixed = &inter_family_relations()[3];
        assert!(fixed.check_symbolic(&phi).unwrap().holds);
    }

    #[test]
    fn covering_map_involution_identity() {
        assert!(involution_identity(&t("t"), &t("-t"), &t("-t")));
        let m = t("(t+1)/4");
        let iota = t("1/(2t)");
        assert!(involution_identity(&m, &t("(1-t)/(1+t)"), &iota));
        assert!(!involution_identity(&m, &t("1/t"), &iota));
    }

    #[test]
    fn mode_parse() {
        assert_eq!(CheckMode::parse("sampled").unwrap(), CheckMode::Sampled);
        assert!(CheckMode::parse("fast").is_err());
    }
}
