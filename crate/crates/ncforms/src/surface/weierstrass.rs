//! Beauville's six elliptic families, short models and j-invariants.

use serde::{Deserialize, Serialize};

use super::ratfunc::RationalFunctionQ;
use crate::error::{Error, Result};
use crate::series::rational::{int, rat, rational_pow, ExactRational};

/// Levels of the Beauville families.
pub const BEAUVILLE_LEVELS: [u32; 6] = [3, 4, 5, 6, 8, 9];

/// The two base families the noncongruence surfaces are pulled back from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum BaseFamily {
    E8,
    E6,
}

impl BaseFamily {
    pub fn level(self) -> u32 {
        match self {
            BaseFamily::E8 => 8,
            BaseFamily::E6 => 6,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BaseFamily::E8 => "E8",
            BaseFamily::E6 => "E6",
        }
    }

    pub fn weierstrass(self) -> WeierstrassFamily {
        WeierstrassFamily::beauville(self.level()).expect("base level is a Beauville level")
    }

    /// Short model with the stored scale.
    pub fn short(self) -> ShortWeierstrass {
        let w = self.weierstrass();
        long_to_short(&w, &short_scale(self.level())).expect("nonzero scale")
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "E8" | "e8" => Ok(BaseFamily::E8),
            "E6" | "e6" => Ok(BaseFamily::E6),
            _ => Err(Error::Unknown(format!("family {s:?} (expected E8 or E6)"))),
        }
    }
}

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over Q(t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassFamily {
    pub label: String,
    pub a1: RationalFunctionQ,
    pub a2: RationalFunctionQ,
    pub a3: RationalFunctionQ,
    pub a4: RationalFunctionQ,
    pub a6: RationalFunctionQ,
}

impl WeierstrassFamily {
    pub fn from_strs(label: &str, a: [&str; 5]) -> Self {
        let f = |s: &str| RationalFunctionQ::parse(s, 't').expect("catalog Weierstrass data parses");
        WeierstrassFamily { label: label.into(), a1: f(a[0]), a2: f(a[1]), a3: f(a[2]), a4: f(a[3]), a6: f(a[4]) }
    }

    /// Beauville family of the given level, with the corrected level-3 `a6`.
    pub fn beauville(level: u32) -> Option<Self> {
        let a = match level {
            3 => ["0", "t^2", "0", "-72t", "-16(4t^3+27)"],
            4 => ["0", "4+4t^2", "0", "16t^2", "0"],
            5 => ["t+1", "t", "t", "0", "0"],
            6 => ["t+1", "t-t^2", "t-t^2", "0", "0"],
            8 => ["4", "t^2", "4t^2", "0", "0"],
            9 => ["0", "t^2", "0", "8t", "16"],
            _ => return None,
        };
        Some(Self::from_strs(&format!("E{level}"), a))
    }
}

/// Scale `u` taking each family to its displayed short model.
pub fn short_scale(level: u32) -> ExactRational {
    match level {
        8 => int(2),
        6 => rat(1, 2),
        _ => int(1),
    }
}

/// `j` of the Beauville families as printed, times the constant that
/// reconciles it with the Weierstrass data (only level 4 needs one: 256).
pub fn printed_j(level: u32) -> Option<(RationalFunctionQ, ExactRational)> {
    let s = match level {
        3 => "t^3(t^3+216)^3/(t^3-27)^3",
        4 => "(t^4-t^2+1)^3/(t^4(t-1)^2(t+1)^2)",
        5 => "-(t^4+12t^3+14t^2-12t+1)^3/(t^5(t^2+11t-1))",
        6 => "(3t-1)^3(3t^3-3t^2+9t-1)^3/((t-1)^3 t^6 (9t-1))",
        8 => "-16(t^4-16t^2+16)^3/(t^8(t+1)(t-1))",
        9 => "t^3(t^3-24)^3/(t^3-27)",
        _ => return None,
    };
    let factor = if level == 4 { int(256) } else { int(1) };
    Some((RationalFunctionQ::parse(s, 't').expect("printed j parses"), factor))
}

/// `y^2 = x^3 + A x + B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortWeierstrass {
    pub a: RationalFunctionQ,
    pub b: RationalFunctionQ,
    pub scale: ExactRational,
}

pub fn long_to_short(w: &WeierstrassFamily, u: &ExactRational) -> Result<ShortWeierstrass> {
    if num_traits::Zero::is_zero(u) {
        return Err(Error::Invalid("scale u must be nonzero".into()));
    }
    let c = |k: i64| RationalFunctionQ::int(k);
    let b2 = w.a1.mul(&w.a1).add(&c(4).mul(&w.a2));
    let b4 = c(2).mul(&w.a4).add(&w.a1.mul(&w.a3));
    let b6 = w.a3.mul(&w.a3).add(&c(4).mul(&w.a6));
    let c4 = b2.mul(&b2).sub(&c(24).mul(&b4));
    let c6 = b2.mul(&b2).mul(&b2).neg().add(&c(36).mul(&b2).mul(&b4)).sub(&c(216).mul(&b6));
    let a = c4.scale(&(int(-27) * rational_pow(u, -4)));
    let b = c6.scale(&(int(-54) * rational_pow(u, -6)));
    Ok(ShortWeierstrass { a, b, scale: u.clone() })
}

impl ShortWeierstrass {
    /// `4A^3 + 27B^2`.
    pub fn discriminant_core(&self) -> RationalFunctionQ {
        let a3 = self.a.pow(3).expect("nonnegative power");
        RationalFunctionQ::int(4).mul(&a3).add(&RationalFunctionQ::int(27).mul(&self.b.mul(&self.b)))
    }

    pub fn j_invariant(&self) -> Result<RationalFunctionQ> {
        let d = self.discriminant_core();
        if d.is_zero() {
            return Err(Error::Invalid("discriminant vanishes identically".into()));
        }
        let n = RationalFunctionQ::int(1728 * 4).mul(&self.a.pow(3).expect("nonnegative power"));
        n.div(&d)
    }

    /// Replace the parameter by `sub`.
    pub fn substitute(&self, sub: &RationalFunctionQ) -> ShortWeierstrass {
        ShortWeierstrass { a: self.a.compose(sub), b: self.b.compose(sub), scale: self.scale.clone() }
    }
}
