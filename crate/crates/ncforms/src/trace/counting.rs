//! Points on short Weierstrass curves and singular-fibre types.

use serde::{Deserialize, Serialize};

use super::field::FiniteField;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum FiberType {
    Smooth,
    SplitMult,
    NonsplitMult,
    Additive,
}

pub fn quadratic_character<F: FiniteField>(f: &F, u: F::Elem) -> i8 {
    f.chi(u)
}

/// `4A^3 + 27B^2`.
pub fn discriminant<F: FiniteField>(f: &F, a: F::Elem, b: F::Elem) -> F::Elem {
    let a3 = f.mul(a, f.mul(a, a));
    f.add(f.mul(f.from_base(4), a3), f.mul(f.from_base(27), f.mul(b, b)))
}

/// `sum_x chi(x^3 + A x + B)`, so that `#E = q + 1 + S`.
pub fn character_sum<F: FiniteField>(f: &F, a: F::Elem, b: F::Elem) -> i64 {
    f.elements()
        .into_iter()
        .map(|x| {
            let v = f.add(f.mul(x, f.add(f.mul(x, x), a)), b);
            f.chi(v) as i64
        })
        .sum()
}

pub fn count_points_short<F: FiniteField>(f: &F, a: F::Elem, b: F::Elem) -> Result<u64> {
    if f.is_zero(discriminant(f, a, b)) {
        return Err(Error::Invalid("singular curve: classify the fibre instead".into()));
    }
    Ok((f.q() as i64 + 1 + character_sum(f, a, b)) as u64)
}

/// Type of the singular cubic `y^2 = x^3 + A x + B` by the sign of `chi(-2AB)`.
pub fn classify_singular_fiber<F: FiniteField>(f: &F, a: F::Elem, b: F::Elem) -> Result<FiberType> {
    if !f.is_zero(discriminant(f, a, b)) {
        return Err(Error::Invalid("curve is nonsingular".into()));
    }
    let m = f.mul(f.from_i64(-2), f.mul(a, b));
    Ok(match f.chi(m) {
        0 => FiberType::Additive,
        1 => FiberType::SplitMult,
        _ => FiberType::NonsplitMult,
    })
}

/// Local Frobenius trace on the fibre `y^2 = x^3 + A x + B`.
pub fn local_value<F: FiniteField>(f: &F, a: F::Elem, b: F::Elem) -> (FiberType, i64) {
    if f.is_zero(discriminant(f, a, b)) {
        let ty = classify_singular_fiber(f, a, b).expect("discriminant vanishes");
        let v = match ty {
            FiberType::SplitMult => 1,
            FiberType::NonsplitMult => -1,
            _ => 0,
        };
        return (ty, v);
    }
    let v = -character_sum(f, a, b);
    debug_assert!((v * v) as u64 <= 4 * f.q(), "Hasse bound");
    (FiberType::Smooth, v)
}
