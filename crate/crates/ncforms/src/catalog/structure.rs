//! Dimension formula, cusp regularity and the cusp-width noncongruence test.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::rational::{int, rat, ExactRational};

/// Width multisets of the index-36 torsion-free genus-0 congruence subgroups.
pub const CONGRUENCE_WIDTH_MULTISETS: [[u32; 8]; 6] = [
    [6, 6, 6, 6, 3, 3, 3, 3],
    [9, 9, 9, 3, 3, 1, 1, 1],
    [9, 9, 3, 3, 3, 3, 3, 3],
    [10, 10, 5, 5, 2, 2, 1, 1],
    [18, 9, 2, 2, 2, 1, 1, 1],
    [27, 3, 1, 1, 1, 1, 1, 1],
];

/// `dim S_k` for odd `k >= 3`: `(k-1)(g-1) + (k-2)u/2 + (k-1)u'/2 + sum k(e-1)/(2e)`.
pub fn dim_cusp_forms(k: i64, g: i64, u: i64, u_irr: i64, elliptic_orders: &[i64]) -> Result<i64> {
    if k < 3 || k % 2 == 0 {
        return Err(Error::Invalid(format!("weight {k} must be odd and at least 3")));
    }
    let mut d: ExactRational = int((k - 1) * (g - 1)) + rat((k - 2) * u, 2) + rat((k - 1) * u_irr, 2);
    for &e in elliptic_orders {
        if e < 2 {
            return Err(Error::Invalid(format!("elliptic order {e}")));
        }
        d += rat(k * (e - 1), 2 * e);
    }
    if !d.is_integer() {
        return Err(Error::Invalid(format!("dimension {d} is not an integer")));
    }
    Ok(d.to_integer().try_into().expect("small dimension"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CuspKind {
    Regular,
    Irregular,
    NotParabolic,
}

/// Trace rule: a parabolic matrix other than `+-I` is regular iff its trace is `+2`.
pub fn classify_matrix(m: [i64; 4]) -> Result<CuspKind> {
    if m[0] * m[3] - m[1] * m[2] != 1 {
        return Err(Error::Invalid(format!("determinant of {m:?} is not 1")));
    }
    let is_pm_identity = m[1] == 0 && m[2] == 0 && m[0] == m[3] && m[0].abs() == 1;
    Ok(match m[0] + m[3] {
        2 if !is_pm_identity => CuspKind::Regular,
        -2 if !is_pm_identity => CuspKind::Irregular,
        _ => CuspKind::NotParabolic,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regularity {
    pub kinds: Vec<CuspKind>,
    /// Regular and irregular cusps among the listed generators, with the
    /// cusp fixed by their product (the eighth cusp) taken as regular when
    /// every listed one is.
    pub u: i64,
    pub u_irr: i64,
}

pub fn cusp_regularity(gens: &[[i64; 4]], cusp_count: usize) -> Result<Regularity> {
    let kinds = gens.iter().map(|&m| classify_matrix(m)).collect::<Result<Vec<_>>>()?;
    let irr = kinds.iter().filter(|k| **k == CuspKind::Irregular).count() as i64;
    Ok(Regularity { kinds, u: cusp_count as i64 - irr, u_irr: irr })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CongruenceVerdict {
    Noncongruence,
    Inconclusive,
}

pub fn noncongruence_test(widths: &[u32]) -> Result<CongruenceVerdict> {
    let total: u32 = widths.iter().sum();
    if total != 36 {
        return Err(Error::OutOfScope(format!("cusp widths sum to {total}, not 36")));
    }
    // Torsion-free genus 0 at index 36 forces 2 + 36/6 = 8 cusps.
    if widths.len() != 8 {
        return Err(Error::OutOfScope(format!("{} cusps; torsion-free genus-0 index-36 groups have 8", widths.len())));
    }
    let mut w = widths.to_vec();
    w.sort_unstable_by(|a, b| b.cmp(a));
    let known = CONGRUENCE_WIDTH_MULTISETS.iter().any(|m| m.as_slice() == w.as_slice());
    Ok(if known { CongruenceVerdict::Inconclusive } else { CongruenceVerdict::Noncongruence })
}

/// Level of a congruence subgroup with these widths would be their lcm.
pub fn width_lcm(widths: &[u32]) -> u32 {
    widths.iter().fold(1, |a, &b| a.lcm(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::groups::all_groups;

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_cusp_forms(3, 0, 8, 0, &[]).unwrap(), 2);
        assert_eq!(dim_cusp_forms(3, 1, 0, 0, &[]).unwrap(), 0);
        assert_eq!(dim_cusp_forms(3, 0, 6, 1, &[]).unwrap(), 2);
        assert!(dim_cusp_forms(3, 0, 1, 0, &[]).is_err());
        assert!(dim_cusp_forms(4, 0, 8, 0, &[]).is_err());
    }

    #[test]
    fn matrix_kinds() {
        assert_eq!(classify_matrix([1, 1, 0, 1]).unwrap(), CuspKind::Regular);
        assert_eq!(classify_matrix([-1, -1, 0, -1]).unwrap(), CuspKind::Irregular);
        assert_eq!(classify_matrix([0, -1, 1, 0]).unwrap(), CuspKind::NotParabolic);
        assert_eq!(classify_matrix([1, 0, 0, 1]).unwrap(), CuspKind::NotParabolic);
        assert!(classify_matrix([2, 0, 0, 1]).is_err());
    }

    // u and u' are derived from the generator traces, not read off a table.
    #[test]
    fn derived_regularity_gives_dimension_two() {
        for g in all_groups() {
            let r = cusp_regularity(&g.generators, g.cusp_count()).unwrap();
            assert_eq!((r.u, r.u_irr), (8, 0), "{}", g.name);
            assert_eq!(dim_cusp_forms(3, 0, r.u, r.u_irr, &[]).unwrap(), 2);
        }
    }

    #[test]
    fn noncongruence_verdicts() {
        use CongruenceVerdict::*;
        assert_eq!(noncongruence_test(&[24, 6, 1, 1, 1, 1, 1, 1]).unwrap(), Noncongruence);
        assert_eq!(noncongruence_test(&[27, 3, 1, 1, 1, 1, 1, 1]).unwrap(), Inconclusive);
        assert_eq!(noncongruence_test(&[1, 1, 1, 2, 2, 2, 9, 18]).unwrap(), Inconclusive);
        assert!(noncongruence_test(&[24, 6]).is_err());
        assert!(noncongruence_test(&[6, 6, 6, 6, 6, 6]).is_err());
        for g in all_groups() {
            assert_eq!(noncongruence_test(&g.cusp_widths).unwrap(), Noncongruence, "{}", g.name);
        }
    }

    #[test]
    fn lcm_of_widths() {
        assert_eq!(width_lcm(&[24, 6, 1]), 24);
        assert_eq!(width_lcm(&[9, 6, 6, 6, 3, 2, 2, 2]), 18);
    }
}
