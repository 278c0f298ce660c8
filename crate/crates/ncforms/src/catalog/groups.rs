//! The eight noncongruence subgroups of index 36 and the B-variant.

use std::sync::OnceLock;

use serde::Serialize;

use super::newforms::NewformTag;
use super::structure::{cusp_regularity, dim_cusp_forms};
use crate::error::{Error, Result};
use crate::series::EtaQuotient;
use crate::surface::isogeny::{involution_identity, involution_relation, IsogenyRelation};
use crate::surface::ratfunc::RationalFunctionQ;
use crate::surface::weierstrass::BaseFamily;
use crate::trace::frobenius::SurfaceModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parent {
    /// Gamma_0(8) intersect Gamma_1(4)
    #[serde(rename = "Gamma0(8)&Gamma1(4)")]
    G8,
    /// Gamma_1(6)
    #[serde(rename = "Gamma1(6)")]
    G6,
}

impl Parent {
    pub fn base_family(self) -> BaseFamily {
        match self {
            Parent::G8 => BaseFamily::E8,
            Parent::G6 => BaseFamily::E6,
        }
    }
}

/// A row of the trace table: the family pulled back along `t = sub(r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceRow {
    pub row: u32,
    pub base: BaseFamily,
    pub parameterization: &'static str,
}

impl SurfaceRow {
    pub fn model(&self) -> SurfaceModel {
        SurfaceModel::parse(self.base, self.parameterization).expect("catalog parameterization parses")
    }

    pub fn label(&self) -> String {
        format!("{}({})", self.base.label(), self.parameterization)
    }
}

/// Degree, kernel polynomial and field of definition of the isogeny lifting
/// the base involution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsogenyData {
    pub degree: u32,
    pub kernel: &'static str,
    pub field: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupRecord {
    /// Short identifier, e.g. `1a`.
    pub id: &'static str,
    /// Cusp-width name, e.g. `24.6.1^6`.
    pub name: &'static str,
    pub parent: Parent,
    pub cusp_widths: Vec<u32>,
    /// `(a, b, c, d)` for `[[a, b], [c, d]]`.
    pub generators: Vec<[i64; 4]>,
    /// `m(t)` in `t`.
    pub covering_map: Option<&'static str>,
    /// `m^{-1}(x)` in `x = r^3`.
    pub covering_inverse: Option<&'static str>,
    /// `i(t)`.
    pub involution_base: Option<&'static str>,
    /// `iota(r)`.
    pub involution_cover: Option<&'static str>,
    /// Cubes of the basis forms, as eta quotients.
    pub h1: EtaQuotient,
    pub h2: EtaQuotient,
    pub newform: NewformTag,
    pub surfaces: Vec<SurfaceRow>,
    pub isogeny: Option<IsogenyData>,
}

fn widths(name: &str) -> Vec<u32> {
    let mut out = Vec::new();
    for part in name.trim_end_matches('B').split('.') {
        let (w, k) = part.split_once('^').unwrap_or((part, "1"));
        let w: u32 = w.parse().expect("width");
        let k: usize = k.parse().expect("multiplicity");
        out.extend(std::iter::repeat_n(w, k));
    }
    out
}

fn eq(pairs: &[(u32, i64)]) -> EtaQuotient {
    EtaQuotient::new(pairs)
}

fn rows(list: &[(u32, BaseFamily, &'static str)]) -> Vec<SurfaceRow> {
    list.iter().map(|&(row, base, parameterization)| SurfaceRow { row, base, parameterization }).collect()
}

fn iso(degree: u32, kernel: &'static str, field: &'static str) -> Option<IsogenyData> {
    Some(IsogenyData { degree, kernel, field })
}

#[allow(clippy::too_many_arguments)]
fn rec(
    id: &'static str,
    name: &'static str,
    parent: Parent,
    generators: Vec<[i64; 4]>,
    cover: Option<(&'static str, &'static str, &'static str, &'static str)>,
    h: (&[(u32, i64)], &[(u32, i64)]),
    newform: NewformTag,
    surfaces: Vec<SurfaceRow>,
    isogeny: Option<IsogenyData>,
) -> GroupRecord {
    GroupRecord {
        id,
        name,
        parent,
        cusp_widths: widths(name),
        generators,
        covering_map: cover.map(|c| c.0),
        covering_inverse: cover.map(|c| c.1),
        involution_base: cover.map(|c| c.2),
        involution_cover: cover.map(|c| c.3),
        h1: eq(h.0),
        h2: eq(h.1),
        newform,
        surfaces,
        isogeny,
    }
}

/// Conjugate by the Fricke-type matrix of level 8: `(a, b, c, d) -> (d, -c/8, -8b, a)`.
fn w8_conjugate(g: [i64; 4]) -> [i64; 4] {
    assert_eq!(g[2] % 8, 0);
    [g[3], -g[2] / 8, -8 * g[1], g[0]]
}

fn build() -> Vec<GroupRecord> {
    use BaseFamily::{E6, E8};
    use NewformTag::*;
    use Parent::*;
    let gens_2b = vec![[1, 0, 24, 1], [21, -2, 200, -19], [9, -1, 64, -7], [5, -2, 8, -3], [1, 1, 0, 1], [-11, -2, 72, 13], [-7, -1, 64, 9]];
    vec![
        rec(
            "1a",
            "24.6.1^6",
            G8,
            vec![[1, 0, 24, 1], [9, -1, 64, -7], [5, -1, 16, -3], [1, 1, 0, 1], [-3, -1, 16, 5], [-7, -1, 64, 9], [-11, -1, 144, 13]],
            Some(("t", "x", "-t", "-r")),
            (&[(1, 4), (2, -6), (4, 20)], &[(1, -4), (2, 6), (4, 16)]),
            L48,
            rows(&[(1, E8, "r^3")]),
            iso(1, "1", "Q"),
        ),
        rec(
            "1b",
            "8^3.2^3.3^2",
            G8,
            vec![[1, 3, 0, 1], [-7, -8, 8, 9], [-3, -2, 8, 5], [1, 0, 8, 1], [5, -2, 8, -3], [9, -8, 8, -7], [13, -18, 8, -11]],
            Some(("(1+t)/(1-t)", "(x-1)/(x+1)", "1/t", "-r")),
            (&[(2, 20), (4, -6), (8, 4)], &[(2, 16), (4, 6), (8, -4)]),
            L48,
            rows(&[(2, E8, "(r^3-1)/(r^3+1)")]),
            iso(4, "(x+t^2)x", "Q"),
        ),
        rec(
            "2a",
            "8^3.6.3.1^3",
            G8,
            vec![[-11, 6, -24, 13], [41, -25, 64, -39], [49, -32, 72, -47], [1, 1, 0, 1], [1, 0, 8, 1], [25, -9, 64, -23], [81, -32, 200, -79]],
            Some(("(t+1)/4", "4x-1", "(1-t)/(1+t)", "1/(2r)")),
            (&[(1, 4), (2, 10), (4, -4), (8, 8)], &[(1, 8), (2, -4), (4, 10), (8, 4)]),
            L432,
            rows(&[(3, E8, "r^3-1"), (4, E8, "2r^3-1"), (5, E8, "4r^3-1")]),
            iso(8, "(x^2-4tx-4t^3)(x+t^2)x", "Q(sqrt(-1))"),
        ),
        rec(
            "2b",
            "24.3.2^3.1^3",
            G8,
            gens_2b.clone(),
            Some(("2(1+t)/t", "2/(x-2)", "(t+1)/(t-1)", "2/r")),
            (&[(1, -4), (2, 22), (4, -8), (8, 8)], &[(1, -8), (2, 20), (4, 2), (8, 4)]),
            L432,
            rows(&[(6, E8, "2/(r^3-2)")]),
            iso(8, "(x^2+4tx+4t^3)(x+t^2)x", "Q(sqrt(-1))"),
        ),
        rec(
            "B",
            "24.3.2^3.1^3B",
            G8,
            gens_2b.into_iter().map(w8_conjugate).collect(),
            None,
            (&[(1, 8), (2, -8), (4, 22), (8, -4)], &[(1, 4), (2, 2), (4, 20), (8, -8)]),
            L432,
            Vec::new(),
            None,
        ),
        rec(
            "3a",
            "18.6.3^3.1^3",
            G6,
            vec![[1, 0, 18, 1], [25, -3, 192, -23], [7, -1, 36, -5], [7, -3, 12, -5], [1, 1, 0, 1], [-11, -3, 48, 13], [-5, -1, 36, 7]],
            Some(("t/9", "9x", "1/(9t)", "1/(9r)")),
            (&[(1, 4), (2, 7), (3, -4), (6, 11)], &[(1, -4), (2, 11), (3, 4), (6, 7)]),
            L243,
            rows(&[(7, E6, "3r^3"), (8, E6, "9r^3")]),
            iso(3, "x-t^2+t", "Q(sqrt(-3))"),
        ),
        rec(
            "3b",
            "9.6^3.3.2^3",
            G6,
            vec![[1, 3, 0, 1], [-5, -6, 6, 7], [-11, -8, 18, 13], [1, 0, 6, 1], [7, -2, 18, -5], [7, -6, 6, -5], [25, -32, 18, -23]],
            Some(("(1-9t)/(3-3t)", "(1-3x)/(9-3x)", "1/(9t)", "1/r")),
            (&[(1, 7), (2, 4), (3, 11), (6, -4)], &[(1, 11), (2, -4), (3, 7), (6, 4)]),
            L243,
            rows(&[(9, E6, "(1-3r^3)/(9-3r^3)")]),
            iso(3, "x-t^2+t", "Q(sqrt(-3))"),
        ),
        rec(
            "4a",
            "9.6^4.1^3",
            G6,
            vec![[-17, 6, -54, 19], [127, -49, 324, -125], [61, -24, 150, -59], [1, 1, 0, 1], [1, 0, 6, 1], [91, -25, 324, -89], [85, -24, 294, -83]],
            Some(("8/(3-3t)", "1-8/(3x)", "(1-9t)/(9-9t)", "2/r")),
            (&[(1, 13), (2, -2), (3, -7), (6, 14)], &[(1, 14), (2, -7), (3, -2), (6, 13)]),
            L486,
            rows(&[(10, E6, "1-24/r^3"), (11, E6, "1-8/(3r^3)")]),
            iso(6, "(x-t^2+t)x(x+t)", "Q(sqrt(-3))"),
        ),
        rec(
            "4b",
            "18.3^4.2^3",
            G6,
            vec![[1, 3, 0, 1], [-11, -8, 18, 13], [-5, -3, 12, 7], [7, -2, 18, -5], [7, -3, 12, -5], [25, -32, 18, -23], [19, -27, 12, -17]],
            Some(("(1-9t)/(24t)", "1/(24x+9)", "(1-9t)/(9-9t)", "1/(2r)")),
            (&[(1, -2), (2, 13), (3, 14), (6, -7)], &[(1, -7), (2, 14), (3, 13), (6, -2)]),
            L486,
            rows(&[(12, E6, "1/(24r^3+9)")]),
            iso(6, "(x-t^2+t)x(x+t)", "Q(sqrt(-3))"),
        ),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub group: String,
    pub genus: i64,
    /// Regular cusps.
    pub u: i64,
    /// Irregular cusps.
    pub u_irr: i64,
    pub dim: i64,
}

pub fn all_groups() -> &'static [GroupRecord] {
    static GROUPS: OnceLock<Vec<GroupRecord>> = OnceLock::new();
    GROUPS.get_or_init(build)
}

/// The eight noncongruence groups (everything except the B-variant).
pub fn primary_groups() -> impl Iterator<Item = &'static GroupRecord> {
    all_groups().iter().filter(|g| g.id != "B")
}

fn normalize(s: &str) -> String {
    let s = s.trim();
    let s = s.strip_prefix("gamma_").or_else(|| s.strip_prefix("Gamma_")).unwrap_or(s);
    s.trim_start_matches('{').trim_end_matches('}').to_string()
}

/// Look up by id (`2a`), name (`8^3.6.3.1^3`) or `gamma_<name>`.
pub fn group(key: &str) -> Result<&'static GroupRecord> {
    let k = normalize(key);
    all_groups()
        .iter()
        .find(|g| g.id.eq_ignore_ascii_case(&k) || g.name == k)
        .ok_or_else(|| Error::Unknown(format!("group {key:?}")))
}

/// Every trace-table row, in table order.
pub fn trace_rows() -> Vec<(&'static GroupRecord, &'static SurfaceRow)> {
    let mut v: Vec<_> = all_groups().iter().flat_map(|g| g.surfaces.iter().map(move |s| (g, s))).collect();
    v.sort_by_key(|(_, s)| s.row);
    v
}

impl GroupRecord {
    pub fn display_name(&self) -> String {
        format!("gamma_{}", self.name)
    }

    pub fn index(&self) -> u32 {
        self.cusp_widths.iter().sum()
    }

    pub fn cusp_count(&self) -> usize {
        self.cusp_widths.len()
    }

    fn parse_t(s: Option<&str>) -> Option<RationalFunctionQ> {
        s.map(|s| RationalFunctionQ::parse(s, 't').expect("catalog data parses"))
    }

    pub fn m(&self) -> Option<RationalFunctionQ> {
        Self::parse_t(self.covering_map)
    }

    pub fn m_inverse(&self) -> Option<RationalFunctionQ> {
        self.covering_inverse.map(|s| RationalFunctionQ::parse(s, 'x').expect("catalog data parses"))
    }

    pub fn i(&self) -> Option<RationalFunctionQ> {
        Self::parse_t(self.involution_base)
    }

    pub fn iota(&self) -> Option<RationalFunctionQ> {
        self.involution_cover.map(|s| RationalFunctionQ::parse(s, 'r').expect("catalog data parses"))
    }

    pub fn involution_identity_check(&self) -> Result<bool> {
        match (self.m(), self.i(), self.iota()) {
            (Some(m), Some(i), Some(iota)) => Ok(involution_identity(&m, &i, &iota)),
            _ => Err(Error::OutOfScope(format!("{} has no covering data", self.name))),
        }
    }

    /// `Phi_d(j(E(t)), j(E(i(t)))) = 0` for the base involution.
    pub fn involution_relation(&self) -> Option<IsogenyRelation> {
        let i = self.i()?;
        let data = self.isogeny.as_ref()?;
        let mut r = involution_relation(self.name, self.parent.base_family(), &i, data.degree);
        r.kernel = Some(data.kernel.into());
        r.field = Some(data.field.into());
        Some(r)
    }

    /// Genus from the index and cusp count; the catalog groups have no
    /// elliptic points.
    pub fn genus(&self) -> i64 {
        1 + self.index() as i64 / 12 - self.cusp_count() as i64 / 2
    }

    /// `dim S_3` from the cusp data derived from the generators.
    pub fn dimension(&self) -> Result<DimensionReport> {
        let reg = cusp_regularity(&self.generators, self.cusp_count())?;
        let genus = self.genus();
        let dim = dim_cusp_forms(3, genus, reg.u, reg.u_irr, &[])?;
        Ok(DimensionReport { group: self.display_name(), genus, u: reg.u, u_irr: reg.u_irr, dim })
    }

    /// Exponent denominator of the basis: 3 when the forms live in `q^{1/3}`.
    pub fn index_mu(&self) -> u32 {
        let pre = self.h1.prefactor_24();
        if pre % 72 == 0 && self.h2.prefactor_24() % 72 == 0 {
            1
        } else {
            3
        }
    }
}
