//! Basis detection for a group at a prime, with newform matching.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use serde::Serialize;

use crate::aswd::ratios::{
    aswd_three_term_check, ratio_test_reduced, solve_alpha_ap, AlphaData, ApValue, CoefficientSequence, RatioTest,
    ThreeTermReport,
};
use crate::aswd::residue::{reduce_mod_p2, sqrt_mod_p2, Residue};
use crate::catalog::groups::GroupRecord;
use crate::catalog::newforms::{coefficient, BiquadraticNumber, NewformTag};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum CaseKind {
    Case1,
    Case2,
    Indeterminate,
}

/// `c = u * A` with `u^6 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TwistMatch {
    /// `None` when both sides vanish mod `p^2`.
    pub u: Option<Residue>,
    pub order: Option<u32>,
    /// The identity only holds mod `p`.
    pub weakened: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Provenance {
    Catalog,
    DerivedFromNoncongruenceCoefficients,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NewformMatch {
    pub tag: NewformTag,
    pub provenance: Provenance,
    /// Catalog `A_p` when known.
    pub ap: Option<String>,
    /// `A_p mod p^2` (catalog value, one sign) or the derived value.
    pub ap_residue: Option<Residue>,
    pub ap_squared: Option<Residue>,
    /// Case 1: `aa = u A_p`, `bb = u' A_p`.
    pub aa: Option<TwistMatch>,
    pub bb: Option<TwistMatch>,
    /// Case 2: `ab * ba = w A_p^2`.
    pub product: Option<TwistMatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CongruenceReport {
    pub group: String,
    pub id: String,
    pub p: u64,
    pub bound: u64,
    pub case_kind: CaseKind,
    /// Every detected constant is zero.
    pub degenerate: bool,
    pub aa: Option<RatioTest>,
    pub bb: Option<RatioTest>,
    pub ab: Option<RatioTest>,
    pub ba: Option<RatioTest>,
    pub alpha: Option<AlphaData>,
    pub newform: NewformMatch,
    pub three_term: Vec<ThreeTermReport>,
}

impl CongruenceReport {
    /// The detected constants agree with the catalog newform up to sixth
    /// roots of unity. `None` when there is nothing to compare against.
    pub fn newform_matches(&self) -> Option<bool> {
        if self.newform.provenance != Provenance::Catalog {
            return None;
        }
        match self.case_kind {
            CaseKind::Case1 => Some(self.newform.aa.is_some() && self.newform.bb.is_some()),
            CaseKind::Case2 => Some(self.newform.product.is_some()),
            CaseKind::Indeterminate => None,
        }
    }
}

type SeqPair = Arc<(CoefficientSequence, CoefficientSequence)>;

/// `(h1, h2)` coefficient sequences, indexed by the group's `q^{1/mu}`, up to `bound`.
pub fn basis_sequences(g: &GroupRecord, bound: u64) -> Result<SeqPair> {
    static CACHE: OnceLock<Mutex<HashMap<&'static str, SeqPair>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache").get(g.id) {
        if hit.0.len() as u64 > bound && hit.1.len() as u64 > bound {
            return Ok(hit.clone());
        }
    }
    let mu = g.index_mu();
    let order = (bound / mu as u64) as i64 + 2;
    let h1 = g.h1.root(3, order)?;
    let h2 = g.h2.root(3, order)?;
    let pair = Arc::new((CoefficientSequence::from_series(&h1, mu)?, CoefficientSequence::from_series(&h2, mu)?));
    cache.lock().expect("cache").insert(g.id, pair.clone());
    Ok(pair)
}

/// Every image of `x` in `Z/p^2` over the sign choices of its square roots;
/// empty when a needed radicand is not a square mod `p`.
pub fn reduce_biquadratic(x: &BiquadraticNumber, p: u64) -> Result<Vec<Residue>> {
    let root = |d: i64| sqrt_mod_p2(Residue::p2(d, p)).map(|(r, _)| r);
    let uses = |i: usize| !x.c[i].is_zero();
    let (d1, d2) = x.config;
    let s1 = if uses(1) || uses(3) { root(d1) } else { Some(Residue::p2(0, p)) };
    let s2 = if uses(2) || uses(3) { root(d2) } else { Some(Residue::p2(0, p)) };
    let (Some(s1), Some(s2)) = (s1, s2) else {
        return Ok(Vec::new());
    };
    let c: Vec<Residue> = x.c.iter().map(|c| reduce_mod_p2(c, p)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for e1 in [1, -1] {
        for e2 in [1, -1] {
            let r1 = s1.mul(&Residue::p2(e1, p));
            let r2 = s2.mul(&Residue::p2(e2, p));
            let v = c[0].add(&c[1].mul(&r1)).add(&c[2].mul(&r2)).add(&c[3].mul(&r1.mul(&r2)));
            out.push(v);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn is_sixth_root(u: &Residue) -> bool {
    u.pow(6).is_some_and(|x| x.value == 1 % x.modulus())
}

/// Match `c = u a` with `u^6 = 1`. When `p` divides both sides the common
/// factor is cancelled and the match only holds mod `p` (flagged as weakened).
/// Units are never retried mod `p`: for `p <= 7` every unit is a sixth root
/// of unity there.
pub fn twist_match(c: Residue, a: Residue) -> Option<TwistMatch> {
    if a.is_zero() {
        return c.is_zero().then_some(TwistMatch { u: None, order: None, weakened: false });
    }
    let u = c.div(&a)?;
    is_sixth_root(&u).then(|| TwistMatch { u: Some(u), order: u.order(), weakened: u.e < 2 })
}

fn best_match(c: Residue, candidates: &[Residue]) -> Option<TwistMatch> {
    candidates
        .iter()
        .filter_map(|a| twist_match(c, *a))
        .min_by_key(|m| (m.weakened, m.order, m.u.map(|u| u.value)))
}

fn tests_for(h: &[Vec<Residue>; 2], p: u64, bound: u64) -> Result<[Option<RatioTest>; 4]> {
    let mut out: [Option<RatioTest>; 4] = Default::default();
    for (k, (i, j)) in [(0, 0), (1, 1), (0, 1), (1, 0)].into_iter().enumerate() {
        out[k] = match ratio_test_reduced(&h[i], &h[j], p, bound) {
            Ok(t) => Some(t),
            Err(Error::InsufficientData) => None,
            Err(e) => return Err(e),
        };
    }
    Ok(out)
}

/// Run the Case 1 and Case 2 ratio protocols on the group's basis at `p`.
pub fn detect_basis(g: &GroupRecord, p: u64, bound: u64) -> Result<CongruenceReport> {
    if p < 5 || !crate::trace::field::is_prime(p) {
        return Err(Error::BadPrime(p, "need a prime p >= 5".into()));
    }
    if bound < p {
        return Err(Error::InsufficientData);
    }
    let seqs = basis_sequences(g, bound)?;
    let h = [seqs.0.reduce(p, bound)?, seqs.1.reduce(p, bound)?];
    let [aa, bb, ab, ba] = tests_for(&h, p, bound)?;
    let k = |t: &Option<RatioTest>| t.as_ref().and_then(RatioTest::constant);
    let zero = |c: &Option<Residue>| c.is_some_and(|c| c.is_zero());
    let (caa, cbb, cab, cba) = (k(&aa), k(&bb), k(&ab), k(&ba));
    let direct = caa.is_some() && cbb.is_some();
    let cross = cab.is_some() && cba.is_some();
    let direct_zero = zero(&caa) && zero(&cbb);
    let cross_zero = zero(&cab) && zero(&cba);
    let (case_kind, degenerate) = if direct && !direct_zero {
        (CaseKind::Case1, false)
    } else if cross && !cross_zero {
        (CaseKind::Case2, false)
    } else if direct {
        (CaseKind::Case1, true)
    } else if cross {
        (CaseKind::Case2, true)
    } else {
        (CaseKind::Indeterminate, false)
    };

    let alpha = match (case_kind, cab, cba) {
        (CaseKind::Case2, Some(c1), Some(c2)) if c2.is_unit() => Some(solve_alpha_ap(c1, c2)?),
        _ => None,
    };

    let tag = g.newform;
    let ap = match coefficient(tag, p) {
        Ok(a) => Some(a),
        Err(Error::CoefficientUnknown(_)) => None,
        Err(e) => return Err(e),
    };
    let mut newform = NewformMatch {
        tag,
        provenance: Provenance::Catalog,
        ap: ap.as_ref().map(ToString::to_string),
        ap_residue: None,
        ap_squared: None,
        aa: None,
        bb: None,
        product: None,
    };
    match ap {
        Some(ap) => {
            let direct_ap = reduce_biquadratic(&ap, p)?;
            let squares = reduce_biquadratic(&ap.mul(&ap), p)?;
            newform.ap_residue = direct_ap.first().copied();
            newform.ap_squared = squares.first().copied();
            match case_kind {
                CaseKind::Case1 => {
                    newform.aa = caa.and_then(|c| best_match(c, &direct_ap));
                    newform.bb = cbb.and_then(|c| best_match(c, &direct_ap));
                }
                CaseKind::Case2 => {
                    newform.product = cab.zip(cba).and_then(|(a, b)| best_match(a.mul(&b), &squares));
                }
                CaseKind::Indeterminate => {}
            }
        }
        None => {
            newform.provenance = Provenance::DerivedFromNoncongruenceCoefficients;
            match case_kind {
                CaseKind::Case1 => {
                    newform.ap_residue = caa;
                    newform.ap_squared = caa.map(|c| c.mul(&c));
                }
                CaseKind::Case2 => newform.ap_squared = cab.zip(cba).map(|(a, b)| a.mul(&b)),
                CaseKind::Indeterminate => {}
            }
        }
    }

    let mut three_term = Vec::new();
    if case_kind == CaseKind::Case1 {
        for (s, c) in [(&seqs.0, caa), (&seqs.1, cbb)] {
            if let Some(c) = c {
                three_term.push(aswd_three_term_check(s, &ApValue::Residue(c), 1, p, bound / p)?);
            }
        }
    }

    Ok(CongruenceReport {
        group: g.display_name(),
        id: g.id.to_string(),
        p,
        bound,
        case_kind,
        degenerate,
        aa,
        bb,
        ab,
        ba,
        alpha,
        newform,
        three_term,
    })
}
