//! The basis `u^{1/3} E`, `u^{2/3} E` of weight-3 cusp forms, where `u` is
//! the covering map applied to the parent Hauptmodul.

use crate::error::{Error, Result};
use crate::series::rational::rat;
use crate::series::{EtaQuotient, PuiseuxSeries};

use super::groups::{GroupRecord, Parent};

/// Hauptmodul `t` of the parent group as a series in q.
pub fn hauptmodul(parent: Parent, order: i64) -> Result<PuiseuxSeries> {
    match parent {
        Parent::G8 => EtaQuotient::new(&[(1, 8), (4, 4), (2, -12)]).expansion(order),
        Parent::G6 => Ok(EtaQuotient::new(&[(6, 4), (1, 8), (3, -8), (2, -4)]).expansion(order)?.scale(&rat(1, 9))),
    }
}

/// Weight-3 forms on the parents: `E_a, E_b` at level 8, `acd, bcd` at level 6.
pub fn weight3_forms(parent: Parent) -> [(&'static str, EtaQuotient); 2] {
    match parent {
        Parent::G8 => [("E_a", EtaQuotient::new(&[(2, 6), (4, 4), (1, -4)])), ("E_b", EtaQuotient::new(&[(2, 8), (8, 4), (4, -6)]))],
        Parent::G6 => [("acd", EtaQuotient::new(&[(1, 4), (2, 1), (6, 5), (3, -4)])), ("bcd", EtaQuotient::new(&[(1, 1), (2, 4), (3, 5), (6, -4)]))],
    }
}

/// How a group's basis arises: which parent form, whether `u = 1/m(t)`,
/// and whether `h1` is the `u^{2/3}` member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisRecipe {
    pub form: usize,
    pub invert: bool,
    pub swap: bool,
}

pub fn recipe(g: &GroupRecord) -> Result<BasisRecipe> {
    let (form, invert, swap) = match g.id {
        "1a" => (0, false, true),
        "1b" | "2a" | "2b" => (1, false, false),
        "3a" => (0, true, false),
        "4a" => (0, false, false),
        "3b" | "4b" => (1, false, false),
        _ => return Err(Error::OutOfScope(format!("{} has no covering map", g.name))),
    };
    Ok(BasisRecipe { form, invert, swap })
}

/// Whether two series agree on every exponent below `upto` (in q-units).
pub fn agree_below(a: &PuiseuxSeries, b: &PuiseuxSeries, upto: i64) -> bool {
    let mu = a.mu().max(b.mu());
    (0..upto * mu as i64).all(|k| match (a.coefficient_at(k, mu), b.coefficient_at(k, mu)) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    })
}

/// `(h1, h2)` to order `q^order`, checked against the catalog eta quotients.
pub fn construct_basis(g: &GroupRecord, order: i64) -> Result<(PuiseuxSeries, PuiseuxSeries)> {
    let r = recipe(g)?;
    let m = g.m().ok_or_else(|| Error::OutOfScope(format!("{} has no covering map", g.name)))?;
    // u may have valuation -1; one extra term keeps the product exact to `order`.
    let work = order + 2;
    let mut u = m.eval_series(&hauptmodul(g.parent, work)?)?;
    if r.invert {
        u = u.invert()?;
    }
    let lc = u.leading_coefficient().ok_or(Error::NotInvertible)?.clone();
    u = u.scale(&lc.recip());
    let e = weight3_forms(g.parent)[r.form].1.expansion(work)?;
    let one = u.pow_rational(&rat(1, 3))?.mul(&e);
    let two = u.pow_rational(&rat(2, 3))?.mul(&e);
    let (h1, h2) = if r.swap { (two, one) } else { (one, two) };
    for (label, got, eq) in [("h1", &h1, &g.h1), ("h2", &h2, &g.h2)] {
        let want = eq.root(3, work)?;
        if !agree_below(got, &want, order) {
            return Err(Error::Consistency(format!("{} {label} differs from its eta-quotient definition", g.name)));
        }
    }
    Ok((h1.truncate(order), h2.truncate(order)))
}
