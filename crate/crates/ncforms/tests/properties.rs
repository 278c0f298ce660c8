//! Property tests for the exact and modular arithmetic layers.

use ncforms::aswd::{cbrt_mod_p2, reduce_mod_p2, sixth_roots_mod_p2, sqrt_mod_p2, Residue};
use ncforms::report::expr::Expr;
use ncforms::series::rational::{format_rational, parse_rational, rat};
use ncforms::series::{EtaQuotient, ExactRational, PuiseuxSeries};
use proptest::prelude::*;

const PRIMES: &[u64] = &[5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(PRIMES)
}

fn ratio() -> impl Strategy<Value = ExactRational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn series() -> impl Strategy<Value = PuiseuxSeries> {
    (prop::collection::vec(ratio(), 1..10), -3i64..=3).prop_map(|(c, val)| {
        let len = c.len() as i64;
        PuiseuxSeries::new(1, val, c, val + len)
    })
}

proptest! {
    #[test]
    fn series_ring_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn series_inverse(a in series()) {
        prop_assume!(!a.is_zero());
        let inv = a.invert().unwrap();
        let prod = a.mul(&inv);
        prop_assert_eq!(prod.clone(), PuiseuxSeries::one(prod.prec()));
    }

    #[test]
    fn cube_root_cubes_back(k in 1i64..=3, pairs in prop::collection::vec((1u32..=6, -4i64..=4), 1..4)) {
        let pairs: Vec<(u32, i64)> = pairs.into_iter().map(|(m, e)| (m, 3 * e * k)).collect();
        let q = EtaQuotient::new(&pairs);
        let order = 12;
        let r = q.root(3, order).unwrap();
        let cubed = r.mul(&r).mul(&r);
        let direct = q.expansion(order).unwrap();
        let upto = cubed.prec().min(direct.prec());
        prop_assert_eq!(cubed.truncate(upto), direct.truncate(upto));
    }

    #[test]
    fn rational_text_round_trip(x in ratio()) {
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn reduction_is_a_ring_map(a in -50i64..=50, b in 1i64..=12, c in -50i64..=50, d in 1i64..=12, p in prime()) {
        prop_assume!(b % p as i64 != 0 && d % p as i64 != 0);
        let (x, y) = (rat(a, b), rat(c, d));
        let (rx, ry) = (reduce_mod_p2(&x, p).unwrap(), reduce_mod_p2(&y, p).unwrap());
        prop_assert_eq!(reduce_mod_p2(&(&x + &y), p).unwrap(), rx.add(&ry));
        prop_assert_eq!(reduce_mod_p2(&(&x * &y), p).unwrap(), rx.mul(&ry));
    }

    #[test]
    fn sqrt_round_trip(x in 1i64..2209, p in prime()) {
        let x = Residue::p2(x, p);
        prop_assume!(x.is_unit());
        let sq = x.mul(&x);
        let (r1, r2) = sqrt_mod_p2(sq).unwrap();
        prop_assert_eq!(r1.mul(&r1), sq);
        prop_assert_eq!(r2, r1.neg());
        prop_assert!(r1 == x || r2 == x);
    }

    #[test]
    fn cbrt_round_trip(x in 1i64..2209, p in prime()) {
        let x = Residue::p2(x, p);
        prop_assume!(x.is_unit());
        let cube = x.mul(&x).mul(&x);
        match cbrt_mod_p2(cube) {
            Ok(c) => {
                prop_assert_eq!(p % 3, 2);
                prop_assert_eq!(c, x);
            }
            Err(_) => prop_assert_eq!(p % 3, 1),
        }
    }

    #[test]
    fn inverse_and_division(x in 1i64..2209, y in 1i64..2209, p in prime()) {
        let (x, y) = (Residue::p2(x, p), Residue::p2(y, p));
        prop_assume!(y.is_unit());
        prop_assert_eq!(x.div(&y).unwrap().mul(&y), x);
        prop_assert_eq!(y.inv().unwrap().mul(&y), Residue::p2(1, p));
    }

    #[test]
    fn sixth_roots_are_sixth_roots(p in prime()) {
        let roots = sixth_roots_mod_p2(p).unwrap();
        prop_assert_eq!(roots.len() as u64, num_integer::gcd(6, p - 1));
        for w in roots {
            prop_assert_eq!(w.pow(6).unwrap(), Residue::p2(1, p));
        }
    }

    #[test]
    fn expression_products(a in -20i64..=20, b in 1i64..=20, p in prime()) {
        prop_assume!(a != 0 && b != 0 && a % p as i64 != 0 && b % p as i64 != 0);
        let e = Expr::parse(&format!("{a}*{b}^-1")).unwrap();
        let vals = e.eval(p, &Default::default()).unwrap();
        prop_assert_eq!(vals, vec![Residue::p2(a, p).div(&Residue::p2(b, p)).unwrap()]);
    }
}
