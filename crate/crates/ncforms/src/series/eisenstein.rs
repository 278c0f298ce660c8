//! Divisor sums and the level-3 weight-3 Eisenstein series.

use super::puiseux::PuiseuxSeries;
use super::rational::int;

/// Sum of the positive divisors of `n`.
pub fn divisor_sigma(n: u64) -> u64 {
    assert!(n >= 1);
    let mut s = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += d;
            if d * d != n {
                s += n / d;
            }
        }
        d += 1;
    }
    s
}

/// `1 + 12 sum_{n>=1} (sigma(3n) - 3 sigma(n)) q^n` modulo `q^order`.
pub fn eisenstein_e6(order: i64) -> PuiseuxSeries {
    let order = order.max(1);
    let mut c = Vec::with_capacity(order as usize);
    c.push(int(1));
    for n in 1..order as u64 {
        let v = divisor_sigma(3 * n) as i64 - 3 * divisor_sigma(n) as i64;
        c.push(int(12 * v));
    }
    PuiseuxSeries::new(1, 0, c, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma_naive(n: u64) -> u64 {
        (1..=n).filter(|d| n.is_multiple_of(*d)).sum()
    }

    #[test]
    fn sigma_matches_enumeration() {
        assert_eq!(divisor_sigma(6), 12);
        for n in 1..300 {
            assert_eq!(divisor_sigma(n), sigma_naive(n));
        }
    }

    #[test]
    fn e6_leading_terms() {
        assert_eq!(eisenstein_e6(4), PuiseuxSeries::from_ints(&[1, 12, 36, 12], 4));
    }
}
