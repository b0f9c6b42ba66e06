//! Enumeration of minimal zero-sum sequences of length 4.

use super::sequence::{quad_is_minimal, ZSequence};
use crate::arith::{gcd, Modulus};

/// Every minimal zero-sum multiset `{a, b, c, d}` over `Z/n` exactly once,
/// as the sorted quadruple `a <= b <= c <= d`.
pub fn enumerate_minimal_quadruples(
    m: &Modulus,
    coprime_only: bool,
) -> impl Iterator<Item = ZSequence<'_>> + '_ {
    raw_quadruples(m.n(), coprime_only)
        .map(move |q| ZSequence::from_sorted_unchecked(m, q.to_vec()))
}

/// Minimal zero-sum quadruples with unit entries normalized to contain the
/// entry 1: `(1)(a)(b)(c)` with `1 <= a <= b <= c` and `c = (-1-a-b)_n`.
///
/// Every orbit of coprime minimal quadruples under multiplication by units
/// meets this set, and the index is constant on orbits.
pub fn enumerate_normalized_quadruples(m: &Modulus) -> impl Iterator<Item = ZSequence<'_>> + '_ {
    normalized_quadruples(m.n()).map(move |q| ZSequence::from_sorted_unchecked(m, q.to_vec()))
}

pub(crate) fn raw_quadruples(n: u64, coprime_only: bool) -> impl Iterator<Item = [u64; 4]> {
    let ok = move |x: u64| !coprime_only || gcd(x, n) == 1;
    (1..n).filter(move |&a| ok(a)).flat_map(move |a| {
        (a..n).filter(move |&b| ok(b)).flat_map(move |b| {
            (b..n).filter_map(move |c| {
                let d = (3 * n - a - b - c) % n;
                if d < c || !ok(c) || !ok(d) {
                    return None;
                }
                let q = [a, b, c, d];
                quad_is_minimal(&q, n).then_some(q)
            })
        })
    })
}

pub(crate) fn normalized_quadruples(n: u64) -> impl Iterator<Item = [u64; 4]> {
    let unit = move |x: u64| gcd(x, n) == 1;
    (1..n).filter(move |&a| unit(a)).flat_map(move |a| {
        (a..n).filter_map(move |b| {
            if !unit(b) {
                return None;
            }
            let c = (3 * n - 1 - a - b) % n;
            if c < b || !unit(c) {
                return None;
            }
            let q = [1, a, b, c];
            quad_is_minimal(&q, n).then_some(q)
        })
    })
}
