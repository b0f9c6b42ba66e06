//! Large-gcd pairings `k -> k*` and the starred coefficient sums.
//!
//! For fixed `A`, `n` and `H`, `k*` is the unique `y` in `[-H^2, H^2]` with
//! `gcd(Ak + y, n) > sqrt(2 H^2 n)`. The starred sum collects the pairs
//! `(k, k*)` with both entries odd and in `[-H, H]`; all other coefficient
//! pairs enjoy the trivial Ramanujan-sum bound.
//!
//! Threshold comparisons are exact: `gcd^2 > 2 G n` in `u128`.

use num_complex::Complex64;
use serde_json::json;

use super::report::{inputs, AuditReport};
use crate::approx::FourierSmoother;
use crate::arith::{gcd_with, Modulus};
use crate::error::{Error, Result};
use crate::sum::CompensatedComplexSum;

/// The starred-sum envelope when no relation `A+-1, 3A+-1, A+-3 = 0` holds.
pub const STARSUM_ENVELOPE: f64 = 0.07926;
/// The starred-sum envelope when `3A+-1 = 0` or `A+-3 = 0`.
pub const STARSUM_RELATION_ENVELOPE: f64 = 1.0 / 12.0;

#[inline]
fn exceeds(d: u64, g: u64, n: u64) -> bool {
    u128::from(d) * u128::from(d) > 2 * u128::from(g) * u128::from(n)
}

/// Brute-force scan: every `y` in `[-G, G]` with `gcd(xA + y, n) > sqrt(2Gn)`.
pub fn large_gcd_shifts(x: i64, a: i64, n: u64, g: u64) -> Vec<i64> {
    let g_i = g as i64;
    let base = i128::from(x) * i128::from(a);
    (-g_i..=g_i)
        .filter(|&y| {
            let v = (base + i128::from(y)).rem_euclid(i128::from(n)) as u64;
            exceeds(crate::arith::gcd(n, v), g, n)
        })
        .collect()
}

/// Brute-force scan in the other variable: every `x` in `[-G, G]` with
/// `gcd(xA + y, n) > sqrt(2Gn)`.
pub fn large_gcd_multipliers(y: i64, a: i64, n: u64, g: u64) -> Vec<i64> {
    let g_i = g as i64;
    (-g_i..=g_i)
        .filter(|&x| {
            let v =
                (i128::from(x) * i128::from(a) + i128::from(y)).rem_euclid(i128::from(n)) as u64;
            exceeds(crate::arith::gcd(n, v), g, n)
        })
        .collect()
}

/// Divisors `d` of `n` with `d^2 > 2 H^2 n`; only these can produce a `k*`.
#[derive(Debug, Clone)]
pub struct KStarFinder {
    a: i64,
    h: u64,
    large_divisors: Vec<u64>,
}

impl KStarFinder {
    pub fn new(a: i64, m: &Modulus, h: u64) -> Self {
        let g = h * h;
        let large_divisors = m
            .divisors()
            .into_iter()
            .filter(|&d| exceeds(d, g, m.n()))
            .collect();
        Self {
            a,
            h,
            large_divisors,
        }
    }

    /// Every qualifying `y` (at most one, by the pigeonhole argument on
    /// `gcd(Ak+y, Ak+z) <= |y - z|`).
    pub fn candidates(&self, k: i64) -> Vec<i64> {
        let window = (self.h * self.h) as i128;
        let target = -(i128::from(self.a) * i128::from(k));
        let mut out: Vec<i64> = Vec::new();
        for &d in &self.large_divisors {
            let d = i128::from(d);
            let r = target.rem_euclid(d);
            for y in [r, r - d] {
                if (-window..=window).contains(&y) && !out.contains(&(y as i64)) {
                    out.push(y as i64);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn kstar(&self, k: i64) -> Option<i64> {
        let c = self.candidates(k);
        debug_assert!(c.len() <= 1, "two large-gcd shifts for k={k}: {c:?}");
        c.first().copied()
    }
}

/// `k*` for one `k`, via the divisor search.
pub fn kstar(a: i64, m: &Modulus, s: &FourierSmoother, k: i64) -> Option<i64> {
    KStarFinder::new(a, m, s.h()).kstar(k)
}

/// `k*` by scanning all of `[-H^2, H^2]`; returns every qualifying value.
pub fn kstar_scan(a: i64, m: &Modulus, s: &FourierSmoother, k: i64) -> Vec<i64> {
    large_gcd_shifts(k, a, m.n(), s.h() * s.h())
}

#[derive(Debug, Clone)]
pub struct StarSum {
    pub value: Complex64,
    /// The pairs `(k, k*)` that entered the sum.
    pub pairs: Vec<(i64, i64)>,
}

/// `sum over (k, k*) in S of f^(k) f^(k*) c_n(Ak + k*)`.
pub fn star_sum(a: i64, m: &Modulus, s: &FourierSmoother) -> Result<StarSum> {
    if !m.is_unit(a) {
        return Err(Error::NotCoprime { value: a, n: m.n() });
    }
    let finder = KStarFinder::new(a, m, s.h());
    let hh = s.h() as i64;
    let mut acc = CompensatedComplexSum::new();
    let mut pairs = Vec::new();
    if !finder.large_divisors.is_empty() {
        for k in (-hh..=hh).filter(|k| k % 2 != 0) {
            let Some(ks) = finder.kstar(k) else { continue };
            if ks % 2 == 0 || ks.abs() > hh {
                continue;
            }
            let c = m.ramanujan_sum(a * k + ks) as f64;
            acc.add(s.f_hat(k) * s.f_hat(ks) * c);
            pairs.push((k, ks));
        }
    }
    Ok(StarSum {
        value: acc.value(),
        pairs,
    })
}

/// Which linear relations `A` satisfies modulo `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarRelation {
    /// `A +- 1 = 0`: neither starred-sum envelope applies.
    UnitPair,
    /// `3A +- 1 = 0` or `A +- 3 = 0`: the 1/12 envelope.
    Triple,
    /// None of the six relations: the 0.07926 envelope.
    Free,
}

pub fn classify_relation(a: i64, m: &Modulus) -> StarRelation {
    let zero = |x: i64| m.reduce(x) == 0;
    if zero(a + 1) || zero(a - 1) {
        StarRelation::UnitPair
    } else if zero(3 * a + 1) || zero(3 * a - 1) || zero(a + 3) || zero(a - 3) {
        StarRelation::Triple
    } else {
        StarRelation::Free
    }
}

/// Audit `|star_sum| <= envelope * phi(n)` with the envelope chosen by
/// [`classify_relation`].
pub fn audit_star_sum(a: i64, m: &Modulus, s: &FourierSmoother) -> Result<AuditReport> {
    if !m.is_coprime_six() {
        return Err(Error::NotCoprimeToSix(m.n()));
    }
    let relation = classify_relation(a, m);
    let envelope = match relation {
        StarRelation::Free => STARSUM_ENVELOPE,
        StarRelation::Triple => STARSUM_RELATION_ENVELOPE,
        StarRelation::UnitPair => {
            return Err(Error::Hypothesis(format!(
                "A = {a} satisfies A +- 1 = 0 mod {}",
                m.n()
            )))
        }
    };
    let sum = star_sum(a, m, s)?;
    let phi = m.phi() as f64;
    Ok(AuditReport::new(
        "starsum",
        inputs([("n", json!(m.n())), ("A", json!(a)), ("H", json!(s.h()))]),
        sum.value.norm(),
        envelope * phi,
    )
    .with_note(format!(
        "relation={relation:?} pairs={} value={:.9e}{:+.3e}i ratio={:.6}",
        sum.pairs.len(),
        sum.value.re,
        sum.value.im,
        sum.value.norm() / phi
    )))
}

/// Audit a single `k*`: the scan over `[-H^2, H^2]` must find at most one
/// value, and it must match the divisor search.
pub fn audit_kstar(a: i64, m: &Modulus, s: &FourierSmoother, k: i64) -> Result<AuditReport> {
    if !m.is_unit(a) {
        return Err(Error::NotCoprime { value: a, n: m.n() });
    }
    if k.unsigned_abs() > s.h() {
        return Err(Error::Hypothesis(format!(
            "|k| = {} exceeds H = {}",
            k.abs(),
            s.h()
        )));
    }
    let scan = kstar_scan(a, m, s, k);
    let fast = kstar(a, m, s, k);
    let agree = scan.first().copied() == fast;
    let report = AuditReport::new(
        "kstar",
        inputs([
            ("n", json!(m.n())),
            ("A", json!(a)),
            ("H", json!(s.h())),
            ("k", json!(k)),
        ]),
        scan.len() as f64,
        if agree { 1.0 } else { 0.0 },
    );
    let note = match fast {
        Some(v) => format!("kstar={v} gcd={}", gcd_with(m.n(), a * k + v)),
        None => "kstar absent".to_string(),
    };
    let mut report = report.with_note(note);
    if !agree {
        report.pass = false;
        report = report.with_note(format!("scan found {scan:?}"));
    }
    Ok(report)
}

/// Both forms of the bound on the complementary sum `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TSumBound {
    /// `sum_{0<|h|<=H} |f^(h)|`.
    pub coefficient_sum: f64,
    /// `(sum |f^|)^2 sqrt(2 H^2 n)`.
    pub exact: f64,
    /// `((2 log H)/pi)^2 sqrt(2 H^2 n)`.
    pub closed_form: f64,
}

impl TSumBound {
    pub fn holds(&self) -> bool {
        self.exact <= self.closed_form
    }
}

pub fn t_sum_bound(s: &FourierSmoother, m: &Modulus) -> Result<TSumBound> {
    if s.h() < 2 {
        return Err(Error::ParameterOutOfRange {
            h: s.h(),
            reason: "the log H bound needs H >= 2",
        });
    }
    let h = s.h() as f64;
    let root = (2.0 * h * h * m.n() as f64).sqrt();
    let sum = s.abs_coefficient_sum();
    Ok(TSumBound {
        coefficient_sum: sum,
        exact: sum * sum * root,
        closed_form: t_sum_coefficient(s.h()) * root,
    })
}

/// `((2 log H)/pi)^2`.
pub fn t_sum_coefficient(h: u64) -> f64 {
    (2.0 * (h as f64).ln() / std::f64::consts::PI).powi(2)
}
