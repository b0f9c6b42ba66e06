//! The final lower bound on `S0` for a triple `(1, a, b)`.

use serde_json::json;

use super::constants::c0;
use super::report::{inputs, AuditReport};
use super::starsum::{star_sum, t_sum_coefficient};
use super::sums::{compute_s0, S0_S1_MIN_H};
use crate::approx::FourierSmoother;
use crate::arith::{mul_mod, Modulus};
use crate::error::{Error, Result};

fn pairs(m: &Modulus, a: i64, b: i64) -> [(u64, u64); 3] {
    let (a, b) = (m.reduce(a), m.reduce(b));
    [(1, a), (1, b), (a, b)]
}

/// Why the hypotheses fail, if they do.
pub fn hypothesis_violation(m: &Modulus, a: i64, b: i64) -> Option<String> {
    let n = m.n();
    let zero = |c: u64, x: u64, d: u64, y: u64, minus: bool| {
        let l = mul_mod(c, x, n);
        let r = mul_mod(d, y, n);
        if minus {
            l == r
        } else {
            (l + r).is_multiple_of(n)
        }
    };
    let p = pairs(m, a, b);
    for &(x, y) in &p {
        if zero(1, x, 1, y, false) || zero(1, x, 1, y, true) {
            return Some(format!("pair ({x}, {y}) satisfies x +- y = 0 mod {n}"));
        }
    }
    let three_free = |&(x, y): &(u64, u64)| {
        ![false, true]
            .iter()
            .any(|&minus| zero(1, x, 3, y, minus) || zero(3, x, 1, y, minus))
    };
    if !p.iter().any(three_free) {
        return Some(format!(
            "every pair satisfies some x +- 3y or 3x +- y = 0 mod {n}"
        ));
    }
    None
}

/// No pair of `(1, a), (1, b), (a, b)` satisfies `x +- y = 0`, and at least
/// one pair satisfies none of `x +- 3y = 0`, `3x +- y = 0`.
pub fn theorem_hypotheses(m: &Modulus, a: i64, b: i64) -> bool {
    hypothesis_violation(m, a, b).is_none()
}

/// `(c0 - 13.02/H) phi(n) - (3/2) ((2 log H)/pi)^2 sqrt(2 H^2 n) - 20.02 sqrt(2Hn) - 7H`.
pub fn lower_bound_expression(m: &Modulus, h: u64) -> f64 {
    let (hf, n, phi) = (h as f64, m.n() as f64, m.phi() as f64);
    (c0() - 13.02 / hf) * phi
        - 1.5 * t_sum_coefficient(h) * (2.0 * hf * hf * n).sqrt()
        - 20.02 * (2.0 * hf * n).sqrt()
        - 7.0 * hf
}

/// Audit `S0 >= lower bound`: lhs is the bound, rhs the exact count.
///
/// Also records the three starred sums `S_b*, S_a*, S_{ab^-1}*` that the
/// bound consumes.
pub fn theorem_lower_bound(
    m: &Modulus,
    a: i64,
    b: i64,
    s: &FourierSmoother,
) -> Result<AuditReport> {
    if s.h() <= S0_S1_MIN_H {
        return Err(Error::ParameterOutOfRange {
            h: s.h(),
            reason: "the lower bound requires H > 1000",
        });
    }
    for v in [a, b] {
        if !m.is_unit(v) {
            return Err(Error::NotCoprime { value: v, n: m.n() });
        }
    }
    if let Some(why) = hypothesis_violation(m, a, b) {
        return Err(Error::Hypothesis(why));
    }
    let bound = lower_bound_expression(m, s.h());
    let s0 = compute_s0(m, a, b)?;
    let ab_inv = mul_mod(m.reduce(a), m.inverse(b)?, m.n()) as i64;
    let mut stars = Vec::with_capacity(3);
    for (label, v) in [("b", b), ("a", a), ("ab^-1", ab_inv)] {
        let sum = star_sum(v, m, s)?;
        stars.push(format!("S*_{label}={:.3e}", sum.value.norm()));
    }
    let phi = m.phi() as f64;
    let mut report = AuditReport::new(
        "theorem",
        inputs([
            ("n", json!(m.n())),
            ("a", json!(a)),
            ("b", json!(b)),
            ("H", json!(s.h())),
        ]),
        bound,
        s0,
    )
    .with_note(format!("S0={s0} S0/phi={:.6}", s0 / phi))
    .with_note(stars.join(" "));
    if bound < 0.0 {
        report = report.with_note(format!(
            "vacuous at this n: bound is negative (phi/sqrt(n) = {:.3e}, need > 1.1e9)",
            phi / (m.n() as f64).sqrt()
        ));
    }
    Ok(report)
}
