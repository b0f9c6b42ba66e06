//! The exact count `S0` and its smoothed surrogate `S1`, the latter along
//! two independent routes: physical space (`f` evaluated at the points) and
//! frequency space (triple sum of coefficients against Ramanujan sums).

use num_complex::Complex64;
use serde_json::json;

use super::report::{inputs, AuditReport};
use crate::approx::{chi_halves, FourierSmoother};
use crate::arith::{mul_mod, Modulus};
use crate::error::{Error, Result};
use crate::sum::{CompensatedComplexSum, CompensatedSum};

/// Validity threshold: the `|S0 - S1|` envelope needs `H > 1000`.
pub const S0_S1_MIN_H: u64 = 1000;

fn require_units(m: &Modulus, values: &[i64]) -> Result<()> {
    for &v in values {
        if !m.is_unit(v) {
            return Err(Error::NotCoprime { value: v, n: m.n() });
        }
    }
    Ok(())
}

/// `S0 = sum over units g of chi(g/n) chi(ag/n) chi(bg/n)`, exact.
pub fn compute_s0(m: &Modulus, a: i64, b: i64) -> Result<f64> {
    require_units(m, &[a, b])?;
    let n = m.n();
    let (a, b) = (m.reduce(a), m.reduce(b));
    // chi values in halves, so each product is in eighths
    let eighths: u64 = m
        .units()
        .map(|g| {
            let g = g.value();
            u64::from(chi_halves(g, n))
                * u64::from(chi_halves(mul_mod(a, g, n), n))
                * u64::from(chi_halves(mul_mod(b, g, n), n))
        })
        .sum();
    Ok(eighths as f64 / 8.0)
}

/// `#{g : (g)_n/n, (ag)_n/n, (bg)_n/n all in [0, 1/2]}` for odd `n`.
pub fn count_triple_in_i(m: &Modulus, a: i64, b: i64) -> Result<u64> {
    if !m.is_odd() {
        return Err(Error::EvenModulus(m.n()));
    }
    require_units(m, &[a, b])?;
    let n = m.n();
    let (a, b) = (m.reduce(a), m.reduce(b));
    let in_i = |r: u64| 2 * r <= n;
    Ok(m.units()
        .filter(|g| {
            let g = g.value();
            in_i(g) && in_i(mul_mod(a, g, n)) && in_i(mul_mod(b, g, n))
        })
        .count() as u64)
}

/// `S1 = sum over units g of f(g/n) f(ag/n) f(bg/n)`.
pub fn compute_s1_direct(m: &Modulus, a: i64, b: i64, s: &FourierSmoother) -> Result<f64> {
    require_units(m, &[a, b])?;
    let n = m.n();
    let (a, b) = (m.reduce(a), m.reduce(b));
    let f = s.f_table(n);
    let mut acc = CompensatedSum::new();
    for g in m.units() {
        let g = g.value();
        acc.add(f[g as usize] * f[mul_mod(a, g, n) as usize] * f[mul_mod(b, g, n) as usize]);
    }
    Ok(acc.value())
}

/// `S1` as `sum_{h1,h2,h3} f^(h1) f^(h2) f^(h3) c_n(a h1 + b h2 + h3)`.
///
/// Indices run over 0 and the odd integers in `[-H, H]`; even nonzero
/// indices are skipped since `f^` vanishes there. All shells are summed,
/// including those that cancel to zero in exact arithmetic.
pub fn compute_s1_spectral(m: &Modulus, a: i64, b: i64, s: &FourierSmoother) -> Result<f64> {
    Ok(s1_spectral_parts(m, a, b, s)?.re)
}

pub(crate) fn s1_spectral_parts(
    m: &Modulus,
    a: i64,
    b: i64,
    s: &FourierSmoother,
) -> Result<Complex64> {
    require_units(m, &[a, b])?;
    let n = m.n();
    let c = m.ramanujan_table();
    let (a, b) = (m.reduce(a), m.reduce(b));
    let hh = s.h() as i64;
    let idx: Vec<(u64, Complex64)> = std::iter::once(0)
        .chain((-hh..=hh).filter(|h| h % 2 != 0))
        .map(|h| (m.reduce(h), s.f_hat(h)))
        .collect();
    let mut total = CompensatedComplexSum::new();
    for &(r1, c1) in &idx {
        let base1 = mul_mod(a, r1, n);
        for &(r2, c2) in &idx {
            let base = (base1 + mul_mod(b, r2, n)) % n;
            let w = c1 * c2;
            let mut inner = CompensatedComplexSum::new();
            for &(r3, c3) in &idx {
                let k = (base + r3) % n;
                inner.add(c3 * c[k as usize] as f64);
            }
            total.add(w * inner.value());
        }
    }
    Ok(total.value())
}

/// `|S0 - S1| <= (13.02/H) phi(n) + 20.02 sqrt(2Hn) + 7H`, valid for `H > 1000`.
pub fn s0_s1_envelope(m: &Modulus, s: &FourierSmoother) -> f64 {
    let h = s.h() as f64;
    let n = m.n() as f64;
    let phi = m.phi() as f64;
    13.02 / h * phi + 20.02 * (2.0 * h * n).sqrt() + 7.0 * h
}

pub fn audit_s0_s1(m: &Modulus, a: i64, b: i64, s: &FourierSmoother) -> Result<AuditReport> {
    if s.h() <= S0_S1_MIN_H {
        return Err(Error::ParameterOutOfRange {
            h: s.h(),
            reason: "the S0/S1 envelope requires H > 1000",
        });
    }
    let s0 = compute_s0(m, a, b)?;
    let s1 = compute_s1_direct(m, a, b, s)?;
    let rhs = s0_s1_envelope(m, s);
    Ok(AuditReport::new(
        "s0s1",
        inputs([
            ("n", json!(m.n())),
            ("a", json!(a)),
            ("b", json!(b)),
            ("H", json!(s.h())),
        ]),
        (s0 - s1).abs(),
        rhs,
    )
    .with_note(format!("S0={s0} S1={s1:.6} phi={}", m.phi())))
}
