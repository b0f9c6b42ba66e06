//! Trigonometric smoothing of the half-interval indicator.
//!
//! `chi` is the period-1 indicator of `[0, 1/2]` (value 1/2 at the two
//! endpoints). The smoother `f` of degree `H` has coefficients
//! `f^(h) = chi^(h) * J^(h / (H + 1))` where `J^` is Vaaler's compactly
//! supported transform
//!
//! ```text
//! J^(t) = pi t (1 - |t|) cot(pi t) + |t|,   0 < |t| < 1,
//! J^(0) = 1,  J^(t) = 0 for |t| >= 1.
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// A Fourier coefficient. The coefficients of `chi` and `f` are real at 0,
/// zero at even nonzero indices and purely imaginary at odd indices.
pub type Coefficient = Complex64;

/// `chi(t)`: 1 on `(0, 1/2)`, 1/2 on `Z/2`, 0 on `(1/2, 1)`, period 1.
pub fn chi(t: f64) -> f64 {
    let frac = t - t.floor();
    if frac == 0.0 || frac == 0.5 {
        0.5
    } else if frac < 0.5 {
        1.0
    } else {
        0.0
    }
}

/// `chi` at `r/n` with the boundary decided exactly, in units of 1/2.
#[inline]
pub fn chi_halves(r: u64, n: u64) -> u8 {
    let r = r % n;
    if r == 0 || 2 * r == n {
        1
    } else if 2 * r < n {
        2
    } else {
        0
    }
}

/// Fourier coefficients of `chi`: 1/2 at 0, 0 at even `k`, `1/(i pi k)` at odd `k`.
pub fn chi_hat(k: i64) -> Coefficient {
    if k == 0 {
        Complex64::new(0.5, 0.0)
    } else if k % 2 == 0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(0.0, -1.0 / (PI * k as f64))
    }
}

/// Vaaler's `J^(t)`.
pub fn j_hat(t: f64) -> f64 {
    let a = t.abs();
    if a >= 1.0 {
        return 0.0;
    }
    if a < 1e-3 {
        // pi t cot(pi t) = 1 - x^2/3 - x^4/45 - 2x^6/945 - x^8/4725, x = pi t
        let x2 = (PI * a).powi(2);
        let pcot = 1.0 - x2 * (1.0 / 3.0 + x2 * (1.0 / 45.0 + x2 * (2.0 / 945.0 + x2 / 4725.0)));
        return (1.0 - a) * pcot + a;
    }
    PI * a * (1.0 - a) / (PI * a).tan() + a
}

/// The degree-`H` smoother with its coefficients precomputed.
#[derive(Debug, Clone)]
pub struct FourierSmoother {
    h: u64,
    /// `J^(h / (H + 1))` for `h = 0..=H`.
    damping: Vec<f64>,
}

impl FourierSmoother {
    pub fn new(h: u64) -> Result<Self> {
        if h == 0 {
            return Err(Error::ParameterOutOfRange {
                h,
                reason: "H must be at least 1",
            });
        }
        let scale = (h + 1) as f64;
        let damping = (0..=h).map(|k| j_hat(k as f64 / scale)).collect();
        Ok(Self { h, damping })
    }

    #[inline]
    pub fn h(&self) -> u64 {
        self.h
    }

    /// `J^(h / (H + 1))`, zero outside `|h| <= H`.
    #[inline]
    pub fn damping(&self, h: i64) -> f64 {
        let a = h.unsigned_abs();
        if a > self.h {
            0.0
        } else {
            self.damping[a as usize]
        }
    }

    /// `f^(h) = chi^(h) J^(h/(H+1))`.
    pub fn f_hat(&self, h: i64) -> Coefficient {
        if h.unsigned_abs() > self.h {
            return Complex64::new(0.0, 0.0);
        }
        chi_hat(h) * self.damping(h)
    }

    /// `Im f^(h)` for odd `h`, i.e. `-J^(h/(H+1)) / (pi h)`.
    #[inline]
    pub(crate) fn f_hat_odd_im(&self, h: i64) -> f64 {
        -self.damping(h) / (PI * h as f64)
    }

    /// Odd indices `h` with `0 < h <= H`.
    pub fn odd_indices(&self) -> impl Iterator<Item = i64> {
        (1..=self.h as i64).step_by(2)
    }

    /// `f(x) = 1/2 + sum over odd 0 < h <= H of 2 J^(h/(H+1)) sin(2 pi h x) / (pi h)`,
    /// the real form of `sum_{|h| <= H} f^(h) e(hx)`.
    pub fn f_eval(&self, x: f64) -> f64 {
        let x = x - x.floor();
        let mut acc = CompensatedSum::new();
        acc.add(0.5);
        for h in self.odd_indices() {
            let w = 2.0 * self.damping(h) / (PI * h as f64);
            acc.add(w * (2.0 * PI * h as f64 * x).sin());
        }
        acc.value()
    }

    /// `f(r/n)` for every `r` in `[0, n)`, with exact argument reduction.
    pub fn f_table(&self, n: u64) -> Vec<f64> {
        let sines: Vec<f64> = (0..n)
            .map(|j| (2.0 * PI * j as f64 / n as f64).sin())
            .collect();
        let weights: Vec<(u64, f64)> = self
            .odd_indices()
            .map(|h| (h as u64 % n, 2.0 * self.damping(h) / (PI * h as f64)))
            .collect();
        (0..n)
            .map(|r| {
                let mut acc = CompensatedSum::new();
                acc.add(0.5);
                for &(h, w) in &weights {
                    let j = (u128::from(h) * u128::from(r) % u128::from(n)) as usize;
                    acc.add(w * sines[j]);
                }
                acc.value()
            })
            .collect()
    }

    /// Fejer coefficient `K^_{H+1}(h) = max(0, 1 - |h|/(H+1))`.
    pub fn fejer_k_hat(&self, h: i64) -> f64 {
        (1.0 - h.unsigned_abs() as f64 / (self.h + 1) as f64).max(0.0)
    }

    /// `(1/(H+1)) sum_{|h| <= H} K^_{H+1}(h)`: the uniform bound on
    /// `|chi - f|` obtained from `|C_h| <= 1`. The triangular weights sum to
    /// `H + 1`, so this equals 1 for every `H`.
    pub fn approx_error_bound(&self) -> f64 {
        let hh = self.h as i64;
        let mut acc = CompensatedSum::new();
        for h in -hh..=hh {
            acc.add(self.fejer_k_hat(h));
        }
        acc.value() / (self.h + 1) as f64
    }

    /// `sum_{0 < |h| <= H} |f^(h)|`.
    pub fn abs_coefficient_sum(&self) -> f64 {
        let mut acc = CompensatedSum::new();
        for h in self.odd_indices() {
            acc.add(2.0 * self.f_hat_odd_im(h).abs());
        }
        acc.value()
    }
}
