//! Independent reference computations. Nothing here calls the crate's own
//! kernels except where inputs (coefficients `f^`) are needed verbatim.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;

/// Kahan–Babuška summation, kept separate from the crate's accumulator.
#[derive(Default, Clone, Copy)]
pub struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.c
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn units(n: u64) -> Vec<u64> {
    (1..n.max(2)).filter(|&g| gcd(g, n) == 1).collect()
}

pub fn phi(n: u64) -> u64 {
    if n == 1 {
        1
    } else {
        units(n).len() as u64
    }
}

/// `sum over units g of e(kg/n)` in floating point.
pub fn ramanujan_direct(n: u64, k: i64) -> f64 {
    let mut acc = Kahan::default();
    let k = k.rem_euclid(n as i64) as u64;
    for g in units(n) {
        let r = (k * g) % n;
        acc.add((2.0 * PI * r as f64 / n as f64).cos());
    }
    acc.value()
}

/// Index by scanning every unit.
pub fn brute_index(seq: &[u64], n: u64) -> u64 {
    units(n)
        .into_iter()
        .map(|g| seq.iter().map(|&a| (a * g) % n).sum::<u64>() / n)
        .min()
        .unwrap()
}

/// Zero-sum with no proper nonempty zero-sum subsequence, via all subsets.
pub fn brute_minimal(seq: &[u64], n: u64) -> bool {
    let k = seq.len();
    let sub = |mask: usize| {
        (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| seq[i])
            .sum::<u64>()
            % n
    };
    let full = (1usize << k) - 1;
    sub(full) == 0 && (1..full).all(|m| sub(m) != 0)
}

/// `#{g unit : g, ag, bg all in (0, n/2)}`, plus half-weights on `n/2`.
pub fn brute_s0(n: u64, a: u64, b: u64) -> f64 {
    let w = |r: u64| {
        if r == 0 || 2 * r > n {
            0.0
        } else if 2 * r == n {
            0.5
        } else {
            1.0
        }
    };
    units(n)
        .into_iter()
        .map(|g| w(g % n) * w(a * g % n) * w(b * g % n))
        .sum()
}

/// Starred sum by a double loop over odd `(k, y)` in `[-H, H]^2`, testing
/// `gcd(Ak + y, n)^2 > 2 H^2 n` directly, with direct Ramanujan sums.
pub fn star_sum_double_loop(a: i64, n: u64, h: u64, f_hat: impl Fn(i64) -> Complex64) -> Complex64 {
    let hh = h as i64;
    let mut re = Kahan::default();
    let mut im = Kahan::default();
    for k in (-hh..=hh).filter(|k| k % 2 != 0) {
        for y in (-hh..=hh).filter(|y| y % 2 != 0) {
            let v = (a * k + y).rem_euclid(n as i64) as u64;
            let d = gcd(n, v) as u128;
            if d * d > 2 * (h as u128).pow(2) * n as u128 {
                let c = ramanujan_direct(n, a * k + y).round();
                let t = f_hat(k) * f_hat(y) * c;
                re.add(t.re);
                im.add(t.im);
            }
        }
    }
    Complex64::new(re.value(), im.value())
}

// ---- J^ by quadrature -------------------------------------------------------

const SERIES_TERMS: u64 = 10_000;

/// `sum_{m>=1} 1/(z+m)^2` and `sum_{m>=1} 1/(z+m)^3`: `M` terms plus an
/// Euler–Maclaurin tail.
fn zeta_tails(z: f64) -> (f64, f64) {
    let (mut s2, mut s3) = (Kahan::default(), Kahan::default());
    for m in (1..=SERIES_TERMS).rev() {
        let x = z + m as f64;
        s2.add(1.0 / (x * x));
        s3.add(1.0 / (x * x * x));
    }
    let x = z + SERIES_TERMS as f64;
    let t2 = 1.0 / x - 1.0 / (2.0 * x.powi(2)) + 1.0 / (6.0 * x.powi(3)) - 1.0 / (30.0 * x.powi(5))
        + 1.0 / (42.0 * x.powi(7))
        - 1.0 / (30.0 * x.powi(9));
    let t3 = 1.0 / (2.0 * x.powi(2)) - 1.0 / (2.0 * x.powi(3)) + 1.0 / (4.0 * x.powi(4))
        - 1.0 / (12.0 * x.powi(6))
        + 1.0 / (12.0 * x.powi(8));
    s2.add(t2);
    s3.add(t3);
    (s2.value(), s3.value())
}

/// `q(z) = 2 psi'(z+1) + 1/z^2 - 2/z` and `q'(z)`, for `z > 0`.
///
/// Splitting `sum sgn(m)/(z-m)^2` into `m > 0` and `m < 0` and using the
/// reflection `psi'(1-z) + psi'(z) = pi^2 / sin^2(pi z)` gives
/// `H(z) = 1 - sin^2(pi z) q(z) / pi^2`.
fn q_and_derivative(z: f64) -> (f64, f64) {
    let (s2, s3) = zeta_tails(z);
    let q = 2.0 * s2 + 1.0 / (z * z) - 2.0 / z;
    let dq = -4.0 * s3 - 2.0 / (z * z * z) + 2.0 / (z * z);
    (q, dq)
}

pub fn h_reflected(z: f64) -> f64 {
    let (q, _) = q_and_derivative(z);
    1.0 - (PI * z).sin().powi(2) * q / (PI * PI)
}

/// `H(z)` straight from its defining series, truncated at `|m| <= M`, with the
/// leading tail term `sum_{m>M} [1/(m-z)^2 - 1/(m+z)^2] ~ 2z/M^2` added.
pub fn h_series(z: f64) -> f64 {
    let mut acc = Kahan::default();
    for m in (1..=SERIES_TERMS).rev() {
        let m = m as f64;
        acc.add(1.0 / ((z - m) * (z - m)) - 1.0 / ((z + m) * (z + m)));
    }
    let big_m = SERIES_TERMS as f64 + 0.5;
    acc.add(2.0 * z / (big_m * big_m));
    acc.add(2.0 / z);
    ((PI * z).sin() / PI).powi(2) * acc.value()
}

/// `J(z) = H'(z)/2`, even in `z`.
pub fn j_kernel(z: f64) -> f64 {
    let z = z.abs();
    let (q, dq) = q_and_derivative(z);
    -(PI * (2.0 * PI * z).sin() * q + (PI * z).sin().powi(2) * dq) / (2.0 * PI * PI)
}

/// Tabulated midpoint samples of `J` on `(0, L)` with step `1/4`.
pub struct JQuadrature {
    step: f64,
    nodes: Vec<(f64, f64)>,
}

impl JQuadrature {
    pub fn new(cutoff: f64) -> Self {
        let step = 0.25;
        let count = (cutoff / step) as usize;
        let nodes = (0..count)
            .map(|k| {
                let z = (k as f64 + 0.5) * step;
                (z, j_kernel(z))
            })
            .collect();
        Self { step, nodes }
    }

    /// `J^(t) = 2 int_0^inf J(z) cos(2 pi t z) dz`. The midpoint rule is exact
    /// for band-limited integrands when `1 + |t| < 1/step`, so the only error
    /// is truncation at the cutoff.
    pub fn transform(&self, t: f64) -> f64 {
        let mut acc = Kahan::default();
        for &(z, j) in &self.nodes {
            acc.add(j * (2.0 * PI * t * z).cos());
        }
        2.0 * self.step * acc.value()
    }
}

/// `K^(t)` for the Fejér kernel `(sin(pi z)/(pi z))^2`, by the same rule with
/// the `1/(pi^2 z^2)` tail integrated analytically.
pub fn fejer_transform(t: f64, cutoff: f64) -> f64 {
    let step = 0.25;
    let count = (cutoff / step) as usize;
    let mut acc = Kahan::default();
    for k in 0..count {
        let z = (k as f64 + 0.5) * step;
        let kz = ((PI * z).sin() / (PI * z)).powi(2);
        acc.add(kz * (2.0 * PI * t * z).cos());
    }
    // Beyond L the kernel averages to 1/(2 pi^2 z^2), whose mean against
    // cos(2 pi t z) is nonzero only for t = 0 and |t| = 1.
    let l = count as f64 * step;
    let c0 = if t == 0.0 {
        1.0
    } else if (t.abs() - 1.0).abs() < 1e-12 {
        -0.5
    } else {
        0.0
    };
    2.0 * (step * acc.value() + c0 / (2.0 * PI * PI * l))
}
