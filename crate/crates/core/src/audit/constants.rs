//! Recomputation of every numerical constant in the lower-bound chain.

use std::f64::consts::PI;

use serde::Serialize;

use super::starsum::{t_sum_coefficient, STARSUM_ENVELOPE};
use crate::approx::FourierSmoother;
use crate::arith::gcd;

/// The smoothing degree used for the final bound.
pub const CHAIN_H: u64 = 13_020;
/// The lower-bound constant after the envelope term is removed.
pub const C1: f64 = 0.001;
/// The `phi(n)/sqrt(n)` threshold that makes the bound positive.
pub const PHI_RATIO_THRESHOLD: f64 = 1.1e9;
/// The modulus beyond which the threshold is guaranteed.
pub const N_THRESHOLD: f64 = 1e20;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `c0 = 1/8 - (0.07926 + 2/12) / 2`.
pub fn c0() -> f64 {
    0.125 - 0.5 * (STARSUM_ENVELOPE + 2.0 / 12.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    Below { bound: f64 },
    Above { bound: f64 },
    Exact { value: f64 },
    Within { lo: f64, hi: f64 },
}

impl Claim {
    /// Distance to the nearest violated boundary; zero for exact claims.
    pub fn margin(&self, value: f64) -> f64 {
        match *self {
            Claim::Below { bound } => bound - value,
            Claim::Above { bound } => value - bound,
            Claim::Exact { value: v } => 0.0 - (value - v).abs(),
            Claim::Within { lo, hi } => (value - lo).min(hi - value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LedgerEntry {
    pub symbol: &'static str,
    pub description: &'static str,
    pub value: f64,
    pub claim: Claim,
    pub margin: f64,
    pub satisfied: bool,
}

impl LedgerEntry {
    fn new(symbol: &'static str, description: &'static str, value: f64, claim: Claim) -> Self {
        let margin = claim.margin(value);
        let satisfied = match claim {
            Claim::Exact { .. } => margin == 0.0,
            _ => margin > 0.0,
        };
        Self {
            symbol,
            description,
            value,
            claim,
            margin,
            satisfied,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantsLedger {
    pub entries: Vec<LedgerEntry>,
}

impl ConstantsLedger {
    pub fn get(&self, symbol: &str) -> Option<&LedgerEntry> {
        self.entries.iter().find(|e| e.symbol == symbol)
    }

    pub fn all_satisfied(&self) -> bool {
        self.entries.iter().all(|e| e.satisfied)
    }
}

/// Explicit lower bound `phi(n) >= n / (e^gamma ln ln n + 3 / ln ln n)`,
/// valid for all `n >= 3`, divided by `sqrt(n)`.
pub fn phi_ratio_lower_bound(n: f64) -> f64 {
    let ll = n.ln().ln();
    n.sqrt() / (EULER_GAMMA.exp() * ll + 3.0 / ll)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdCheck {
    pub guaranteed: bool,
    pub bound_value: f64,
}

/// Whether the totient bound certifies `phi(n)/sqrt(n) > 1.1e9`.
pub fn phi_threshold_check(n: u128) -> ThresholdCheck {
    let bound_value = phi_ratio_lower_bound(n.max(3) as f64);
    ThresholdCheck {
        guaranteed: bound_value > PHI_RATIO_THRESHOLD,
        bound_value,
    }
}

/// The terms of `c1 phi(n) >= (3/2) T sqrt(2 H^2 n) + 20.02 sqrt(2Hn) + 7H`
/// after dividing by `sqrt(n)`: `c1 t >= linear + tail / sqrt(n)`.
fn threshold_terms(h: f64) -> (f64, f64) {
    let linear = 1.5 * t_sum_coefficient(h as u64) * (2.0f64).sqrt() * h + 20.02 * (2.0 * h).sqrt();
    (linear, 7.0 * h)
}

/// Smallest `t = phi(n)/sqrt(n)` for which the lower bound is non-negative.
/// Since `phi(n) <= n`, `sqrt(n) >= t`, so the `7H/sqrt(n)` term is at most
/// `7H/t`; the root of `c1 t^2 - linear t - 7H = 0` is therefore sufficient.
pub fn minimal_phi_ratio(h: u64, c1: f64) -> f64 {
    let (linear, tail) = threshold_terms(h as f64);
    (linear + (linear * linear + 4.0 * c1 * tail).sqrt()) / (2.0 * c1)
}

/// Smallest real `n` with `phi_ratio_lower_bound(n) >= threshold`, by
/// bisection on `log10 n`. The bound is increasing for `n >= 100`.
pub fn minimal_certified_modulus(threshold: f64) -> f64 {
    let (mut lo, mut hi) = (2.0f64, 40.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if phi_ratio_lower_bound(10f64.powf(mid)) >= threshold {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    10f64.powf(hi)
}

fn reduced(num: u64, den: u64) -> (u64, u64) {
    let g = gcd(num, den);
    (num / g, den / g)
}

pub fn constants_ledger() -> ConstantsLedger {
    let pi2 = PI * PI;
    let env = STARSUM_ENVELOPE;

    let case1 = 2.0 / pi2 * (pi2 / 8.0 - 1.0);
    let subcase1 = 2.0 / pi2 * (pi2 / 8.0) * (1.0 / 5.0);
    let subcase2 = 2.0 * (1.0 / pi2) * 0.25
        + 2.0 * (1.0 / (9.0 * pi2)) * 0.25
        + 2.0 * (1.0 / (81.0 * pi2)) * 0.25
        + 2.0 / pi2 * (pi2 / 8.0 - 1.0 - 1.0 / 9.0 - 1.0 / 81.0);

    // 2 * (1/pi^2) * (1/3) * (pi^2/8): the pi^2 cancels, leaving 2/(3*8).
    let (num, den) = reduced(2, 3 * 8);
    let relation_sum_float = 2.0 * (1.0 / pi2) * (1.0 / 3.0) * (pi2 / 8.0);
    let relation_sum =
        if (num, den) == (1, 12) && (relation_sum_float - 1.0 / 12.0).abs() < 4.0 * f64::EPSILON {
            num as f64 / den as f64
        } else {
            relation_sum_float
        };

    let c0 = c0();
    let h = CHAIN_H as f64;
    let c1 = c0 - 13.02 / h;
    let smoother = FourierSmoother::new(CHAIN_H).expect("H > 0");
    let coefficient_sq = smoother.abs_coefficient_sum().powi(2);
    let t_min = minimal_phi_ratio(CHAIN_H, C1);
    let at_threshold = phi_ratio_lower_bound(N_THRESHOLD);
    let n_min = minimal_certified_modulus(PHI_RATIO_THRESHOLD);

    let entries = vec![
        LedgerEntry::new(
            "case1",
            "(2/pi^2)(pi^2/8 - 1): starred sum with no pair of absolute value 1",
            case1,
            Claim::Below { bound: env },
        ),
        LedgerEntry::new(
            "subcase1",
            "(2/pi^2)(pi^2/8)(1/5): 1* a multiple of n with |1*| >= 5",
            subcase1,
            Claim::Below { bound: env },
        ),
        LedgerEntry::new(
            "subcase2",
            "1/(2pi^2) + 1/(18pi^2) + 1/(162pi^2) + (2/pi^2)(pi^2/8 - 1 - 1/9 - 1/81)",
            subcase2,
            Claim::Below { bound: env },
        ),
        LedgerEntry::new(
            "starsum_envelope",
            "largest of the three case bounds",
            case1.max(subcase1).max(subcase2),
            Claim::Below { bound: env },
        ),
        LedgerEntry::new(
            "relation_sum",
            "2(1/pi^2)(1/3)(pi^2/8): starred sum under a 3A+-1 or A+-3 relation",
            relation_sum,
            Claim::Exact { value: 1.0 / 12.0 },
        ),
        LedgerEntry::new(
            "c0",
            "1/8 - (0.07926 + 2/12)/2",
            c0,
            Claim::Within { lo: 0.002, hi: 0.0021 },
        ),
        LedgerEntry::new(
            "H",
            "smoothing degree 13.02e3, inside the H > 1000 validity range",
            h,
            Claim::Above { bound: 1000.0 },
        ),
        LedgerEntry::new("c1", "c0 - 13.02/H at H = 13020", c1, Claim::Above { bound: C1 }),
        LedgerEntry::new(
            "tsum_coefficient",
            "(sum_{0<|h|<=H} |f^(h)|)^2 at H = 13020 against (2 log H / pi)^2",
            coefficient_sq,
            Claim::Below {
                bound: t_sum_coefficient(CHAIN_H),
            },
        ),
        LedgerEntry::new(
            "phi_ratio_min",
            "smallest phi(n)/sqrt(n) making c1 phi(n) - (3/2)T sqrt(2H^2 n) - 20.02 sqrt(2Hn) - 7H >= 0",
            t_min,
            Claim::Below {
                bound: PHI_RATIO_THRESHOLD,
            },
        ),
        LedgerEntry::new(
            "phi_ratio_at_N",
            "sqrt(N)/(e^gamma ln ln N + 3/ln ln N) at N = 1e20",
            at_threshold,
            Claim::Above {
                bound: PHI_RATIO_THRESHOLD,
            },
        ),
        LedgerEntry::new(
            "N",
            "smallest n certified by the totient bound to have phi(n)/sqrt(n) >= 1.1e9",
            n_min,
            Claim::Below { bound: N_THRESHOLD },
        ),
    ];
    ConstantsLedger { entries }
}
