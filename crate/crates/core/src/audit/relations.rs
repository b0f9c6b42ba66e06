//! Elimination of `a, b` from three linear congruences on the pairs
//! `(1, a)`, `(1, b)`, `(a, b)`.
//!
//! Each congruence is a row of integer coefficients on `(a, b, 1)`. If
//! `M (a, b, 1)^T = 0 mod n` then multiplying by the adjugate gives
//! `det(M) = 0 mod n`, so `n` divides `D = |det M|`.

use serde_json::json;

use super::report::{inputs, AuditReport};
use crate::arith::{gcd, Modulus};

/// One of the four relation forms on an ordered pair `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationForm {
    XPlus3Y,
    XMinus3Y,
    ThreeXPlusY,
    ThreeXMinusY,
}

impl RelationForm {
    pub const ALL: [RelationForm; 4] = [
        RelationForm::XPlus3Y,
        RelationForm::XMinus3Y,
        RelationForm::ThreeXPlusY,
        RelationForm::ThreeXMinusY,
    ];

    /// Coefficients `(cx, cy)` in `cx*x + cy*y`.
    pub fn coefficients(self) -> (i64, i64) {
        match self {
            RelationForm::XPlus3Y => (1, 3),
            RelationForm::XMinus3Y => (1, -3),
            RelationForm::ThreeXPlusY => (3, 1),
            RelationForm::ThreeXMinusY => (3, -1),
        }
    }

    pub fn is_plus(self) -> bool {
        matches!(self, RelationForm::XPlus3Y | RelationForm::ThreeXPlusY)
    }

    fn symbol(self) -> &'static str {
        match self {
            RelationForm::XPlus3Y => "x+3y",
            RelationForm::XMinus3Y => "x-3y",
            RelationForm::ThreeXPlusY => "3x+y",
            RelationForm::ThreeXMinusY => "3x-y",
        }
    }
}

/// The pairs, as linear forms on `(a, b, 1)`.
const PAIRS: [([i64; 3], [i64; 3], &str, &str); 3] = [
    ([0, 0, 1], [1, 0, 0], "1", "a"),
    ([0, 0, 1], [0, 1, 0], "1", "b"),
    ([1, 0, 0], [0, 1, 0], "a", "b"),
];

/// A choice of relation for each of `(1, a)`, `(1, b)`, `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RelationCombo {
    pub forms: [RelationForm; 3],
}

impl RelationCombo {
    pub fn new(forms: [RelationForm; 3]) -> Self {
        Self { forms }
    }

    /// All 64 combinations.
    pub fn all() -> Vec<RelationCombo> {
        let mut out = Vec::with_capacity(64);
        for f0 in RelationForm::ALL {
            for f1 in RelationForm::ALL {
                for f2 in RelationForm::ALL {
                    out.push(RelationCombo::new([f0, f1, f2]));
                }
            }
        }
        out
    }

    /// Combinations using only `x + 3y` and `3x + y`.
    pub fn plus_family() -> Vec<RelationCombo> {
        Self::all()
            .into_iter()
            .filter(|c| c.is_plus_family())
            .collect()
    }

    pub fn is_plus_family(&self) -> bool {
        self.forms.iter().all(|f| f.is_plus())
    }

    /// Coefficient rows on `(a, b, 1)`.
    pub fn rows(&self) -> [[i64; 3]; 3] {
        let mut rows = [[0i64; 3]; 3];
        for (row, (form, (x, y, _, _))) in rows.iter_mut().zip(self.forms.iter().zip(PAIRS.iter()))
        {
            let (cx, cy) = form.coefficients();
            for j in 0..3 {
                row[j] = cx * x[j] + cy * y[j];
            }
        }
        rows
    }

    /// Concrete congruences, e.g. `3+a, 1+3b, 3a+b`.
    pub fn label(&self) -> String {
        self.forms
            .iter()
            .zip(PAIRS.iter())
            .map(|(form, (_, _, x, y))| {
                let (cx, cy) = form.coefficients();
                let term = |c: i64, v: &str| match (c.abs(), v) {
                    (1, v) => v.to_string(),
                    (c, "1") => c.to_string(),
                    (c, v) => format!("{c}{v}"),
                };
                let sign = if cy < 0 { '-' } else { '+' };
                format!("{}{sign}{}", term(cx, x), term(cy, y))
            })
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Generic form labels, e.g. `3x+y, x+3y, 3x+y`.
    pub fn form_label(&self) -> String {
        self.forms
            .iter()
            .map(|f| f.symbol())
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Whether `(a, b)` satisfies all three congruences modulo `d`.
    pub fn satisfied_by(&self, a: i64, b: i64, d: u64) -> bool {
        self.rows().iter().all(|r| {
            let v = i128::from(r[0]) * i128::from(a)
                + i128::from(r[1]) * i128::from(b)
                + i128::from(r[2]);
            v.rem_euclid(i128::from(d)) == 0
        })
    }
}

fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub combo: RelationCombo,
    /// `|det|` of the coefficient matrix; any admissible `n` divides it.
    pub d: u64,
    /// False for combos using `x - 3y` or `3x - y`, which are excluded
    /// beforehand by the degenerate-family argument.
    pub feasible: bool,
    /// The part of `D` coprime to 6. Admissible moduli are coprime to 6, so
    /// `n | D` exactly when `n | d_coprime_six`.
    pub d_coprime_six: u64,
    /// A solution `(a, b)` of the system modulo `d_coprime_six`.
    pub solution: Option<(i64, i64)>,
}

impl Elimination {
    pub fn consistent(&self) -> bool {
        self.solution.is_some()
    }

    /// Divisors of `D` that are at least 5 and coprime to 6: the only moduli
    /// for which this combination can occur.
    pub fn admissible_moduli(&self) -> Vec<u64> {
        (5..=self.d_coprime_six)
            .filter(|&n| self.d_coprime_six.is_multiple_of(n) && gcd(n, 6) == 1)
            .collect()
    }
}

pub fn relation_eliminator(combo: RelationCombo) -> Elimination {
    let d = det3(combo.rows()).unsigned_abs();
    let mut d6 = d;
    for p in [2, 3] {
        while d6 != 0 && d6.is_multiple_of(p) {
            d6 /= p;
        }
    }
    let solution = if d6 == 0 {
        None
    } else {
        let m = d6 as i64;
        (0..m)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .find(|&(a, b)| combo.satisfied_by(a, b, d6))
    };
    Elimination {
        combo,
        d,
        feasible: combo.is_plus_family(),
        d_coprime_six: d6,
        solution,
    }
}

pub fn audit_relation(combo: RelationCombo) -> AuditReport {
    let e = relation_eliminator(combo);
    let base = inputs([
        ("combo", json!(combo.label())),
        ("forms", json!(combo.form_label())),
        ("feasible", json!(e.feasible)),
        ("D", json!(e.d)),
        ("D_coprime_six", json!(e.d_coprime_six)),
    ]);
    if !e.feasible {
        return AuditReport::new("relations", base, 0.0, 0.0).with_note(
            "excluded: a minus-form relation forces the index-1 family (1)(3)(n-2)(n-2)",
        );
    }
    // rhs = D when the system is consistent modulo its admissible part
    let rhs = if e.consistent() { e.d as f64 } else { 0.0 };
    let mut note = match e.solution {
        Some((a, b)) => format!("solution mod {}: a={a} b={b}", e.d_coprime_six),
        None => format!("no solution modulo {}", e.d_coprime_six),
    };
    note.push_str(&format!("; admissible n | D: {:?}", e.admissible_moduli()));
    AuditReport::new("relations", base, 1.0, rhs).with_note(note)
}

/// Does `Modulus` `m` admit a triple `(1, a, b)` realising this combo?
pub fn combo_occurs_mod(combo: RelationCombo, m: &Modulus) -> bool {
    let n = m.n() as i64;
    (1..n).any(|a| (1..n).any(|b| combo.satisfied_by(a, b, m.n())))
}
