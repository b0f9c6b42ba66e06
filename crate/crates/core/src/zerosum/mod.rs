//! Sequences over `Z/n`: zero-sum and minimality predicates, the index,
//! enumeration of minimal quadruples and conjecture verification.

mod enumerate;
mod sequence;
mod verify;

pub use enumerate::{enumerate_minimal_quadruples, enumerate_normalized_quadruples};
pub use sequence::{GOrder, ZSequence};
pub use verify::{
    verify_conjecture, verify_range, AttemptStats, RangeOptions, VerifyMode, VerifyReport, Witness,
};

use crate::arith::Modulus;

/// Outcome of checking the half-interval structure of index-2 sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureCheck {
    /// No minimal coprime quadruple of index 2 exists, so nothing was tested.
    Vacuous,
    /// Every index-2 sequence had exactly two of `(g a_j)_n` in `(0, n/2)`
    /// for every unit `g`.
    Holds { sequences: usize },
    /// A sequence and unit with a different count.
    Fails { seq: Vec<u64>, g: u64, count: usize },
}

/// For every minimal quadruple with unit entries and index 2, and every unit
/// `g`, count the entries of `g*S` lying in `(0, n/2)`; that count must be
/// exactly two.
pub fn check_half_structure(m: &Modulus) -> StructureCheck {
    let mut sequences = 0;
    for s in enumerate_minimal_quadruples(m, true) {
        if s.index().expect("zero-sum by construction") != 2 {
            continue;
        }
        sequences += 1;
        for g in m.units() {
            let count = s.count_in_lower_half(g);
            if count != 2 {
                return StructureCheck::Fails {
                    seq: s.entries().to_vec(),
                    g: g.value(),
                    count,
                };
            }
        }
    }
    if sequences == 0 {
        StructureCheck::Vacuous
    } else {
        StructureCheck::Holds { sequences }
    }
}
