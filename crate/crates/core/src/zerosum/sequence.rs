use crate::arith::{gcd, mul_mod, Modulus, Unit};
use crate::error::{Error, Result};

/// Order in which units are tried by [`ZSequence::has_index_one`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GOrder {
    /// Ascending units, stopping at the first `g` with unit-sum `n`.
    #[default]
    EarlyExit,
    /// Evaluate every unit and compare the minimum against 1.
    FullScan,
}

/// A sequence `(a_1)...(a_k)` over `Z/n` with entries in `[1, n-1]`,
/// stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZSequence<'m> {
    modulus: &'m Modulus,
    entries: Vec<u64>,
}

impl<'m> ZSequence<'m> {
    pub fn new(modulus: &'m Modulus, mut entries: Vec<u64>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::SequenceTooShort {
                min: 2,
                got: entries.len(),
            });
        }
        let max = modulus.n() - 1;
        if let Some(&entry) = entries.iter().find(|&&e| e == 0 || e > max) {
            return Err(Error::EntryOutOfRange { entry, max });
        }
        entries.sort_unstable();
        Ok(Self { modulus, entries })
    }

    pub(crate) fn from_sorted_unchecked(modulus: &'m Modulus, entries: Vec<u64>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0] <= w[1]));
        Self { modulus, entries }
    }

    pub fn modulus(&self) -> &'m Modulus {
        self.modulus
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn has_coprime_entries(&self) -> bool {
        self.entries.iter().all(|&e| gcd(e, self.modulus.n()) == 1)
    }

    pub fn is_zero_sum(&self) -> bool {
        let n = u128::from(self.modulus.n());
        self.entries.iter().map(|&e| u128::from(e)).sum::<u128>() % n == 0
    }

    fn require_zero_sum(&self) -> Result<()> {
        if self.is_zero_sum() {
            Ok(())
        } else {
            Err(Error::NotZeroSum {
                n: self.modulus.n(),
            })
        }
    }

    /// No nonempty proper subsequence sums to zero.
    pub fn is_minimal(&self) -> Result<bool> {
        self.require_zero_sum()?;
        Ok(no_proper_zero_subsum(&self.entries, self.modulus.n()))
    }

    /// `sum_j (g a_j)_n`, always a multiple of `n` for zero-sum sequences.
    pub fn unit_sum(&self, g: Unit<'_>) -> u64 {
        self.entries.iter().map(|&e| g.scale(e)).sum()
    }

    /// The index together with the smallest unit attaining it.
    pub fn index_with_witness(&self) -> Result<(u64, Unit<'m>)> {
        self.require_zero_sum()?;
        let n = self.modulus.n();
        let mut best: Option<(u64, Unit<'m>)> = None;
        for g in self.modulus.units() {
            let s = self.unit_sum(g);
            if best.is_none_or(|(b, _)| s < b) {
                best = Some((s, g));
            }
            if s == n {
                break;
            }
        }
        let (s, g) = best.expect("every modulus has the unit 1");
        Ok((s / n, g))
    }

    /// `ind(S) = min over units g of (1/n) sum_j (g a_j)_n`.
    pub fn index(&self) -> Result<u64> {
        self.index_with_witness().map(|(i, _)| i)
    }

    pub fn has_index_one(&self, order: GOrder) -> Result<bool> {
        self.require_zero_sum()?;
        match order {
            GOrder::EarlyExit => {
                let n = self.modulus.n();
                Ok(self.modulus.units().any(|g| self.unit_sum(g) == n))
            }
            GOrder::FullScan => Ok(self.index()? == 1),
        }
    }

    /// `g * S`, entrywise multiplication by a unit.
    pub fn scaled(&self, g: Unit<'_>) -> ZSequence<'m> {
        let mut entries: Vec<u64> = self.entries.iter().map(|&e| g.scale(e)).collect();
        entries.sort_unstable();
        ZSequence {
            modulus: self.modulus,
            entries,
        }
    }

    /// Exactly two of the `(g a_j)_n` lie strictly inside `(0, n/2)`.
    pub fn exactly_two_in_half(&self, g: Unit<'_>) -> bool {
        self.count_in_lower_half(g) == 2
    }

    pub fn count_in_lower_half(&self, g: Unit<'_>) -> usize {
        let n = self.modulus.n();
        self.entries
            .iter()
            .map(|&e| g.scale(e))
            .filter(|&r| r > 0 && 2 * r < n)
            .count()
    }
}

impl std::fmt::Display for ZSequence<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for e in &self.entries {
            write!(f, "({e})")?;
        }
        write!(f, " mod {}", self.modulus.n())
    }
}

/// Whether no nonempty proper sub-multiset of `entries` sums to 0 mod `n`.
pub(crate) fn no_proper_zero_subsum(entries: &[u64], n: u64) -> bool {
    let k = entries.len();
    if k <= 16 {
        let full = (1u32 << k) - 1;
        return (1..full).all(|mask| {
            let s: u128 = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| u128::from(entries[i]))
                .sum();
            !s.is_multiple_of(u128::from(n))
        });
    }
    // For a zero-sum sequence a proper zero subsum exists iff some nonempty
    // subset of the first k-1 entries sums to zero (take the complement when
    // the subset contains the last entry).
    let n_us = n as usize;
    let mut reach = vec![false; n_us];
    for &e in &entries[..k - 1] {
        let e = (e % n) as usize;
        let prev = reach.clone();
        for (r, _) in prev.iter().enumerate().filter(|(_, &hit)| hit) {
            reach[(r + e) % n_us] = true;
        }
        reach[e] = true;
        if reach[0] {
            return false;
        }
    }
    true
}

/// Minimality for a zero-sum quadruple: all 14 nonempty proper subsets.
#[inline]
pub(crate) fn quad_is_minimal(q: &[u64; 4], n: u64) -> bool {
    (1u32..15).all(|mask| {
        let s: u64 = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| q[i]).sum();
        !s.is_multiple_of(n)
    })
}

/// Ascending early-exit search for a unit with unit-sum `n`. Returns the
/// number of units tried on success.
#[inline]
pub(crate) fn quad_index_one(q: &[u64; 4], n: u64, units: &[u64]) -> Option<u64> {
    for (i, &g) in units.iter().enumerate() {
        let s =
            mul_mod(g, q[0], n) + mul_mod(g, q[1], n) + mul_mod(g, q[2], n) + mul_mod(g, q[3], n);
        if s == n {
            return Some(i as u64 + 1);
        }
    }
    None
}
