//! Instance-level audits of every inequality in the lower-bound argument,
//! each reported with explicit margins.

mod constants;
mod relations;
mod report;
mod starsum;
mod sums;
mod theorem;

pub use constants::{
    c0, constants_ledger, minimal_certified_modulus, minimal_phi_ratio, phi_ratio_lower_bound,
    phi_threshold_check, Claim, ConstantsLedger, LedgerEntry, ThresholdCheck, C1, CHAIN_H,
    N_THRESHOLD, PHI_RATIO_THRESHOLD,
};
pub use relations::{
    audit_relation, combo_occurs_mod, relation_eliminator, Elimination, RelationCombo, RelationForm,
};
pub use report::{inputs, AuditReport, AUDIT_EPSILON};
pub use starsum::{
    audit_kstar, audit_star_sum, classify_relation, kstar, kstar_scan, large_gcd_multipliers,
    large_gcd_shifts, star_sum, t_sum_bound, t_sum_coefficient, KStarFinder, StarRelation, StarSum,
    TSumBound, STARSUM_ENVELOPE, STARSUM_RELATION_ENVELOPE,
};
pub use sums::{
    audit_s0_s1, compute_s0, compute_s1_direct, compute_s1_spectral, count_triple_in_i,
    s0_s1_envelope, S0_S1_MIN_H,
};
pub use theorem::{
    hypothesis_violation, lower_bound_expression, theorem_hypotheses, theorem_lower_bound,
};
