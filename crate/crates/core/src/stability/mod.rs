//! Stability of linear systems under SL(W): one-parameter subgroups, zero patterns,
//! destabilizing witnesses, finite-field searches and the decision pipeline.

mod decide;
mod exact;
mod pattern;
mod search;
mod witness;

pub use decide::{decide_stability, DecideOptions, DecisionPath, Evidence, StabilityVerdict, VerdictTag};
pub use exact::{isotropic3_candidates_for_pi_g, isotropic3_on_kernels};
pub use pattern::{
    one_ps_limit_class, pattern_fill, pattern_forces_zero, zero_pattern_check, LimitClass, OnePS, PatternMatch,
};
pub use search::{search_s1, search_s2_unstable, search_s3, FpWitness, SearchKind, SearchOutcome};
pub use witness::{verify_witness, DestabilizingWitness, Severity};
