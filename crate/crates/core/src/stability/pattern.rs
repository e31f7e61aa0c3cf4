use rand::Rng;
use serde::Serialize;

use super::Severity;
use crate::exterior::{AlternatingForm, GroupElement, PAIRS};
use crate::linsys::LinearSystem;
use crate::sample;
use crate::scalars::{Field, Rational, Ring};
use crate::{Error, Result};

/// Weights of a diagonal one-parameter subgroup `diag(t^λ1, …, t^λ6)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OnePS {
    weights: [i64; 6],
}

impl OnePS {
    /// Weights must be non-increasing, sum to zero and not all vanish.
    pub fn new(weights: [i64; 6]) -> Result<Self> {
        if weights.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition("weights must be non-increasing".into()));
        }
        if weights.iter().sum::<i64>() != 0 || weights.iter().all(|&w| w == 0) {
            return Err(Error::Precondition("weights must sum to zero and not all vanish".into()));
        }
        Ok(OnePS { weights })
    }

    pub fn weights(&self) -> [i64; 6] {
        self.weights
    }

    /// `(6−s, …, 6−s, −1, …, −1, s−7, …, s−7)` with blocks of sizes `s`, `7−2s`, `s−1`.
    pub fn unstable_family(s: usize) -> Self {
        assert!((1..=3).contains(&s), "s must be 1, 2 or 3");
        let s_i = s as i64;
        let w = std::array::from_fn(|i| {
            if i < s {
                6 - s_i
            } else if i < 7 - s {
                -1
            } else {
                s_i - 7
            }
        });
        OnePS::new(w).expect("valid family")
    }

    /// `(1, …, 1, 0, …, 0, −1, …, −1)` with blocks of sizes `s`, `6−2s`, `s`.
    pub fn nonstable_family(s: usize) -> Self {
        assert!((1..=3).contains(&s), "s must be 1, 2 or 3");
        let w = std::array::from_fn(|i| {
            if i < s {
                1
            } else if i < 6 - s {
                0
            } else {
                -1
            }
        });
        OnePS::new(w).expect("valid family")
    }
}

/// Behaviour of `λ(t)·A` as `t → ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitClass {
    Diverges,
    BoundedNonzeroLimit,
    LimitZero,
}

pub fn one_ps_limit_class<F: Field>(a: &LinearSystem<F>, l: &OnePS) -> LimitClass {
    let w = l.weights;
    let top = a
        .generators()
        .iter()
        .flat_map(|g| g.coeffs().iter().zip(PAIRS.iter()))
        .filter(|(c, _)| !c.is_zero())
        .map(|(_, &(i, j))| w[i] + w[j])
        .max();
    match top {
        Some(m) if m > 0 => LimitClass::Diverges,
        Some(0) => LimitClass::BoundedNonzeroLimit,
        _ => LimitClass::LimitZero,
    }
}

/// Strongest zero pattern matched by `g·A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternMatch {
    None,
    Nonstable,
    Unstable,
}

/// Whether the pattern for `(s, severity)` forces the 0-based entry `(i, j)`, `i < j`, to vanish.
pub fn pattern_forces_zero(s: usize, severity: Severity, i: usize, j: usize) -> bool {
    let bound = match severity {
        Severity::Nonstable => 6 - s,
        Severity::Unstable => 7 - s,
    };
    i < s && j < bound
}

fn matches<F: Field>(a: &LinearSystem<F>, s: usize, severity: Severity) -> bool {
    a.generators().iter().all(|g| {
        PAIRS
            .iter()
            .zip(g.coeffs())
            .all(|(&(i, j), c)| c.is_zero() || !pattern_forces_zero(s, severity, i, j))
    })
}

pub fn zero_pattern_check<F: Field>(a: &LinearSystem<F>, g: &GroupElement<F>, s: usize) -> PatternMatch {
    assert!((1..=3).contains(&s), "s must be 1, 2 or 3");
    let b = a.act(g);
    if matches(&b, s, Severity::Unstable) {
        PatternMatch::Unstable
    } else if matches(&b, s, Severity::Nonstable) {
        PatternMatch::Nonstable
    } else {
        PatternMatch::None
    }
}

/// Random system with `ngens` generators whose entries respect the `(s, severity)` zero pattern.
pub fn pattern_fill<R: Rng>(rng: &mut R, s: usize, severity: Severity, ngens: usize, bound: i64) -> LinearSystem<Rational> {
    loop {
        let gens: Vec<AlternatingForm<Rational>> = (0..ngens)
            .map(|_| {
                AlternatingForm::from_coeffs(std::array::from_fn(|k| {
                    let (i, j) = PAIRS[k];
                    if pattern_forces_zero(s, severity, i, j) {
                        Rational::zero()
                    } else {
                        sample::random_int(rng, bound)
                    }
                }))
            })
            .collect();
        if let Ok(a) = LinearSystem::new(gens) {
            return a;
        }
    }
}
