//! Named representatives: the constant-rank-4 planes, the stable systems in dimensions
//! 3, 4 and 5, and two skew matrices of linear forms in five variables.

mod beta;
mod verify;

use serde::Serialize;

use crate::exterior::AlternatingForm;
use crate::linsys::{IntersectionType, LinearSystem};
use crate::planes::{self, form, PlaneOrbit};
use crate::scalars::Rational;
use crate::stability::VerdictTag;
use crate::{Error, Result};

pub use beta::{beta_orbit, beta_rank_locus, BetaMatrix, BetaOrbit, BetaRankReport};
pub use verify::{verify_suite, verify_theorem, Claim, TheoremReport, THEOREMS};

/// What the pipeline is expected to report for a named system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub verdict: VerdictTag,
    pub intersection: IntersectionType,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit: Option<PlaneOrbit>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedSystem {
    pub name: &'static str,
    pub system: LinearSystem<Rational>,
    pub expected: Expected,
}

pub const NAMES: [&str; 10] = [
    "pi_g", "pi_t", "pi_p", "pi_5", "thm_dim3", "thm_dim4a", "thm_dim4b", "thm_dim5", "beta_conic", "beta_lines",
];

pub fn names() -> &'static [&'static str] {
    &NAMES
}

/// `(a_1 e1 + … + a_6 e6) ∧ (b_1 e1 + … + b_6 e6)` from sparse 1-based covectors.
fn wedge(x: &[(usize, i64)], y: &[(usize, i64)]) -> AlternatingForm<Rational> {
    let vec = |v: &[(usize, i64)]| {
        let mut out = [0i64; 6];
        for &(i, c) in v {
            out[i - 1] = c;
        }
        out.map(Rational::integer)
    };
    AlternatingForm::wedge(&vec(x), &vec(y))
}

/// `π_g` followed by the given extra generators.
fn general_plus(extra: Vec<AlternatingForm<Rational>>) -> LinearSystem<Rational> {
    let mut gens = planes::pi_g().generators().to_vec();
    gens.extend(extra);
    LinearSystem::new(gens).expect("independent representative")
}

/// `(e1 − e5)`, `(e2 + e4)` and `(e3 + e6)`.
const E1_MINUS_E5: &[(usize, i64)] = &[(1, 1), (5, -1)];
const E2_PLUS_E4: &[(usize, i64)] = &[(2, 1), (4, 1)];
const E3_PLUS_E6: &[(usize, i64)] = &[(3, 1), (6, 1)];

pub fn builtin(name: &str) -> Result<NamedSystem> {
    use IntersectionType as I;
    use VerdictTag as V;
    let plane = |o: PlaneOrbit, verdict| (o.normal_form(), Expected { verdict, intersection: I::Empty, orbit: Some(o) });
    let stable = |system, intersection| (system, Expected { verdict: V::Stable, intersection, orbit: None });
    let (system, expected) = match name {
        "pi_g" => plane(PlaneOrbit::General, V::StrictlySemistable),
        "pi_t" => plane(PlaneOrbit::Tangent, V::Unstable),
        "pi_p" => plane(PlaneOrbit::Pencil, V::Unstable),
        "pi_5" => plane(PlaneOrbit::Hyperplane, V::Unstable),
        "thm_dim3" => stable(general_plus(vec![wedge(E1_MINUS_E5, E2_PLUS_E4)]), I::TwoPoints),
        "thm_dim4a" => stable(general_plus(vec![form(&[(1, 2, 1)]), form(&[(4, 5, 1)])]), I::Conic),
        "thm_dim4b" => stable(
            general_plus(vec![wedge(E1_MINUS_E5, E2_PLUS_E4), wedge(E1_MINUS_E5, E3_PLUS_E6)]),
            I::TwoLines,
        ),
        "thm_dim5" => stable(
            general_plus(vec![
                wedge(E1_MINUS_E5, E2_PLUS_E4),
                wedge(E1_MINUS_E5, E3_PLUS_E6),
                wedge(E2_PLUS_E4, E3_PLUS_E6),
            ]),
            I::TwoPlanes,
        ),
        "beta_conic" => stable(BetaMatrix::conic().system().clone(), I::Conic),
        "beta_lines" => stable(BetaMatrix::lines().system().clone(), I::TwoLines),
        other => return Err(Error::UnknownName(other.to_string())),
    };
    let name = NAMES.iter().copied().find(|n| *n == name).expect("listed name");
    Ok(NamedSystem { name, system, expected })
}
