use rand::Rng;
use serde::Serialize;

use crate::exterior::AlternatingForm;
use crate::linsys::{gr_intersection, IntersectionType, LinearSystem};
use crate::planes::form;
use crate::sample;
use crate::scalars::{MultiPoly, Rational, DEFAULT_PRIMES};
use crate::{Error, Result};

/// A 6×6 skew matrix of linear forms in `X_0..X_4`, stored as the five coefficient forms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetaMatrix {
    system: LinearSystem<Rational>,
}

impl BetaMatrix {
    pub fn from_system(system: LinearSystem<Rational>) -> Result<Self> {
        if system.dim() != 5 {
            return Err(Error::Precondition(format!("expected 5 coefficient forms, got {}", system.dim())));
        }
        Ok(BetaMatrix { system })
    }

    /// Rank 2 exactly along the conic `X3 = X4 = X1² − X0·X2 = 0`.
    pub fn conic() -> Self {
        let gens = vec![
            form(&[(4, 6, 1)]),
            form(&[(3, 6, -1), (4, 5, -1)]),
            form(&[(3, 5, 1)]),
            form(&[(1, 6, -1), (2, 5, 1)]),
            form(&[(1, 4, 1), (2, 3, -1)]),
        ];
        BetaMatrix { system: LinearSystem::new(gens).expect("independent") }
    }

    /// Rank 2 exactly along the lines `X0 = X1 = X2 = 0` and `X2 = X3 = X4 = 0`.
    pub fn lines() -> Self {
        let gens = vec![
            form(&[(2, 3, 1)]),
            form(&[(1, 3, -1)]),
            form(&[(1, 2, 1), (5, 6, 1)]),
            form(&[(4, 6, -1)]),
            form(&[(4, 5, 1)]),
        ];
        BetaMatrix { system: LinearSystem::new(gens).expect("independent") }
    }

    pub fn system(&self) -> &LinearSystem<Rational> {
        &self.system
    }

    pub fn matrix(&self) -> Vec<Vec<MultiPoly<Rational>>> {
        self.system.matrix_of_linear_forms()
    }

    pub fn pfaffian(&self) -> MultiPoly<Rational> {
        self.system.pfaffian_cubic()
    }

    /// The matrix at a point of P⁴.
    pub fn at(&self, x: &[Rational; 5]) -> AlternatingForm<Rational> {
        self.system.combination(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BetaOrbit {
    ConicType,
    TwoLinesType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaRankReport {
    pub pfaffian_zero: bool,
    /// Ranks at the points of the expected rank-2 locus.
    pub locus_ranks: Vec<usize>,
    /// Ranks at random points off the locus.
    pub generic_ranks: Vec<usize>,
}

impl BetaRankReport {
    pub fn matches(&self) -> bool {
        self.pfaffian_zero && self.locus_ranks.iter().all(|&r| r == 2) && self.generic_ranks.iter().all(|&r| r == 4)
    }
}

fn r(n: i64) -> Rational {
    Rational::integer(n)
}

/// Points `(s², st, t², 0, 0)` of the conic.
fn conic_point(s: i64, t: i64) -> [Rational; 5] {
    [r(s * s), r(s * t), r(t * t), r(0), r(0)]
}

fn on_conic(x: &[Rational; 5]) -> bool {
    x[3] == r(0) && x[4] == r(0) && x[1].clone() * x[1].clone() == x[0].clone() * x[2].clone()
}

fn on_lines(x: &[Rational; 5]) -> bool {
    let z = |i: usize| x[i] == r(0);
    (z(0) && z(1) && z(2)) || (z(2) && z(3) && z(4))
}

fn nonzero_pair<R: Rng>(rng: &mut R) -> (i64, i64) {
    loop {
        let (s, t) = (rng.gen_range(-9..=9), rng.gen_range(-9..=9));
        if (s, t) != (0, 0) {
            return (s, t);
        }
    }
}

/// Ranks along the expected degeneracy locus and at random points off it.
///
/// For the conic matrix, `locus_points` points `(s², st, t², 0, 0)`; for the line matrix,
/// `locus_points` points on each line. Generic points are drawn with entries in `[-9, 9]`.
pub fn beta_rank_locus(beta: &BetaMatrix, orbit: BetaOrbit, locus_points: usize, generic_points: usize, seed: u64) -> BetaRankReport {
    let mut rng = sample::rng(seed);
    let mut locus = Vec::new();
    for _ in 0..locus_points {
        let (s, t) = nonzero_pair(&mut rng);
        match orbit {
            BetaOrbit::ConicType => locus.push(conic_point(s, t)),
            BetaOrbit::TwoLinesType => {
                locus.push([r(0), r(0), r(0), r(s), r(t)]);
                let (s, t) = nonzero_pair(&mut rng);
                locus.push([r(s), r(t), r(0), r(0), r(0)]);
            }
        }
    }
    let mut generic = Vec::new();
    while generic.len() < generic_points {
        let x: [Rational; 5] = std::array::from_fn(|_| sample::random_int(&mut rng, 9));
        let off = match orbit {
            BetaOrbit::ConicType => !on_conic(&x),
            BetaOrbit::TwoLinesType => !on_lines(&x),
        };
        if off && x.iter().any(|c| *c != r(0)) {
            generic.push(x);
        }
    }
    BetaRankReport {
        pfaffian_zero: beta.pfaffian().is_zero(),
        locus_ranks: locus.iter().map(|x| beta.at(x).rank()).collect(),
        generic_ranks: generic.iter().map(|x| beta.at(x).rank()).collect(),
    }
}

/// Orbit type read off from the Grassmannian intersection signature.
pub fn beta_orbit(beta: &BetaMatrix) -> Result<BetaOrbit> {
    if !beta.pfaffian().is_zero() {
        return Err(Error::Precondition("the Pfaffian does not vanish identically".into()));
    }
    let report = gr_intersection(&beta.system, &DEFAULT_PRIMES)?;
    match report.kind {
        IntersectionType::Conic => Ok(BetaOrbit::ConicType),
        IntersectionType::TwoLines => Ok(BetaOrbit::TwoLinesType),
        other => Err(Error::SignatureMismatch(format!("intersection type {other}"))),
    }
}
