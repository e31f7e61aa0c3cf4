//! Planes of forms of constant rank 4: normal forms, constant-rank checks,
//! orbit classification, and normalization of general-type planes.

mod cdf;

use rayon::prelude::*;
use serde::Serialize;

use crate::dispatch_prime;
use crate::exterior::{AlternatingForm, Subspace};
use crate::linsys::LinearSystem;
use crate::sample;
use crate::scalars::{check_primes, projective_count, projective_point, Fp, Rational, DEFAULT_PRIMES};
use crate::{Error, Result};

pub use cdf::{normalize_general_plane, recover_cdf, splitting_operator, symmetrizers, CdfDatum, SplittingOperator};

/// Form from 1-based terms `(i, j, c)` meaning `c·e_i∧e_j`.
pub(crate) fn form(terms: &[(usize, usize, i64)]) -> AlternatingForm<Rational> {
    terms.iter().fold(AlternatingForm::zero(), |acc, &(i, j, c)| {
        acc + AlternatingForm::elementary(i, j).scale(&Rational::integer(c))
    })
}

fn plane(gens: [&[(usize, usize, i64)]; 3]) -> LinearSystem<Rational> {
    LinearSystem::new(gens.iter().map(|g| form(g)).collect()).expect("independent normal form")
}

/// `⟨e1∧e4 + e2∧e5, e1∧e6 + e3∧e5, e2∧e6 − e3∧e4⟩`.
pub fn pi_g() -> LinearSystem<Rational> {
    plane([&[(1, 4, 1), (2, 5, 1)], &[(1, 6, 1), (3, 5, 1)], &[(2, 6, 1), (3, 4, -1)]])
}

/// `⟨e1∧e3 + e2∧e4, e1∧e4 + e2∧e5, e1∧e5 + e2∧e6⟩`.
pub fn pi_t() -> LinearSystem<Rational> {
    plane([&[(1, 3, 1), (2, 4, 1)], &[(1, 4, 1), (2, 5, 1)], &[(1, 5, 1), (2, 6, 1)]])
}

/// `⟨e1∧e4 + e2∧e3, e1∧e5 + e3∧e4, e1∧e6 + e2∧e4⟩`.
pub fn pi_p() -> LinearSystem<Rational> {
    plane([&[(1, 4, 1), (2, 3, 1)], &[(1, 5, 1), (3, 4, 1)], &[(1, 6, 1), (2, 4, 1)]])
}

/// `⟨e1∧e4 + e2∧e3, e1∧e5 + e2∧e4, e2∧e5 + e3∧e4⟩`.
pub fn pi_5() -> LinearSystem<Rational> {
    plane([&[(1, 4, 1), (2, 3, 1)], &[(1, 5, 1), (2, 4, 1)], &[(2, 5, 1), (3, 4, 1)]])
}

/// The four orbits of constant-rank-4 planes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaneOrbit {
    General,
    Tangent,
    Pencil,
    Hyperplane,
}

impl PlaneOrbit {
    pub const ALL: [PlaneOrbit; 4] = [PlaneOrbit::General, PlaneOrbit::Tangent, PlaneOrbit::Pencil, PlaneOrbit::Hyperplane];

    pub fn normal_form(self) -> LinearSystem<Rational> {
        match self {
            PlaneOrbit::General => pi_g(),
            PlaneOrbit::Tangent => pi_t(),
            PlaneOrbit::Pencil => pi_p(),
            PlaneOrbit::Hyperplane => pi_5(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitLabel {
    Orbit(PlaneOrbit),
    NotCr4,
    Unrecognized,
}

impl std::fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OrbitLabel::Orbit(PlaneOrbit::General) => "general",
            OrbitLabel::Orbit(PlaneOrbit::Tangent) => "tangent",
            OrbitLabel::Orbit(PlaneOrbit::Pencil) => "pencil",
            OrbitLabel::Orbit(PlaneOrbit::Hyperplane) => "hyperplane",
            OrbitLabel::NotCr4 => "not_cr4",
            OrbitLabel::Unrecognized => "unrecognized",
        })
    }
}

/// A member whose rank is not 4.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankExhibit {
    /// `None` for an exact rational member, otherwise the prime it was found at.
    pub p: Option<u32>,
    /// Coordinates on the generators.
    pub coords: Vec<Rational>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cr4Evidence {
    pub constant_rank4: bool,
    pub pf_cubic_zero: bool,
    /// Primes at which every point of the reduced plane has rank 4.
    pub primes_checked: Vec<u32>,
    /// Primes at which the reduction has a point of another rank although the plane has none.
    pub bad_reduction: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhibit: Option<RankExhibit>,
}

fn reject(pf_cubic_zero: bool, exhibit: RankExhibit) -> Cr4Evidence {
    Cr4Evidence { constant_rank4: false, pf_cubic_zero, primes_checked: Vec::new(), bad_reduction: Vec::new(), exhibit: Some(exhibit) }
}

/// Constant rank 4 on a plane, decided exactly: the Pfaffian cubic must vanish and the
/// Plücker quadrics must have no common zero on the plane. Every point mod p is also
/// scanned, which supplies an explicit member of another rank when one exists.
pub fn is_constant_rank4(b: &LinearSystem<Rational>, primes: &[u32]) -> Result<Cr4Evidence> {
    if b.dim() != 3 {
        return Err(Error::Precondition(format!("a plane needs 3 generators, got {}", b.dim())));
    }
    check_primes(primes)?;
    let pf_cubic_zero = b.pfaffian_cubic().is_zero();
    for idx in 0..projective_count(3, 3) {
        let coords: Vec<Rational> = projective_point::<3>(3, idx).iter().map(|x| Rational::integer(x.centered())).collect();
        let r = b.combination(&coords).rank();
        if r != 4 {
            return Ok(reject(pf_cubic_zero, RankExhibit { p: None, coords, rank: r }));
        }
    }
    if !pf_cubic_zero {
        // A rank-6 member exists; find one with small coordinates.
        let mut rng = sample::rng(sample::DEFAULT_SEED);
        loop {
            let coords = sample::random_combination(&mut rng, b.generators(), 50);
            let r = b.combination(&coords).rank();
            if r != 4 {
                return Ok(reject(false, RankExhibit { p: None, coords, rank: r }));
            }
        }
    }
    let constant_rank4 = b.misses_grassmannian();
    let mut primes_checked = Vec::new();
    let mut bad_reduction = Vec::new();
    let mut exhibit = None;
    for &p in primes {
        match dispatch_prime!(p, bad_point_mod(b))? {
            Ok(None) => primes_checked.push(p),
            Ok(Some(_)) if constant_rank4 => bad_reduction.push(p),
            Ok(Some((coords, rank))) => {
                let coords = coords.into_iter().map(|c| Rational::integer(i64::from(c))).collect();
                exhibit.get_or_insert(RankExhibit { p: Some(p), coords, rank });
            }
            Err(_) => bad_reduction.push(p),
        }
    }
    Ok(Cr4Evidence { constant_rank4, pf_cubic_zero, primes_checked, bad_reduction, exhibit })
}

fn bad_point_mod<const P: u32>(b: &LinearSystem<Rational>) -> Result<Option<(Vec<u32>, usize)>> {
    let red = b.reduce::<P>()?;
    let found = (0..projective_count(P, 3)).into_par_iter().find_map_first(|idx| {
        let c: Vec<Fp<P>> = projective_point::<P>(3, idx);
        let r = red.combination(&c).rank();
        (r != 4).then(|| (c.iter().map(|x| x.value()).collect(), r))
    });
    Ok(found)
}

/// Orbit of a constant-rank-4 plane.
pub fn classify_cr4_plane(b: &LinearSystem<Rational>) -> Result<OrbitLabel> {
    if !is_constant_rank4(b, &DEFAULT_PRIMES)?.constant_rank4 {
        return Err(Error::NotCr4);
    }
    Ok(classify_unchecked(b))
}

/// Like [`classify_cr4_plane`], reporting [`OrbitLabel::NotCr4`] instead of an error.
pub fn classify_plane(b: &LinearSystem<Rational>) -> Result<OrbitLabel> {
    match classify_cr4_plane(b) {
        Err(Error::NotCr4) => Ok(OrbitLabel::NotCr4),
        other => other,
    }
}

fn classify_unchecked(b: &LinearSystem<Rational>) -> OrbitLabel {
    let kernels: Vec<Subspace<Rational>> = b.generators().iter().map(|g| g.kernel()).collect();
    let common = kernels[1..].iter().fold(kernels[0].clone(), |acc, k| acc.intersect(k));
    if common.dim() > 0 {
        return OrbitLabel::Orbit(PlaneOrbit::Hyperplane);
    }
    match symmetrizers(b).len() {
        1 => OrbitLabel::Orbit(PlaneOrbit::General),
        3 => OrbitLabel::Orbit(PlaneOrbit::Pencil),
        6 => OrbitLabel::Orbit(PlaneOrbit::Tangent),
        _ => OrbitLabel::Unrecognized,
    }
}
