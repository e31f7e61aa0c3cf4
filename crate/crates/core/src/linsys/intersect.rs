use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::LinearSystem;
use crate::dispatch_prime;
use crate::exterior::AlternatingForm;
use crate::scalars::{check_primes, projective_count, projective_point, rational_reconstruct, Fp, Rational, Ring};
use crate::Result;

/// Shape of `P(A) ∩ Gr(2, W*)` read off from point counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntersectionType {
    Empty,
    #[serde(rename = "2-points")]
    TwoPoints,
    Conic,
    #[serde(rename = "2-lines")]
    TwoLines,
    #[serde(rename = "2-planes")]
    TwoPlanes,
    Other,
}

impl IntersectionType {
    const KNOWN: [IntersectionType; 5] = [
        IntersectionType::Empty,
        IntersectionType::TwoPoints,
        IntersectionType::Conic,
        IntersectionType::TwoLines,
        IntersectionType::TwoPlanes,
    ];

    /// Expected number of F_p points, `None` for [`IntersectionType::Other`].
    pub fn expected_count(self, p: u32) -> Option<u64> {
        let p = u64::from(p);
        match self {
            IntersectionType::Empty => Some(0),
            IntersectionType::TwoPoints => Some(2),
            IntersectionType::Conic => Some(p + 1),
            IntersectionType::TwoLines => Some(2 * (p + 1)),
            IntersectionType::TwoPlanes => Some(2 * (p * p + p + 1)),
            IntersectionType::Other => None,
        }
    }

    /// The unique type whose expected counts match at every prime.
    pub fn from_counts(counts: &BTreeMap<u32, u64>) -> Self {
        Self::KNOWN
            .into_iter()
            .find(|t| !counts.is_empty() && counts.iter().all(|(&p, &c)| t.expected_count(p) == Some(c)))
            .unwrap_or(IntersectionType::Other)
    }
}

impl fmt::Display for IntersectionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IntersectionType::Empty => "empty",
            IntersectionType::TwoPoints => "2-points",
            IntersectionType::Conic => "conic",
            IntersectionType::TwoLines => "2-lines",
            IntersectionType::TwoPlanes => "2-planes",
            IntersectionType::Other => "other",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GrIntersectionReport {
    /// Number of rank-≤2 points of `P(A)(F_p)`.
    pub counts: BTreeMap<u32, u64>,
    pub kind: IntersectionType,
    /// Rank-2 members of `A` with rational coefficients, each verified exactly.
    pub samples: Vec<AlternatingForm<Rational>>,
}

/// Maximum number of exact sample points kept in a report.
const MAX_SAMPLES: usize = 12;

/// F_p points per prime considered for rational lifting.
const MAX_LIFT_CANDIDATES: usize = 64;

/// Counts rank-≤2 points of `P(A)(F_p)` at each prime and classifies the count signature.
pub fn gr_intersection(a: &LinearSystem<Rational>, primes: &[u32]) -> Result<GrIntersectionReport> {
    check_primes(primes)?;
    let mut counts = BTreeMap::new();
    let mut lifted = Vec::new();
    for &p in primes {
        let (count, points) = dispatch_prime!(p, rank2_points(a))??;
        counts.insert(p, count);
        lifted.extend(points.into_iter().filter_map(|pt| lift_point(a, p, &pt)));
    }
    let kind = IntersectionType::from_counts(&counts);
    let mut samples: Vec<(Vec<Rational>, AlternatingForm<Rational>)> = small_rank2_members(a);
    samples.extend(lifted);
    let mut seen = std::collections::BTreeSet::new();
    let samples = samples
        .into_iter()
        .filter(|(c, _)| seen.insert(c.clone()))
        .take(MAX_SAMPLES)
        .map(|(_, f)| f)
        .collect();
    Ok(GrIntersectionReport { counts, kind, samples })
}

/// Number of rank-≤2 points of `P(A)(F_p)`.
pub fn rank2_count(a: &LinearSystem<Rational>, p: u32) -> Result<u64> {
    check_primes(&[p])?;
    dispatch_prime!(p, rank2_points(a))?.map(|(c, _)| c)
}

fn rank2_points<const P: u32>(a: &LinearSystem<Rational>) -> Result<(u64, Vec<Vec<u32>>)> {
    let red = a.reduce::<P>()?;
    let gens: Vec<[Fp<P>; 15]> = red.generators().iter().map(|g| *g.coeffs()).collect();
    let m = gens.len();
    let total = projective_count(P, m);
    let is_hit = |idx: u64| -> Option<Vec<Fp<P>>> {
        let c = projective_point::<P>(m, idx);
        let mut f = [Fp::<P>::ZERO; 15];
        for (g, x) in gens.iter().zip(&c) {
            if !x.is_zero() {
                for k in 0..15 {
                    f[k] = f[k] + g[k] * *x;
                }
            }
        }
        AlternatingForm::from_coeffs(f).wedge_square().is_zero().then_some(c)
    };
    let count = (0..total).into_par_iter().filter(|&idx| is_hit(idx).is_some()).count() as u64;
    let hits = (0..total)
        .filter_map(is_hit)
        .take(MAX_LIFT_CANDIDATES)
        .map(|c| c.iter().map(|x| x.value()).collect())
        .collect();
    Ok((count, hits))
}

fn normalize(c: &[Rational]) -> Option<Vec<Rational>> {
    let lead = c.iter().find(|x| !x.is_zero())?.clone();
    Some(c.iter().map(|x| x.clone() * crate::scalars::Field::inv(&lead).expect("nonzero")).collect())
}

fn is_rank2(f: &AlternatingForm<Rational>) -> bool {
    !f.is_zero() && f.wedge_square().is_zero()
}

/// Reconstructs an F_p point with small rational coordinates and keeps it if it is exactly rank 2.
fn lift_point(a: &LinearSystem<Rational>, p: u32, pt: &[u32]) -> Option<(Vec<Rational>, AlternatingForm<Rational>)> {
    let m = BigInt::from(p);
    let c: Vec<Rational> = pt.iter().map(|&x| rational_reconstruct(&BigInt::from(x), &m)).collect::<Option<_>>()?;
    let c = normalize(&c)?;
    let f = a.combination(&c);
    is_rank2(&f).then_some((c, f))
}

/// Rank-2 members with coefficients in {-1, 0, 1} (first nonzero = 1), for systems of dimension ≤ 7.
fn small_rank2_members(a: &LinearSystem<Rational>) -> Vec<(Vec<Rational>, AlternatingForm<Rational>)> {
    let m = a.dim();
    let mut out = Vec::new();
    if m > 7 {
        for (k, g) in a.generators().iter().enumerate() {
            if is_rank2(g) {
                let mut c = vec![Rational::zero(); m];
                c[k] = Rational::one();
                out.push((c, g.clone()));
            }
        }
        return out;
    }
    for idx in 0..projective_count(3, m) {
        let c: Vec<Rational> = projective_point::<3>(m, idx).iter().map(|x| Rational::integer(x.centered())).collect();
        let f = a.combination(&c);
        if is_rank2(&f) {
            out.push((c, f));
        }
    }
    out
}
