use rand::Rng;
use serde::Serialize;

use super::search::{self, FpWitness, SearchKind};
use super::{isotropic3_candidates_for_pi_g, DestabilizingWitness, Severity};
use crate::exterior::{Ambient, GroupElement, Subspace, DIM, PAIRS};
use crate::linsys::LinearSystem;
use crate::planes;
use crate::sample;
use crate::scalars::{check_primes, Rational, Ring, DEFAULT_PRIMES};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    pub primes: Vec<u32>,
    pub seed: u64,
    /// Skip the search for a general-type plane and require the first three generators to be its normal form.
    pub assume_pi_g: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { primes: DEFAULT_PRIMES.to_vec(), seed: sample::DEFAULT_SEED, assume_pi_g: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictTag {
    Stable,
    StrictlySemistable,
    Unstable,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionPath {
    /// A general-type plane was found and normalized; the verdict is exact.
    ExactGeneralPlane,
    /// Zero patterns and finite-field searches.
    Search,
}

#[derive(Clone, Debug, Serialize)]
pub struct PatternHit {
    /// `perm[a]` is the original index of the new basis vector `a` (0-based).
    pub perm: [usize; DIM],
    pub s: usize,
    pub severity: Severity,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchRecord {
    pub p: u32,
    #[serde(flatten)]
    pub kind: SearchKind,
    pub found: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Evidence {
    pub path: DecisionPath,
    pub primes: Vec<u32>,
    /// Normalizing matrix rows, on the exact path.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalizer: Option<Vec<Vec<Rational>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pattern: Option<PatternHit>,
    pub searches: Vec<SearchRecord>,
    pub fp_hits: Vec<FpWitness>,
    /// Whether the tag is proved exactly rather than suggested by finite-field searches.
    pub certified: bool,
    pub notes: Vec<String>,
}

impl Evidence {
    fn new(path: DecisionPath, primes: &[u32]) -> Self {
        Evidence {
            path,
            primes: primes.to_vec(),
            normalizer: None,
            pattern: None,
            searches: Vec::new(),
            fp_hits: Vec::new(),
            certified: false,
            notes: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityVerdict {
    pub tag: VerdictTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<DestabilizingWitness<Rational>>,
    pub evidence: Evidence,
}

/// Random 3-dimensional subsystems tried when looking for a general-type plane.
const RANDOM_PLANE_TRIES: usize = 96;

/// Generator triples tried before random planes.
const MAX_GENERATOR_TRIPLES: usize = 35;

pub fn decide_stability(a: &LinearSystem<Rational>, opts: &DecideOptions) -> Result<StabilityVerdict> {
    check_primes(&opts.primes)?;
    if let Some(v) = exact_path(a, opts)? {
        return Ok(v);
    }
    Ok(search_path(a, opts))
}

fn exact_path(a: &LinearSystem<Rational>, opts: &DecideOptions) -> Result<Option<StabilityVerdict>> {
    if a.dim() < 3 {
        return Ok(None);
    }
    let normal = planes::pi_g();
    if a.generators()[..3] == *normal.generators() {
        return exact_verdict(a, &GroupElement::identity(), opts).map(Some);
    }
    if opts.assume_pi_g {
        return Err(Error::Precondition("the first three generators are not the general-type normal form".into()));
    }
    let mut conjugate: Option<planes::SplittingOperator> = None;
    for plane in candidate_planes(a, opts.seed) {
        let Some(k) = planes::splitting_operator(&plane) else { continue };
        if !plane.pfaffian_cubic().is_zero() || !plane.misses_grassmannian() {
            continue;
        }
        if k.root().is_none() {
            conjugate.get_or_insert(k);
            continue;
        }
        if let Ok(g) = planes::normalize_general_plane(&plane) {
            return exact_verdict(a, &g, opts).map(Some);
        }
    }
    Ok(conjugate.map(|k| conjugate_verdict(a, &k, opts)))
}

/// Exact verdict through a general-type plane whose isotropic 3-spaces are conjugate over a
/// quadratic field. One of them is isotropic for `A` exactly when both are, which happens
/// exactly when every generator vanishes on both eigenspaces of the splitting operator.
fn conjugate_verdict(a: &LinearSystem<Rational>, k: &planes::SplittingOperator, opts: &DecideOptions) -> StabilityVerdict {
    let mut evidence = Evidence::new(DecisionPath::ExactGeneralPlane, &opts.primes);
    evidence.certified = true;
    evidence.notes.push(format!("isotropic 3-spaces of the general-type plane are defined over Q(sqrt({}))", k.square));
    if a.generators().iter().all(|g| k.preserves(g)) {
        evidence.notes.push("both isotropic 3-spaces are isotropic for the whole system; no rational witness".into());
        StabilityVerdict { tag: VerdictTag::StrictlySemistable, witness: None, evidence }
    } else {
        evidence.notes.push("no isotropic 3-space and no s=1 witness through a general-type plane".into());
        StabilityVerdict { tag: VerdictTag::Stable, witness: None, evidence }
    }
}

fn candidate_planes(a: &LinearSystem<Rational>, seed: u64) -> impl Iterator<Item = LinearSystem<Rational>> + '_ {
    let n = a.dim();
    let triples = (0..n)
        .flat_map(move |i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| [i, j, k])))
        .take(MAX_GENERATOR_TRIPLES)
        .filter_map(move |t| a.subsystem(&t).ok());
    let mut rng = sample::rng(seed);
    let random = (0..RANDOM_PLANE_TRIES).filter_map(move |_| {
        let members = (0..3)
            .map(|_| {
                let c: Vec<Rational> = (0..n).map(|_| Rational::integer(rng.gen_range(-3..=3))).collect();
                a.combination(&c)
            })
            .collect();
        LinearSystem::new(members).ok()
    });
    triples.chain(if n > 3 { Some(random) } else { None }.into_iter().flatten())
}

/// With `g·B` the normal form for some plane `B ⊆ A`, the verdict is exact.
fn exact_verdict(a: &LinearSystem<Rational>, g: &GroupElement<Rational>, opts: &DecideOptions) -> Result<StabilityVerdict> {
    let moved = a.act(g);
    let mut gens = planes::pi_g().generators().to_vec();
    for w in moved.generators() {
        let mut trial = gens.clone();
        trial.push(w.clone());
        if LinearSystem::new(trial.clone()).is_ok() {
            gens = trial;
        }
    }
    let normalized = LinearSystem::new(gens)?;
    let candidates = isotropic3_candidates_for_pi_g(&normalized)?;
    let mut evidence = Evidence::new(DecisionPath::ExactGeneralPlane, &opts.primes);
    evidence.certified = true;
    if *g != GroupElement::identity() {
        evidence.normalizer = Some(g.matrix().rows_vec());
    }
    evidence.notes.push(format!("{} isotropic 3-spaces in normalized coordinates", candidates.len()));
    let Some(first) = candidates.first() else {
        evidence.notes.push("no isotropic 3-space and no s=1 witness through a general-type plane".into());
        return Ok(StabilityVerdict { tag: VerdictTag::Stable, witness: None, evidence });
    };
    let back = g.inverse().transport(first);
    let witness = DestabilizingWitness::from_isotropic(a, &back)?;
    Ok(StabilityVerdict { tag: VerdictTag::StrictlySemistable, witness: Some(witness), evidence })
}

fn permutations() -> Vec<[usize; DIM]> {
    let mut out = Vec::with_capacity(720);
    let mut perm: [usize; DIM] = std::array::from_fn(|i| i);
    fn rec(k: usize, perm: &mut [usize; DIM], out: &mut Vec<[usize; DIM]>) {
        if k == DIM {
            out.push(*perm);
            return;
        }
        for i in k..DIM {
            perm.swap(k, i);
            rec(k + 1, perm, out);
            perm.swap(k, i);
        }
    }
    rec(0, &mut perm, &mut out);
    out.sort();
    out
}

/// First coordinate permutation under which `A` shows a zero pattern of the given severity.
fn pattern_witness(a: &LinearSystem<Rational>, severity: Severity) -> Option<(PatternHit, DestabilizingWitness<Rational>)> {
    let support: Vec<(usize, usize)> = PAIRS
        .iter()
        .enumerate()
        .filter(|(k, _)| a.generators().iter().any(|g| !g.coeffs()[*k].is_zero()))
        .map(|(_, &p)| p)
        .collect();
    for perm in permutations() {
        let mut pos = [0usize; DIM];
        for (a_new, &orig) in perm.iter().enumerate() {
            pos[orig] = a_new;
        }
        for s in 1..=3 {
            let bound = severity.threshold(s);
            let hit = support.iter().all(|&(i, j)| {
                let (x, y) = (pos[i].min(pos[j]), pos[i].max(pos[j]));
                !(x < s && y < bound)
            });
            if hit {
                let idx = |n: usize| -> Vec<usize> { perm[..n].iter().map(|&i| i + 1).collect() };
                let u = Subspace::coordinate(Ambient::W, &idx(s));
                let up = Subspace::coordinate(Ambient::W, &idx(bound));
                let w = DestabilizingWitness::certify(a, s, u, up).expect("zero pattern gives a witness");
                return Some((PatternHit { perm, s, severity }, w));
            }
        }
    }
    None
}

fn search_path(a: &LinearSystem<Rational>, opts: &DecideOptions) -> StabilityVerdict {
    let mut ev = Evidence::new(DecisionPath::Search, &opts.primes);
    if let Some((hit, w)) = pattern_witness(a, Severity::Unstable) {
        ev.pattern = Some(hit);
        ev.certified = true;
        return StabilityVerdict { tag: VerdictTag::Unstable, witness: Some(w), evidence: ev };
    }
    let mut best: Option<DestabilizingWitness<Rational>> = None;
    if let Some((hit, w)) = pattern_witness(a, Severity::Nonstable) {
        ev.pattern = Some(hit);
        best = Some(w);
    }
    let kinds = [
        SearchKind::S1 { severity: Severity::Nonstable },
        SearchKind::S3 { dim: 3 },
        SearchKind::S3 { dim: 4 },
        SearchKind::S2Unstable,
        SearchKind::S1 { severity: Severity::Unstable },
    ];
    for kind in kinds {
        if kind.severity() == Severity::Nonstable && best.is_some() {
            continue;
        }
        let mut hits: Vec<FpWitness> = Vec::new();
        for &p in &opts.primes {
            let found = match kind {
                SearchKind::S1 { severity } => search::search_s1(a, p, severity),
                SearchKind::S3 { dim } => search::search_s3(a, p, dim),
                SearchKind::S2Unstable => search::search_s2_unstable(a, p),
            };
            let outcome = match found {
                Ok(o) => o,
                Err(e) => {
                    ev.notes.push(format!("p = {p} skipped: {e}"));
                    continue;
                }
            };
            ev.searches.push(SearchRecord { p, kind, found: outcome.evidence.is_some() });
            if let Some(h) = outcome.evidence {
                hits.push(h.clone());
                ev.fp_hits.push(h);
            }
            let lifted = outcome.certified.or_else(|| search::lift(a, &hits));
            if let Some(w) = lifted {
                if w.severity() == Severity::Unstable {
                    ev.certified = true;
                    return StabilityVerdict { tag: VerdictTag::Unstable, witness: Some(w), evidence: ev };
                }
                best.get_or_insert(w);
                break;
            }
        }
    }
    match best {
        Some(w) => {
            ev.notes.push("no unstable witness at any prime; semistability is not certified".into());
            StabilityVerdict { tag: VerdictTag::StrictlySemistable, witness: Some(w), evidence: ev }
        }
        None => {
            if ev.fp_hits.is_empty() {
                ev.notes.push("no witness at any prime; stability is not certified by this path".into());
            } else {
                ev.notes.push("finite-field witnesses did not lift to exact ones".into());
            }
            StabilityVerdict { tag: VerdictTag::Unknown, witness: None, evidence: ev }
        }
    }
}
