//! Exhaustive searches for destabilizing subspaces over F_p, with exact lifting.
//!
//! Subspaces are enumerated by reduced row-echelon representatives. A prefix
//! predicate that is monotone under adding rows prunes the tree early.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::{DestabilizingWitness, Severity};
use crate::dispatch_prime;
use crate::exterior::{Ambient, Subspace, DIM};
use crate::linsys::LinearSystem;
use crate::scalars::{check_primes, crt_pair, rational_reconstruct, Fp, Rational, Ring};
use crate::Result;

/// Which kind of subspace a search looks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SearchKind {
    /// A vector `u` with `dim U′ ≥ 5` (nonstable) or `U′ = W` (unstable).
    S1 { severity: Severity },
    /// A totally isotropic subspace of the given dimension (3 or 4).
    S3 { dim: usize },
    /// A plane `U` with `dim U′ ≥ 5`.
    S2Unstable,
}

impl SearchKind {
    fn rows(self) -> usize {
        match self {
            SearchKind::S1 { .. } => 1,
            SearchKind::S3 { dim } => dim,
            SearchKind::S2Unstable => 2,
        }
    }

    pub fn severity(self) -> Severity {
        match self {
            SearchKind::S1 { severity } => severity,
            SearchKind::S3 { dim } if dim >= 4 => Severity::Unstable,
            SearchKind::S3 { .. } => Severity::Nonstable,
            SearchKind::S2Unstable => Severity::Unstable,
        }
    }
}

/// A subspace found over F_p, as reduced row-echelon rows with entries in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FpWitness {
    pub p: u32,
    #[serde(flatten)]
    pub kind: SearchKind,
    pub rows: Vec<[u32; DIM]>,
}

impl FpWitness {
    fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().position(|&x| x != 0).expect("nonzero row")).collect()
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchOutcome {
    /// Exact witness obtained by lifting and re-verifying.
    pub certified: Option<DestabilizingWitness<Rational>>,
    /// Raw finite-field hit, present whenever the search succeeded mod p.
    pub evidence: Option<FpWitness>,
}

pub fn search_s1(a: &LinearSystem<Rational>, p: u32, severity: Severity) -> Result<SearchOutcome> {
    search(a, p, SearchKind::S1 { severity })
}

/// Totally isotropic subspaces of dimension `dim_u` (3 or 4).
pub fn search_s3(a: &LinearSystem<Rational>, p: u32, dim_u: usize) -> Result<SearchOutcome> {
    assert!((3..=4).contains(&dim_u), "isotropic search dimension must be 3 or 4");
    search(a, p, SearchKind::S3 { dim: dim_u })
}

pub fn search_s2_unstable(a: &LinearSystem<Rational>, p: u32) -> Result<SearchOutcome> {
    search(a, p, SearchKind::S2Unstable)
}

fn search(a: &LinearSystem<Rational>, p: u32, kind: SearchKind) -> Result<SearchOutcome> {
    check_primes(&[p])?;
    let hit = dispatch_prime!(p, search_mod(a, kind))??;
    let certified = hit.as_ref().and_then(|h| lift(a, std::slice::from_ref(h)));
    Ok(SearchOutcome { certified, evidence: hit })
}

type Row<const P: u32> = [Fp<P>; DIM];

fn search_mod<const P: u32>(a: &LinearSystem<Rational>, kind: SearchKind) -> Result<Option<FpWitness>> {
    let red = a.reduce::<P>()?;
    let mats: Vec<[[Fp<P>; DIM]; DIM]> = red
        .generators()
        .iter()
        .map(|g| std::array::from_fn(|i| std::array::from_fn(|j| g.entry(i, j))))
        .collect();
    let found = match kind {
        SearchKind::S1 { severity } => first_subspace::<P, _>(1, |rows| s1_accept(&mats, &rows[0], severity)),
        SearchKind::S3 { dim } => first_subspace::<P, _>(dim, |rows| isotropic_accept(&mats, rows)),
        SearchKind::S2Unstable => first_subspace::<P, _>(2, |rows| s2_accept(&mats, rows)),
    };
    Ok(found.map(|rows| FpWitness { p: P, kind, rows: rows.iter().map(|r| r.map(|x| x.value())).collect() }))
}

fn contract<const P: u32>(m: &[[Fp<P>; DIM]; DIM], u: &Row<P>) -> Row<P> {
    std::array::from_fn(|j| (0..DIM).fold(Fp::ZERO, |acc, i| acc + u[i] * m[i][j]))
}

fn dot<const P: u32>(x: &Row<P>, y: &Row<P>) -> Fp<P> {
    (0..DIM).fold(Fp::ZERO, |acc, i| acc + x[i] * y[i])
}

/// Whether the vectors span a space of dimension at most one.
fn rank_le_one<const P: u32>(vs: &[Row<P>]) -> bool {
    let Some(lead) = vs.iter().find(|v| v.iter().any(|x| !x.is_zero())) else {
        return true;
    };
    vs.iter()
        .all(|w| (0..DIM).all(|i| (i + 1..DIM).all(|j| lead[i] * w[j] - lead[j] * w[i] == Fp::ZERO)))
}

fn s1_accept<const P: u32>(mats: &[[[Fp<P>; DIM]; DIM]], u: &Row<P>, severity: Severity) -> bool {
    let images: Vec<Row<P>> = mats.iter().map(|m| contract(m, u)).collect();
    match severity {
        Severity::Unstable => images.iter().all(|v| v.iter().all(|x| x.is_zero())),
        Severity::Nonstable => rank_le_one(&images),
    }
}

/// Checks the last row against all earlier rows; earlier pairs were checked already.
fn isotropic_accept<const P: u32>(mats: &[[[Fp<P>; DIM]; DIM]], rows: &[Row<P>]) -> bool {
    let (last, earlier) = rows.split_last().expect("nonempty prefix");
    mats.iter().all(|m| {
        let c = contract(m, last);
        earlier.iter().all(|r| dot(&c, r).is_zero())
    })
}

fn s2_accept<const P: u32>(mats: &[[[Fp<P>; DIM]; DIM]], rows: &[Row<P>]) -> bool {
    let images: Vec<Row<P>> = rows.iter().flat_map(|u| mats.iter().map(move |m| contract(m, u))).collect();
    rank_le_one(&images) && images.iter().all(|c| rows.iter().all(|r| dot(c, r).is_zero()))
}

/// `k`-subsets of `0..DIM` in colex order.
fn pivot_sets(k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..1 << DIM)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..DIM).filter(|&i| m >> i & 1 == 1).collect())
        .collect();
    out.sort_by(|x, y| x.iter().rev().cmp(y.iter().rev()));
    out
}

/// Free positions of each echelon row for a pivot set.
fn free_positions(pivots: &[usize]) -> Vec<Vec<usize>> {
    pivots.iter().map(|&p| (p + 1..DIM).filter(|j| !pivots.contains(j)).collect()).collect()
}

fn build_row<const P: u32>(pivot: usize, free: &[usize], mut idx: u64) -> Row<P> {
    let mut row = [Fp::<P>::ZERO; DIM];
    row[pivot] = Fp::ONE;
    for &j in free.iter().rev() {
        row[j] = Fp::new((idx % u64::from(P)) as u32);
        idx /= u64::from(P);
    }
    row
}

fn row_count<const P: u32>(free: &[usize]) -> u64 {
    u64::from(P).pow(free.len() as u32)
}

/// First `k`-dimensional subspace, in enumeration order, all of whose echelon prefixes are accepted.
fn first_subspace<const P: u32, A>(k: usize, accept: A) -> Option<Vec<Row<P>>>
where
    A: Fn(&[Row<P>]) -> bool + Sync,
{
    let shapes: Vec<(Vec<usize>, Vec<Vec<usize>>)> =
        pivot_sets(k).into_iter().map(|s| { let f = free_positions(&s); (s, f) }).collect();
    let tasks: Vec<(usize, u64)> = shapes
        .iter()
        .enumerate()
        .flat_map(|(si, (_, free))| (0..row_count::<P>(&free[0])).map(move |v| (si, v)))
        .collect();
    tasks.par_iter().find_map_first(|&(si, v0)| {
        let (pivots, free) = &shapes[si];
        let mut rows = vec![build_row::<P>(pivots[0], &free[0], v0)];
        (accept(&rows) && extend(&mut rows, pivots, free, &accept)).then_some(rows)
    })
}

fn extend<const P: u32, A>(rows: &mut Vec<Row<P>>, pivots: &[usize], free: &[Vec<usize>], accept: &A) -> bool
where
    A: Fn(&[Row<P>]) -> bool,
{
    let r = rows.len();
    if r == pivots.len() {
        return true;
    }
    for v in 0..row_count::<P>(&free[r]) {
        rows.push(build_row::<P>(pivots[r], &free[r], v));
        if accept(rows) && extend(rows, pivots, free, accept) {
            return true;
        }
        rows.pop();
    }
    false
}

/// Lifts F_p witnesses of one kind to an exact witness.
///
/// Hits sharing the first hit's pivot pattern are combined by CRT before rational
/// reconstruction; the result is re-verified exactly.
pub(crate) fn lift(a: &LinearSystem<Rational>, hits: &[FpWitness]) -> Option<DestabilizingWitness<Rational>> {
    let first = hits.first()?;
    let pattern = first.pivots();
    let mut residues: Vec<BigInt> = first.rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
    let mut modulus = BigInt::from(first.p);
    let mut candidates = vec![(residues.clone(), modulus.clone())];
    for h in &hits[1..] {
        if h.kind != first.kind || h.pivots() != pattern || BigInt::from(h.p) == modulus {
            continue;
        }
        let n = BigInt::from(h.p);
        let mut next = Vec::with_capacity(residues.len());
        let mut m_next = modulus.clone();
        for (a_res, b) in residues.iter().zip(h.rows.iter().flatten()) {
            let (r, mn) = crt_pair(a_res, &modulus, &BigInt::from(*b), &n);
            next.push(r);
            m_next = mn;
        }
        residues = next;
        modulus = m_next;
        candidates.push((residues.clone(), modulus.clone()));
    }
    candidates.iter().rev().find_map(|(res, m)| {
        let entries: Vec<Rational> = res.iter().map(|x| rational_reconstruct(x, m)).collect::<Option<_>>()?;
        let rows: Vec<[Rational; DIM]> =
            entries.chunks(DIM).map(|c| std::array::from_fn(|i| c[i].clone())).collect();
        certify_rows(a, first.kind, &rows)
    })
}

/// Exact witness built from candidate rows, if they really have the searched property.
pub(crate) fn certify_rows(
    a: &LinearSystem<Rational>,
    kind: SearchKind,
    rows: &[[Rational; DIM]],
) -> Option<DestabilizingWitness<Rational>> {
    let u = Subspace::span(Ambient::W, rows);
    if u.dim() != kind.rows() {
        return None;
    }
    let w = match kind {
        SearchKind::S3 { .. } => DestabilizingWitness::from_isotropic(a, &u).ok()?,
        SearchKind::S1 { .. } | SearchKind::S2Unstable => {
            let images: Vec<[Rational; DIM]> =
                u.basis().iter().flat_map(|v| a.generators().iter().map(move |g| g.contract(v))).collect();
            let u_prime = Subspace::span(Ambient::WDual, &images).annihilator();
            DestabilizingWitness::certify(a, u.dim(), u, u_prime).ok()?
        }
    };
    (w.severity() >= kind.severity()).then_some(w)
}
