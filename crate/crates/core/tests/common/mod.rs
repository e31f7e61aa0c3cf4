//! Brute-force oracles shared by the integration tests. Nothing here calls the library's
//! rank, Pfaffian, elimination or enumeration code; only coefficient accessors are used.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use skewforms::exterior::AlternatingForm;
use skewforms::linsys::LinearSystem;
use skewforms::scalars::Rational;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn to_q(r: &Rational) -> Q {
    Q::new(r.numer().clone(), r.denom().clone())
}

/// Pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn pairs() -> Vec<(usize, usize)> {
    (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).collect()
}

/// Full skew matrix from the 15 coefficients.
pub fn skew(f: &AlternatingForm<Rational>) -> Vec<Vec<Q>> {
    let mut m = vec![vec![Q::zero(); 6]; 6];
    for (k, (i, j)) in pairs().into_iter().enumerate() {
        let c = to_q(&f.coeffs()[k]);
        m[j][i] = -c.clone();
        m[i][j] = c;
    }
    m
}

/// Leibniz determinant over all permutations.
pub fn det_leibniz(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut total = Q::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| p[a] > p[b]).count();
        let mut term = Q::one();
        for (r, &c) in p.iter().enumerate() {
            term *= &m[r][c];
            if term.is_zero() {
                return;
            }
        }
        if inversions % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// Pfaffian as a signed sum over the 15 perfect matchings of six points.
pub fn pf_matchings(m: &[Vec<Q>]) -> Q {
    fn rec(m: &[Vec<Q>], left: &[usize]) -> Q {
        if left.is_empty() {
            return Q::one();
        }
        let first = left[0];
        let mut acc = Q::zero();
        for k in 1..left.len() {
            let rest: Vec<usize> = left[1..].iter().copied().filter(|&x| x != left[k]).collect();
            let term = m[first][left[k]].clone() * rec(m, &rest);
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
    let idx: Vec<usize> = (0..m.len()).collect();
    rec(m, &idx)
}

/// Rank by fraction Gaussian elimination.
pub fn rank_q(m: &[Vec<Q>]) -> usize {
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, piv);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone() / a[r][c].clone();
                for k in c..cols {
                    let v = a[r][k].clone() * f.clone();
                    a[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn residue(x: &Rational, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let n = x.numer().mod_floor(&pb).to_u64().unwrap();
    let d = x.denom().mod_floor(&pb).to_u64().unwrap();
    assert!(d != 0, "denominator divisible by {p}");
    n * inv_mod(d, p) % p
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rank of a matrix over F_p.
pub fn rank_mod(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] % p != 0) else { continue };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for k in 0..cols {
            a[r][k] = a[r][k] * inv % p;
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for k in 0..cols {
                    a[i][k] = (a[i][k] + p * p - f * a[r][k] % p) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Nullspace basis over F_p.
pub fn nullspace_mod(rows: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] % p != 0) else { continue };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for k in 0..cols {
            a[r][k] = a[r][k] * inv % p;
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for k in 0..cols {
                    a[i][k] = (a[i][k] + p * p - f * a[r][k] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[row][free] % p) % p;
            }
            v
        })
        .collect()
}

pub fn coeffs_mod(f: &AlternatingForm<Rational>, p: u64) -> [u64; 15] {
    std::array::from_fn(|k| residue(&f.coeffs()[k], p))
}

pub fn skew_mod(c: &[u64; 15], p: u64) -> Vec<Vec<u64>> {
    let mut m = vec![vec![0u64; 6]; 6];
    for (k, (i, j)) in pairs().into_iter().enumerate() {
        m[i][j] = c[k] % p;
        m[j][i] = (p - c[k] % p) % p;
    }
    m
}

/// Normalized representatives of `P^{n-1}(F_p)`: first nonzero coordinate 1.
pub fn projective_points(n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let total = p.pow(free as u32);
        for mut idx in 0..total {
            let mut v = vec![0u64; n];
            v[lead] = 1;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = idx % p;
                idx /= p;
            }
            out.push(v);
        }
    }
    out
}

fn combine(gens: &[[u64; 15]], x: &[u64], p: u64) -> [u64; 15] {
    std::array::from_fn(|k| gens.iter().zip(x).fold(0, |acc, (g, c)| (acc + g[k] * c) % p))
}

/// Number of points of `P(A)(F_p)` whose form has rank ≤ 2.
pub fn rank2_points(a: &LinearSystem<Rational>, p: u64) -> u64 {
    let gens: Vec<[u64; 15]> = a.generators().iter().map(|g| coeffs_mod(g, p)).collect();
    projective_points(gens.len(), p)
        .par_iter()
        .filter(|x| rank_mod(skew_mod(&combine(&gens, x, p), p), p) <= 2)
        .count() as u64
}

/// Number of `k`-dimensional subspaces of `F_p^n`.
pub fn gaussian_binomial(n: u32, k: u32, p: u64) -> u64 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= (p as u128).pow(n - i) - 1;
        den *= (p as u128).pow(i + 1) - 1;
    }
    (num / den) as u64
}

fn pairing_mod(m: &[Vec<u64>], x: &[u64], y: &[u64], p: u64) -> u64 {
    let mut acc = 0;
    for i in 0..6 {
        if x[i] == 0 {
            continue;
        }
        for j in 0..6 {
            acc = (acc + x[i] * m[i][j] % p * y[j]) % p;
        }
    }
    acc
}

/// Rows of reduced echelon form with the given pivots: free entries right of each pivot.
fn echelon_rows(pivots: &[usize], p: u64) -> Vec<Vec<Vec<u64>>> {
    pivots
        .iter()
        .map(|&c| {
            let free: Vec<usize> = (c + 1..6).filter(|x| !pivots.contains(x)).collect();
            (0..p.pow(free.len() as u32))
                .map(|mut idx| {
                    let mut v = vec![0u64; 6];
                    v[c] = 1;
                    for &f in &free {
                        v[f] = idx % p;
                        idx /= p;
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// Totally isotropic 3-spaces of `A` over F_p, enumerating every point of Gr(3, 6)(F_p)
/// in reduced echelon form (pruned on partial isotropy). Returns the isotropic spaces as
/// echelon rows and the number of echelon representatives in the enumeration domain.
pub fn isotropic3_mod(a: &LinearSystem<Rational>, p: u64) -> (Vec<[Vec<u64>; 3]>, u64) {
    let ms: Vec<Vec<Vec<u64>>> = a.generators().iter().map(|g| skew_mod(&coeffs_mod(g, p), p)).collect();
    let iso = |x: &[u64], y: &[u64]| ms.iter().all(|m| pairing_mod(m, x, y, p) == 0);
    let pivot_sets: Vec<[usize; 3]> =
        (0..6).flat_map(|a| (a + 1..6).flat_map(move |b| (b + 1..6).map(move |c| [a, b, c]))).collect();
    let mut domain = 0u64;
    let mut found = Vec::new();
    for piv in pivot_sets {
        let rows = echelon_rows(&piv, p);
        domain += rows.iter().map(|r| r.len() as u64).product::<u64>();
        let hits: Vec<[Vec<u64>; 3]> = rows[0]
            .par_iter()
            .flat_map_iter(|r0| {
                let mut local = Vec::new();
                for r1 in rows[1].iter().filter(|r1| iso(r0, r1)) {
                    for r2 in rows[2].iter().filter(|r2| iso(r0, r2) && iso(r1, r2)) {
                        local.push([r0.clone(), r1.clone(), r2.clone()]);
                    }
                }
                local
            })
            .collect();
        found.extend(hits);
    }
    (found, domain)
}

/// `θ(k1, k2)` as a linear functional on the 15 coefficients of `θ`.
fn plucker_row(k1: &[u64], k2: &[u64], p: u64) -> Vec<u64> {
    pairs().into_iter().map(|(i, j)| (k1[i] * k2[j] % p + p - k1[j] * k2[i] % p) % p).collect()
}

/// Basis over F_p of the forms vanishing on the kernel of every member of the plane.
pub fn scroll_span_mod(b: &LinearSystem<Rational>, p: u64) -> Vec<Vec<u64>> {
    let gens: Vec<[u64; 15]> = b.generators().iter().map(|g| coeffs_mod(g, p)).collect();
    let mut rows = Vec::new();
    for x in projective_points(gens.len(), p) {
        let m = skew_mod(&combine(&gens, &x, p), p);
        let kernel = nullspace_mod(&m, 6, p);
        if kernel.len() == 2 {
            rows.push(plucker_row(&kernel[0], &kernel[1], p));
        }
    }
    nullspace_mod(&rows, 15, p)
}

/// Rank-2 points of `P(span)(F_p)` for a basis given mod p.
pub fn rank2_in_span_mod(basis: &[Vec<u64>], p: u64) -> u64 {
    let gens: Vec<[u64; 15]> = basis.iter().map(|v| std::array::from_fn(|k| v[k])).collect();
    projective_points(gens.len(), p)
        .par_iter()
        .filter(|x| rank_mod(skew_mod(&combine(&gens, x, p), p), p) == 2)
        .count() as u64
}

/// `ω∧ω` coefficients through 4×4 principal Pfaffians: `2·Pf(M[ijkl])`.
pub fn wedge_square_q(m: &[Vec<Q>]) -> Vec<Q> {
    let mut out = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                for l in k + 1..6 {
                    let idx = [i, j, k, l];
                    let sub: Vec<Vec<Q>> = idx.iter().map(|&r| idx.iter().map(|&c| m[r][c].clone()).collect()).collect();
                    out.push(pf_matchings(&sub) * q(2));
                }
            }
        }
    }
    out
}

pub fn is_square(x: &Q) -> bool {
    if x.is_negative() {
        return false;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    &rn * &rn == *n && &rd * &rd == *d
}
