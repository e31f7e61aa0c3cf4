//! Exact isotropic 3-spaces through three complementary kernel lines.

use crate::exterior::{AlternatingForm, Ambient, Subspace, DIM};
use crate::linsys::LinearSystem;
use crate::planes;
use crate::scalars::solve::{solve_system, SolveError};
use crate::scalars::{MultiPoly, Rational, Ring};
use crate::{Error, Result};

type Poly = MultiPoly<Rational>;

/// All 3-spaces `⟨k0, k1, k2⟩` with `k_i ∈ kernels[i]` that are isotropic for every form of `a`.
///
/// The kernels must be planes with `kernels[0] ⊕ kernels[1] ⊕ kernels[2] = W`. Each factor
/// `P(kernels[i])` is covered by the charts `[1:x]` and `[0:1]` on its echelon basis, and the
/// eight product charts are solved exactly. The result is sorted canonically.
pub fn isotropic3_on_kernels(a: &LinearSystem<Rational>, kernels: &[Subspace<Rational>; 3]) -> Result<Vec<Subspace<Rational>>> {
    if kernels.iter().any(|k| k.ambient() != Ambient::W || k.dim() != 2) {
        return Err(Error::Precondition("kernels must be planes in W".into()));
    }
    if kernels[0].sum(&kernels[1]).sum(&kernels[2]).dim() != DIM {
        return Err(Error::Precondition("kernels do not span W".into()));
    }
    let mut found: Vec<Subspace<Rational>> = Vec::new();
    for chart in 0..8u32 {
        let at_infinity = |i: usize| chart >> i & 1 == 1;
        let vecs: Vec<[Poly; DIM]> = (0..3)
            .map(|i| {
                let [a0, b0] = [&kernels[i].basis()[0], &kernels[i].basis()[1]];
                std::array::from_fn(|r| {
                    if at_infinity(i) {
                        Poly::constant(b0[r].clone(), 3)
                    } else {
                        Poly::constant(a0[r].clone(), 3) + Poly::var(i, 3).scale(&b0[r])
                    }
                })
            })
            .collect();
        let eqs: Vec<Poly> = a
            .generators()
            .iter()
            .flat_map(|g| [(0, 1), (0, 2), (1, 2)].map(|(j, l)| pairing(g, &vecs[j], &vecs[l])))
            .collect();
        let unknowns: Vec<usize> = (0..3).filter(|&i| !at_infinity(i)).collect();
        let sols = solve_system(&eqs, &unknowns, 3).map_err(|e| match e {
            SolveError::PositiveDimensional => {
                Error::Precondition("the isotropic 3-spaces form a positive-dimensional family".into())
            }
            other => Error::Precondition(format!("isotropic 3-space system: {other}")),
        })?;
        for s in sols {
            let basis: Vec<[Rational; DIM]> = vecs
                .iter()
                .map(|v| std::array::from_fn(|r| v[r].eval(&s).expect("three variables")))
                .collect();
            let u = Subspace::span(Ambient::W, &basis);
            if u.dim() == 3 && !found.contains(&u) {
                found.push(u);
            }
        }
    }
    found.sort_by(|x, y| x.canonical_cmp(y));
    Ok(found)
}

fn pairing(g: &AlternatingForm<Rational>, x: &[Poly; DIM], y: &[Poly; DIM]) -> Poly {
    let mut acc = Poly::zero_in(3);
    for i in 0..DIM {
        for j in 0..DIM {
            let c = g.entry(i, j);
            if !c.is_zero() {
                acc = acc + (x[i].clone() * y[j].clone()).scale(&c);
            }
        }
    }
    acc
}

/// Isotropic 3-spaces of a system whose first three generators are exactly the general-type normal form.
pub fn isotropic3_candidates_for_pi_g(a: &LinearSystem<Rational>) -> Result<Vec<Subspace<Rational>>> {
    let normal = planes::pi_g();
    if a.dim() < 3 || a.generators()[..3] != *normal.generators() {
        return Err(Error::Precondition("the first three generators are not the general-type normal form".into()));
    }
    let kernels = [[3, 6], [2, 4], [1, 5]].map(|idx| Subspace::coordinate(Ambient::W, &idx));
    isotropic3_on_kernels(a, &kernels)
}
