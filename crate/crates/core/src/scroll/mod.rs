//! The threefold scroll attached to a general-type plane: the conic bundle `ψ`, its
//! linear span `Λ`, membership tests and finite-field point counts.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::dispatch_prime;
use crate::exterior::{AlternatingForm, BiVector, DIM};
use crate::linsys::LinearSystem;
use crate::planes::{recover_cdf, CdfDatum};
use crate::scalars::{check_primes, projective_count, projective_point, Field, Fp, Matrix, Rational, Ring};
use crate::{Error, Result};

/// A general-type plane with its `(C, D, f)` datum and the span `Λ` of its scroll.
#[derive(Clone, Debug)]
pub struct ScrollDatum {
    pub plane: LinearSystem<Rational>,
    pub cdf: CdfDatum,
    /// Basis of the span of the Gauss images of the plane's members, inside ∧²W.
    pub gauss_span: Vec<BiVector<Rational>>,
    /// Basis of `Λ`, the forms pairing to zero with `gauss_span`.
    pub lambda: Vec<AlternatingForm<Rational>>,
}

/// The three coefficient forms of `ψ(ω, t) = t0²·A0 + t0t1·A1 + t1²·A2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConicParam {
    pub a0: AlternatingForm<Rational>,
    pub a1: AlternatingForm<Rational>,
    pub a2: AlternatingForm<Rational>,
}

impl ConicParam {
    pub fn at(&self, t: [&Rational; 2]) -> AlternatingForm<Rational> {
        let [t0, t1] = t;
        self.a0.scale(&(t0.clone() * t0.clone())) + self.a1.scale(&(t0.clone() * t1.clone())) + self.a2.scale(&(t1.clone() * t1.clone()))
    }
}

fn bivector_rows(vs: &[BiVector<Rational>]) -> Vec<BiVector<Rational>> {
    let rows: Vec<&[Rational; 15]> = vs.iter().map(|v| v.coeffs()).collect();
    let (m, piv) = Matrix::from_rows(&rows, 15).rref();
    (0..piv.len()).map(|r| BiVector::from_coeffs(std::array::from_fn(|k| m[(r, k)].clone()))).collect()
}

impl ScrollDatum {
    pub fn new(plane: &LinearSystem<Rational>) -> Result<Self> {
        let cdf = recover_cdf(plane)?;
        let g = plane.generators();
        // The Gauss map is quadratic, so images at ω_i and ω_i + ω_j span the image of the plane.
        let mut members = g.to_vec();
        for i in 0..3 {
            for j in i + 1..3 {
                members.push(g[i].clone() + g[j].clone());
            }
        }
        let images = members.iter().map(|w| w.gauss_map()).collect::<Result<Vec<_>>>()?;
        let gauss_span = bivector_rows(&images);
        let rows: Vec<&[Rational; 15]> = gauss_span.iter().map(|b| b.coeffs()).collect();
        let lambda = Matrix::from_rows(&rows, 15)
            .nullspace()
            .into_iter()
            .map(|v| AlternatingForm::from_coeffs(v.try_into().unwrap_or_else(|_| unreachable!())))
            .collect();
        Ok(ScrollDatum { plane: plane.clone(), cdf, gauss_span, lambda })
    }

    /// Coordinates of `ω` on the forms `Φ(c0,c1), Φ(c0,c2), Φ(c1,c2)`.
    fn phi_coords(&self, omega: &AlternatingForm<Rational>) -> Result<Vec<Rational>> {
        let basis = self.cdf.basis_forms();
        let m = Matrix::from_fn(15, 3, |r, c| basis[c].coeffs()[r].clone());
        m.solve(omega.coeffs()).ok_or(Error::NotInPlane)
    }

    /// `x∧y ∈ ∧²C` with `ω = x∧f(y) − y∧f(x)`.
    pub fn rho(&self, omega: &AlternatingForm<Rational>) -> Result<AlternatingForm<Rational>> {
        Ok(self.conic(omega)?.a0)
    }

    /// The degree-2 parametrization of the conic over `ω`.
    pub fn conic(&self, omega: &AlternatingForm<Rational>) -> Result<ConicParam> {
        let coords = self.phi_coords(omega)?;
        Ok(self.conic_from_coords(&coords))
    }

    fn conic_from_coords(&self, coords: &[Rational]) -> ConicParam {
        let c = self.cdf.c.basis();
        let fc: Vec<[Rational; DIM]> = (0..3)
            .map(|i| self.cdf.image(&(0..3).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect::<Vec<_>>()))
            .collect();
        let mut out = ConicParam { a0: AlternatingForm::zero(), a1: AlternatingForm::zero(), a2: AlternatingForm::zero() };
        for (k, &(a, b)) in [(0, 1), (0, 2), (1, 2)].iter().enumerate() {
            let s = &coords[k];
            out.a0 = out.a0 + AlternatingForm::wedge(&c[a], &c[b]).scale(s);
            out.a1 = out.a1 + (AlternatingForm::wedge(&c[a], &fc[b]) + AlternatingForm::wedge(&fc[a], &c[b])).scale(s);
            out.a2 = out.a2 + AlternatingForm::wedge(&fc[a], &fc[b]).scale(s);
        }
        out
    }

    /// `ψ(ω, [t0 : t1]) = (t0·x + t1·f(x)) ∧ (t0·y + t1·f(y))` where `ρ(ω) = x∧y`.
    pub fn psi(&self, omega: &AlternatingForm<Rational>, t: [&Rational; 2]) -> Result<AlternatingForm<Rational>> {
        if t[0].is_zero() && t[1].is_zero() {
            return Err(Error::Precondition("[0:0] is not a point of P¹".into()));
        }
        Ok(self.conic(omega)?.at(t))
    }

    /// Fiber points at the given parameters.
    pub fn conic_fiber(&self, omega: &AlternatingForm<Rational>, ts: &[[Rational; 2]]) -> Result<Vec<AlternatingForm<Rational>>> {
        let c = self.conic(omega)?;
        Ok(ts.iter().map(|t| c.at([&t[0], &t[1]])).collect())
    }

    /// All `p + 1` fiber points over F_p, as normalized coefficient vectors.
    pub fn conic_fiber_mod(&self, omega: &AlternatingForm<Rational>, p: u32) -> Result<Vec<[u32; 15]>> {
        check_primes(&[p])?;
        let c = self.conic(omega)?;
        dispatch_prime!(p, fiber_mod(&c))?
    }

    pub fn in_lambda(&self, theta: &AlternatingForm<Rational>) -> bool {
        self.gauss_span.iter().all(|b| b.pair(theta).is_zero())
    }

    /// `θ` is a nonzero decomposable form in `Λ`.
    pub fn z_membership(&self, theta: &AlternatingForm<Rational>) -> bool {
        !theta.is_zero() && self.in_lambda(theta) && theta.wedge_square().is_zero()
    }

    /// Projective dimension of the span of the Plücker quadrics restricted to `Λ`.
    pub fn restricted_quadric_system_dim(&self) -> usize {
        quadric_system_dim(&self.lambda)
    }

    /// `|Z(F_p)|` as the number of distinct points `ψ(ω, t)` with `ω ∈ P(B)(F_p)`, `t ∈ P¹(F_p)`.
    pub fn z_point_count(&self, p: u32) -> Result<u64> {
        check_primes(&[p])?;
        let basis: Vec<ConicParam> = (0..3)
            .map(|k| self.conic_from_coords(&(0..3).map(|i| if i == k { Rational::one() } else { Rational::zero() }).collect::<Vec<_>>()))
            .collect();
        dispatch_prime!(p, image_count(&basis))?
    }

    /// `|P(Λ)(F_p) ∩ Gr(2, W*)|` by enumerating `P(Λ)(F_p)`.
    pub fn lambda_gr_count(&self, p: u32) -> Result<u64> {
        check_primes(&[p])?;
        dispatch_prime!(p, rank2_in_span(&self.lambda))?
    }
}

fn reduce_form<const P: u32>(f: &AlternatingForm<Rational>) -> Result<AlternatingForm<Fp<P>>> {
    let c: Vec<Fp<P>> = f.coeffs().iter().map(|x| x.reduce_mod::<P>()).collect::<Result<_>>()?;
    Ok(AlternatingForm::from_coeffs(c.try_into().unwrap_or_else(|_| unreachable!())))
}

fn normalized<const P: u32>(f: &AlternatingForm<Fp<P>>) -> Option<[u32; 15]> {
    let lead = f.coeffs().iter().find(|x| !x.is_zero())?.inv()?;
    Some(f.coeffs().map(|x| (x * lead).value()))
}

fn conic_mod<const P: u32>(c: &ConicParam) -> Result<[AlternatingForm<Fp<P>>; 3]> {
    Ok([reduce_form::<P>(&c.a0)?, reduce_form::<P>(&c.a1)?, reduce_form::<P>(&c.a2)?])
}

fn at_mod<const P: u32>(c: &[AlternatingForm<Fp<P>>; 3], t: &[Fp<P>]) -> AlternatingForm<Fp<P>> {
    c[0].scale(&(t[0] * t[0])) + c[1].scale(&(t[0] * t[1])) + c[2].scale(&(t[1] * t[1]))
}

fn fiber_mod<const P: u32>(c: &ConicParam) -> Result<Vec<[u32; 15]>> {
    let c = conic_mod::<P>(c)?;
    (0..projective_count(P, 2))
        .map(|i| normalized(&at_mod(&c, &projective_point::<P>(2, i))).ok_or(Error::BadPrime(P)))
        .collect()
}

fn image_count<const P: u32>(basis: &[ConicParam]) -> Result<u64> {
    let reduced = basis.iter().map(conic_mod::<P>).collect::<Result<Vec<_>>>()?;
    let mut seen: HashSet<[u32; 15]> = HashSet::new();
    for i in 0..projective_count(P, 3) {
        let w = projective_point::<P>(3, i);
        let c: [AlternatingForm<Fp<P>>; 3] = std::array::from_fn(|k| {
            AlternatingForm::combination(&[reduced[0][k].clone(), reduced[1][k].clone(), reduced[2][k].clone()], &w)
        });
        for j in 0..projective_count(P, 2) {
            if let Some(v) = normalized(&at_mod(&c, &projective_point::<P>(2, j))) {
                seen.insert(v);
            }
        }
    }
    Ok(seen.len() as u64)
}

fn rank2_in_span<const P: u32>(basis: &[AlternatingForm<Rational>]) -> Result<u64> {
    let red = basis.iter().map(reduce_form::<P>).collect::<Result<Vec<_>>>()?;
    let total = projective_count(P, red.len());
    Ok((0..total)
        .into_par_iter()
        .filter(|&i| {
            let f = AlternatingForm::combination(&red, &projective_point::<P>(red.len(), i));
            !f.is_zero() && f.wedge_square().is_zero()
        })
        .count() as u64)
}

/// Projective dimension of the span of the 15 quadrics `∧²(Σ X_i θ_i)` in `X_0..X_{m-1}`.
pub fn quadric_system_dim(basis: &[AlternatingForm<Rational>]) -> usize {
    let m = basis.len();
    let squares: Vec<[Rational; 15]> = basis.iter().map(|t| t.wedge_square().coeffs().clone()).collect();
    let mut columns: Vec<[Rational; 15]> = squares.clone();
    for i in 0..m {
        for j in i + 1..m {
            let mixed = (basis[i].clone() + basis[j].clone()).wedge_square();
            columns.push(std::array::from_fn(|q| mixed.coeffs()[q].clone() - squares[i][q].clone() - squares[j][q].clone()));
        }
    }
    let rank = Matrix::from_fn(15, columns.len(), |q, c| columns[c][q].clone()).rank();
    rank.saturating_sub(1)
}
