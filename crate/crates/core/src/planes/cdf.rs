use serde::Serialize;

use super::pi_g;
use crate::exterior::{AlternatingForm, Ambient, GroupElement, Subspace, DIM};
use crate::linsys::LinearSystem;
use crate::sample;
use crate::scalars::{Field, Matrix, Rational, Ring};
use crate::stability::isotropic3_on_kernels;
use crate::{Error, Result};

/// Disjoint 3-spaces `C, D ⊂ W*` and an isomorphism `f: C → D` such that the plane is
/// `{x∧f(y) − y∧f(x) : x, y ∈ C}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CdfDatum {
    pub c: Subspace<Rational>,
    pub d: Subspace<Rational>,
    /// `f(c_i) = Σ_j f[i][j]·d_j` on the echelon bases of `C` and `D`.
    pub f: Vec<Vec<Rational>>,
}

impl CdfDatum {
    /// `f(x)` for `x ∈ C`.
    pub fn apply(&self, x: &[Rational; DIM]) -> Result<[Rational; DIM]> {
        let coords = coordinates(&self.c, x).ok_or(Error::NotInPlane)?;
        Ok(self.image(&coords))
    }

    /// `f(Σ a_i c_i)`.
    pub fn image(&self, coords: &[Rational]) -> [Rational; DIM] {
        std::array::from_fn(|k| {
            (0..3)
                .flat_map(|i| (0..3).map(move |j| (i, j)))
                .fold(Rational::zero(), |acc, (i, j)| {
                    acc + coords[i].clone() * self.f[i][j].clone() * self.d.basis()[j][k].clone()
                })
        })
    }

    /// `x∧f(y) − y∧f(x)`.
    pub fn phi(&self, x: &[Rational; DIM], y: &[Rational; DIM]) -> Result<AlternatingForm<Rational>> {
        Ok(AlternatingForm::wedge(x, &self.apply(y)?) - AlternatingForm::wedge(y, &self.apply(x)?))
    }

    /// `Φ(c_a, c_b)` for the basis pairs `(0,1), (0,2), (1,2)`.
    pub fn basis_forms(&self) -> Vec<AlternatingForm<Rational>> {
        let c = self.c.basis();
        [(0, 1), (0, 2), (1, 2)].iter().map(|&(a, b)| self.phi(&c[a], &c[b]).expect("basis of C")).collect()
    }
}

/// Basis of the operators `K` on `W` with `M_ω·K` symmetric for every generator `ω`.
///
/// Its dimension is an orbit invariant: 1 for the general type, 3 for the pencil type and 6
/// for the tangent and hyperplane types.
pub fn symmetrizers(b: &LinearSystem<Rational>) -> Vec<Matrix<Rational>> {
    let mut rows = Vec::new();
    for g in b.generators() {
        let m = g.matrix();
        for i in 0..DIM {
            for j in i + 1..DIM {
                let mut row = vec![Rational::zero(); DIM * DIM];
                for k in 0..DIM {
                    row[DIM * k + j] = row[DIM * k + j].clone() + m[(i, k)].clone();
                    row[DIM * k + i] = row[DIM * k + i].clone() - m[(j, k)].clone();
                }
                rows.push(row);
            }
        }
    }
    Matrix::from_rows(&rows, DIM * DIM)
        .nullspace()
        .into_iter()
        .map(|v| Matrix::from_fn(DIM, DIM, |r, c| v[DIM * r + c].clone()))
        .collect()
}

/// The operator `K` of a general-type plane: `K² = λ·I`, trace zero, and every member
/// satisfies `ω(Ku, Kv) = −λ·ω(u, v)`. Its two eigenspaces are the plane's isotropic
/// 3-spaces; they are defined over ℚ exactly when `λ` is a square.
#[derive(Clone, Debug, PartialEq)]
pub struct SplittingOperator {
    pub matrix: Matrix<Rational>,
    pub square: Rational,
}

impl SplittingOperator {
    /// A rational square root of `λ`, if there is one.
    pub fn root(&self) -> Option<Rational> {
        let (n, d) = (self.square.numer(), self.square.denom());
        if n.sign() == num_bigint::Sign::Minus {
            return None;
        }
        let (rn, rd) = (n.sqrt(), d.sqrt());
        (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::from_bigints(rn, rd).expect("nonzero"))
    }

    /// `M_ω·K` is symmetric: `ω` vanishes on both eigenspaces.
    pub fn preserves(&self, omega: &AlternatingForm<Rational>) -> bool {
        let mk = omega.matrix().mul(&self.matrix);
        (0..DIM).all(|i| (0..DIM).all(|j| mk[(i, j)] == mk[(j, i)]))
    }

    /// The eigenspaces for `+√λ` and `−√λ` when `λ` is a rational square.
    pub fn eigenspaces(&self) -> Option<[Subspace<Rational>; 2]> {
        let r = self.root()?;
        let space = |mu: Rational| {
            let shifted = Matrix::from_fn(DIM, DIM, |i, j| {
                if i == j { self.matrix[(i, j)].clone() - mu.clone() } else { self.matrix[(i, j)].clone() }
            });
            let vs: Vec<[Rational; DIM]> =
                shifted.nullspace().into_iter().map(|v| v.try_into().unwrap_or_else(|_| unreachable!())).collect();
            Subspace::span(Ambient::W, &vs)
        };
        Some([space(r.clone()), space(-r)])
    }
}

/// The splitting operator, when the symmetrizers are one-dimensional and square to a
/// nonzero scalar with trace zero.
pub fn splitting_operator(b: &LinearSystem<Rational>) -> Option<SplittingOperator> {
    let [k] = <[Matrix<Rational>; 1]>::try_from(symmetrizers(b)).ok()?;
    let sq = k.mul(&k);
    let lambda = sq[(0, 0)].clone();
    let scalar = (0..DIM).all(|i| (0..DIM).all(|j| sq[(i, j)] == if i == j { lambda.clone() } else { Rational::zero() }));
    let trace = (0..DIM).fold(Rational::zero(), |acc, i| acc + k[(i, i)].clone());
    (scalar && !lambda.is_zero() && trace.is_zero()).then_some(SplittingOperator { matrix: k, square: lambda })
}

/// Coordinates of `x` on the echelon basis of `s`.
pub(crate) fn coordinates(s: &Subspace<Rational>, x: &[Rational; DIM]) -> Option<Vec<Rational>> {
    let m = Matrix::from_fn(DIM, s.dim(), |r, c| s.basis()[c][r].clone());
    m.solve(x)
}

/// Extra random bases tried when the generators' kernels do not span W.
const KERNEL_RETRIES: usize = 6;

fn spanning_kernels(b: &LinearSystem<Rational>) -> Option<[Subspace<Rational>; 3]> {
    let try_basis = |gens: &[AlternatingForm<Rational>]| -> Option<[Subspace<Rational>; 3]> {
        let ks: Vec<Subspace<Rational>> = gens.iter().map(|g| g.kernel()).collect();
        let total = ks.iter().fold(Subspace::zero(Ambient::W), |acc, k| acc.sum(k));
        (ks.iter().all(|k| k.dim() == 2) && total.dim() == DIM).then(|| [ks[0].clone(), ks[1].clone(), ks[2].clone()])
    };
    if let Some(k) = try_basis(b.generators()) {
        return Some(k);
    }
    let mut rng = sample::rng(sample::DEFAULT_SEED);
    (0..KERNEL_RETRIES).find_map(|_| {
        let gens: Vec<AlternatingForm<Rational>> = (0..3)
            .map(|_| b.combination(&sample::random_combination(&mut rng, b.generators(), 3)))
            .collect();
        LinearSystem::new(gens.clone()).ok()?;
        try_basis(&gens)
    })
}

/// Recovers `(C, D, f)` for a plane of general type.
pub fn recover_cdf(b: &LinearSystem<Rational>) -> Result<CdfDatum> {
    let not_general = |m: &str| Error::NotGeneralType(m.to_string());
    if b.dim() != 3 {
        return Err(not_general("a plane needs 3 generators"));
    }
    let kernels = spanning_kernels(b).ok_or_else(|| not_general("kernels of members do not span W"))?;
    let iso = isotropic3_on_kernels(b, &kernels).map_err(|e| not_general(&e.to_string()))?;
    if iso.len() != 2 {
        return Err(not_general(&format!("{} isotropic 3-spaces instead of 2", iso.len())));
    }
    let c = iso[1].annihilator();
    let d = iso[0].annihilator();
    if c.sum(&d).dim() != DIM {
        return Err(not_general("C and D meet"));
    }

    // Φ_ab(F) is linear in the 9 entries of F; require each to pair to zero with B^⊥.
    let orth = b.orthogonal();
    let basis_maps: Vec<CdfDatum> = (0..9)
        .map(|k| CdfDatum {
            c: c.clone(),
            d: d.clone(),
            f: (0..3).map(|i| (0..3).map(|j| if 3 * i + j == k { Rational::one() } else { Rational::zero() }).collect()).collect(),
        })
        .collect();
    let images: Vec<Vec<AlternatingForm<Rational>>> = basis_maps.iter().map(|m| m.basis_forms()).collect();
    let rows: Vec<Vec<Rational>> = (0..3)
        .flat_map(|pair| orth.iter().map(move |beta| (pair, beta)))
        .map(|(pair, beta)| images.iter().map(|im| beta.pair(&im[pair])).collect())
        .collect();
    let null = Matrix::from_rows(&rows, 9).nullspace();
    if null.len() != 1 {
        return Err(not_general(&format!("{} independent maps f instead of 1", null.len())));
    }
    let f: Vec<Vec<Rational>> = null[0].chunks(3).map(|r| r.to_vec()).collect();
    let datum = CdfDatum { c, d, f };
    if Matrix::from_rows(&datum.f, 3).det().is_zero() {
        return Err(not_general("f is not invertible"));
    }
    let spanned = LinearSystem::new(datum.basis_forms()).map_err(|_| not_general("Φ(C, C) is not a plane"))?;
    if !spanned.same_span(b) {
        return Err(not_general("Φ(C, C) differs from the plane"));
    }
    Ok(datum)
}

/// `g ∈ SL(W)` with `g·B` equal to the general-type normal form.
pub fn normalize_general_plane(b: &LinearSystem<Rational>) -> Result<GroupElement<Rational>> {
    let datum = recover_cdf(b)?;
    let c = datum.c.basis();
    let fc: Vec<[Rational; DIM]> = (0..3)
        .map(|i| {
            let coords: Vec<Rational> = (0..3).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect();
            datum.image(&coords)
        })
        .collect();
    // Columns c1, c2, c3, f(c1), f(c2), f(c3) go to e1, e2, e3, e5, −e4, −e6.
    let cols: Vec<&[Rational; DIM]> = c.iter().chain(fc.iter()).collect();
    let x = Matrix::from_fn(DIM, DIM, |r, k| cols[k][r].clone());
    let targets: [(usize, i64); DIM] = [(0, 1), (1, 1), (2, 1), (4, 1), (3, -1), (5, -1)];
    let t = Matrix::from_fn(DIM, DIM, |r, k| {
        let (row, sign) = targets[k];
        if r == row { Rational::integer(sign) } else { Rational::zero() }
    });
    let g0 = t.mul(&x.inverse().ok_or_else(|| Error::NotGeneralType("C and D meet".into()))?);
    let det = g0.det();
    let q = det.inv().ok_or(Error::Singular)?;
    let one = Rational::one();
    let s = [det, one.clone(), one.clone(), q.clone(), one, q];
    let g = GroupElement::diagonal(&s).compose(&GroupElement::new(g0)?);
    if !b.act(&g).same_span(&pi_g()) {
        return Err(Error::NotGeneralType("normalization did not reach the normal form".into()));
    }
    Ok(g)
}
