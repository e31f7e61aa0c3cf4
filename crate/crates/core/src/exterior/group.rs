use super::form::to_array;
use super::{AlternatingForm, Ambient, Subspace, DIM};
use crate::scalars::{Field, Matrix};
use crate::{Error, Result};

/// Invertible 6×6 matrix acting by `M ↦ g M gᵀ` on forms.
///
/// Covectors transform as `x ↦ g x`, vectors of W as `u ↦ g⁻ᵀ u`, so pairings are preserved.
#[derive(Clone, PartialEq, Debug)]
pub struct GroupElement<F> {
    m: Matrix<F>,
    inv: Matrix<F>,
}

impl<F: Field> GroupElement<F> {
    pub fn new(m: Matrix<F>) -> Result<Self> {
        assert!(m.nrows() == DIM && m.ncols() == DIM, "group elements are 6×6");
        let inv = m.inverse().ok_or(Error::Singular)?;
        Ok(GroupElement { m, inv })
    }

    pub fn identity() -> Self {
        GroupElement { m: Matrix::identity(DIM), inv: Matrix::identity(DIM) }
    }

    /// Diagonal element; panics on a zero entry.
    pub fn diagonal(d: &[F; DIM]) -> Self {
        let m = Matrix::from_fn(DIM, DIM, |i, j| if i == j { d[i].clone() } else { F::zero() });
        Self::new(m).expect("nonzero diagonal")
    }

    /// Coordinate permutation: `(g·ω)[a][b] = ω[perm[a]][perm[b]]`.
    pub fn permutation(perm: [usize; DIM]) -> Self {
        let m = Matrix::from_fn(DIM, DIM, |a, i| if perm[a] == i { F::one() } else { F::zero() });
        Self::new(m).expect("permutation")
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.m
    }

    pub fn det(&self) -> F {
        self.m.det()
    }

    pub fn inverse(&self) -> Self {
        GroupElement { m: self.inv.clone(), inv: self.m.clone() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        GroupElement { m: self.m.mul(&other.m), inv: other.inv.mul(&self.inv) }
    }

    /// `g · ω` with matrix `g M_ω gᵀ`.
    pub fn act(&self, form: &AlternatingForm<F>) -> AlternatingForm<F> {
        let m = self.m.mul(&form.matrix()).mul(&self.m.transpose());
        AlternatingForm::from_matrix(&m)
    }

    pub fn act_covector(&self, x: &[F; DIM]) -> [F; DIM] {
        to_array(self.m.mul_vec(x))
    }

    pub fn act_vector(&self, u: &[F; DIM]) -> [F; DIM] {
        to_array(self.inv.transpose().mul_vec(u))
    }

    /// Image of a subspace of W or W* under the induced action.
    pub fn transport(&self, s: &Subspace<F>) -> Subspace<F> {
        let vecs: Vec<[F; DIM]> = match s.ambient() {
            Ambient::W => s.basis().iter().map(|u| self.act_vector(u)).collect(),
            Ambient::WDual => s.basis().iter().map(|x| self.act_covector(x)).collect(),
        };
        Subspace::span(s.ambient(), &vecs)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Result<GroupElement<G>> {
        GroupElement::new(self.m.map(f))
    }
}
