use std::ops::{Add, Neg, Sub};

use super::{pair_index, Ambient, Subspace, DIM, PAIRS, QUADS};
use crate::scalars::{Field, Matrix, Ring};
use crate::{Error, Result};

/// Skew form on W: coefficients on `e_i∧e_j`, `i < j`, in [`PAIRS`] order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlternatingForm<F> {
    c: [F; 15],
}

/// Element of ∧²W: coefficients on `u_i∧u_j`, `i < j`, in [`PAIRS`] order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BiVector<F> {
    c: [F; 15],
}

/// Element of ∧⁴W*: coefficients on `e_i∧e_j∧e_k∧e_l` in [`QUADS`] order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FourVector<F> {
    c: [F; 15],
}

/// Recursive first-row expansion; `Pf(e1∧e2 + e3∧e4 + e5∧e6) = 1`.
pub fn pfaffian_of<R: Ring>(m: &[Vec<R>]) -> R {
    let idx: Vec<usize> = (0..m.len()).collect();
    pf_rec(m, &idx)
}

fn pf_rec<R: Ring>(m: &[Vec<R>], idx: &[usize]) -> R {
    match idx.len() {
        0 => R::one(),
        n if n % 2 == 1 => R::zero(),
        _ => {
            let first = idx[0];
            let mut acc = R::zero();
            for k in 1..idx.len() {
                let a = &m[first][idx[k]];
                if a.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != idx[k]).collect();
                let term = a.clone() * pf_rec(m, &rest);
                acc = if k % 2 == 1 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// `2(a_ij a_kl − a_ik a_jl + a_il a_jk)` for every 4-tuple: the square in ∧⁴.
fn square_coeffs<R: Ring>(c: &[R; 15]) -> [R; 15] {
    let m = |i: usize, j: usize| &c[pair_index(i, j)];
    std::array::from_fn(|q| {
        let [i, j, k, l] = QUADS[q];
        let s = m(i, j).clone() * m(k, l).clone() - m(i, k).clone() * m(j, l).clone()
            + m(i, l).clone() * m(j, k).clone();
        s.clone() + s
    })
}

fn skew_entry<R: Ring>(c: &[R; 15], i: usize, j: usize) -> R {
    use std::cmp::Ordering::*;
    match i.cmp(&j) {
        Less => c[pair_index(i, j)].clone(),
        Greater => -c[pair_index(j, i)].clone(),
        Equal => R::zero(),
    }
}

fn skew_matrix<R: Ring>(c: &[R; 15]) -> Matrix<R> {
    Matrix::from_fn(DIM, DIM, |i, j| skew_entry(c, i, j))
}

impl<F: Ring> AlternatingForm<F> {
    pub fn zero() -> Self {
        AlternatingForm { c: std::array::from_fn(|_| F::zero()) }
    }

    pub fn from_coeffs(c: [F; 15]) -> Self {
        AlternatingForm { c }
    }

    pub fn coeffs(&self) -> &[F; 15] {
        &self.c
    }

    /// `e_i∧e_j` with 1-based indices; `i > j` gives the negated basis tensor.
    pub fn elementary(i: usize, j: usize) -> Self {
        assert!((1..=DIM).contains(&i) && (1..=DIM).contains(&j) && i != j, "bad indices");
        let mut f = Self::zero();
        if i < j {
            f.c[pair_index(i - 1, j - 1)] = F::one();
        } else {
            f.c[pair_index(j - 1, i - 1)] = -F::one();
        }
        f
    }

    /// `x∧y` for covectors given by their coordinates on `e1..e6`.
    pub fn wedge(x: &[F; DIM], y: &[F; DIM]) -> Self {
        AlternatingForm {
            c: std::array::from_fn(|k| {
                let (i, j) = PAIRS[k];
                x[i].clone() * y[j].clone() - x[j].clone() * y[i].clone()
            }),
        }
    }

    /// `M[i][j]` (0-based) of the skew matrix.
    pub fn entry(&self, i: usize, j: usize) -> F {
        skew_entry(&self.c, i, j)
    }

    pub fn matrix(&self) -> Matrix<F> {
        skew_matrix(&self.c)
    }

    /// Reads the strict upper triangle of a square 6×6 matrix.
    pub fn from_matrix(m: &Matrix<F>) -> Self {
        AlternatingForm { c: std::array::from_fn(|k| m[PAIRS[k]].clone()) }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Ring::is_zero)
    }

    /// `ω(u, v) = uᵀ M v`.
    pub fn eval(&self, u: &[F; DIM], v: &[F; DIM]) -> F {
        let mut acc = F::zero();
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            if self.c[k].is_zero() {
                continue;
            }
            let t = u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone();
            if !t.is_zero() {
                acc = acc + self.c[k].clone() * t;
            }
        }
        acc
    }

    /// The covector `ω(u, ·)`.
    pub fn contract(&self, u: &[F; DIM]) -> [F; DIM] {
        std::array::from_fn(|j| {
            let mut acc = F::zero();
            for (i, ui) in u.iter().enumerate() {
                if i != j && !ui.is_zero() {
                    acc = acc + ui.clone() * skew_entry(&self.c, i, j);
                }
            }
            acc
        })
    }

    pub fn pfaffian(&self) -> F {
        pfaffian_of(&self.matrix().rows_vec())
    }

    /// `ω∧ω`.
    pub fn wedge_square(&self) -> FourVector<F> {
        FourVector { c: square_coeffs(&self.c) }
    }

    pub fn scale(&self, s: &F) -> Self {
        AlternatingForm { c: std::array::from_fn(|k| self.c[k].clone() * s.clone()) }
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> AlternatingForm<G> {
        AlternatingForm { c: std::array::from_fn(|k| f(&self.c[k])) }
    }

    /// `Σ coeffs[k] · forms[k]`.
    pub fn combination(forms: &[Self], coeffs: &[F]) -> Self {
        assert_eq!(forms.len(), coeffs.len(), "length mismatch");
        let mut acc = Self::zero();
        for (f, a) in forms.iter().zip(coeffs) {
            if !a.is_zero() {
                acc = acc + f.scale(a);
            }
        }
        acc
    }

    /// Whether `ω(u, v) = 0` for all basis vectors of both lists.
    pub fn vanishes_on(&self, us: &[[F; DIM]], vs: &[[F; DIM]]) -> bool {
        us.iter().all(|u| {
            let c = self.contract(u);
            vs.iter().all(|v| dot(&c, v).is_zero())
        })
    }
}

pub(crate) fn dot<F: Ring>(a: &[F; DIM], b: &[F; DIM]) -> F {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x.clone() * y.clone();
        }
    }
    acc
}

impl<F: Field> AlternatingForm<F> {
    /// Rank of the skew matrix: 0, 2, 4 or 6.
    pub fn rank(&self) -> usize {
        self.matrix().rank()
    }

    /// `{u : ω(u, ·) = 0}`.
    pub fn kernel(&self) -> Subspace<F> {
        let null = self.matrix().nullspace();
        let vecs: Vec<[F; DIM]> = null.into_iter().map(to_array).collect();
        Subspace::span(Ambient::W, &vecs)
    }

    /// The 2-plane `L_ω ⊂ W*` of a rank-2 form: the row space of its matrix.
    pub fn support_plane(&self) -> Subspace<F> {
        let rows: Vec<[F; DIM]> = self.matrix().rows_vec().into_iter().map(to_array).collect();
        Subspace::span(Ambient::WDual, &rows)
    }

    /// Gauss map: the bivector dual to `ω∧ω`, spanning `ker ω`. Requires rank 4.
    pub fn gauss_map(&self) -> Result<BiVector<F>> {
        let r = self.rank();
        if r != 4 {
            return Err(Error::RankError { required: 4, actual: r });
        }
        Ok(self.wedge_square().hodge())
    }

    /// Tangent space to the Grassmannian of decomposable forms at a rank-2 form.
    pub fn tangent_space(&self) -> Result<TangentSpace<F>> {
        let r = self.rank();
        if r != 2 {
            return Err(Error::RankError { required: 2, actual: r });
        }
        Ok(TangentSpace { kernel: self.kernel() })
    }
}

pub(crate) fn to_array<F: Ring>(v: Vec<F>) -> [F; DIM] {
    v.try_into().unwrap_or_else(|_| panic!("expected a 6-vector"))
}

impl<F: Ring> Add for AlternatingForm<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut it = self.c.into_iter().zip(o.c).map(|(a, b)| a + b);
        AlternatingForm { c: std::array::from_fn(|_| it.next().expect("15")) }
    }
}

impl<F: Ring> Sub for AlternatingForm<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<F: Ring> Neg for AlternatingForm<F> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|x| -x.clone())
    }
}

impl<F: Ring> FourVector<F> {
    pub fn coeffs(&self) -> &[F; 15] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Ring::is_zero)
    }

    /// Identification ∧⁴W* ≅ ∧²W against `e1∧…∧e6`: `⟨hodge(α), θ⟩ = coeff of α∧θ`.
    pub fn hodge(&self) -> BiVector<F> {
        let mut out: [F; 15] = std::array::from_fn(|_| F::zero());
        for (q, quad) in QUADS.iter().enumerate() {
            let rest: Vec<usize> = (0..DIM).filter(|x| !quad.contains(x)).collect();
            let mut perm = quad.to_vec();
            perm.extend(&rest);
            let inversions =
                (0..DIM).flat_map(|a| (a + 1..DIM).map(move |b| (a, b))).filter(|&(a, b)| perm[a] > perm[b]).count();
            let v = self.c[q].clone();
            out[pair_index(rest[0], rest[1])] = if inversions % 2 == 0 { v } else { -v };
        }
        BiVector { c: out }
    }
}

impl<F: Ring> BiVector<F> {
    pub fn zero() -> Self {
        BiVector { c: std::array::from_fn(|_| F::zero()) }
    }

    pub fn from_coeffs(c: [F; 15]) -> Self {
        BiVector { c }
    }

    pub fn coeffs(&self) -> &[F; 15] {
        &self.c
    }

    /// `u_i∧u_j` with 1-based indices.
    pub fn elementary(i: usize, j: usize) -> Self {
        let f = AlternatingForm::<F>::elementary(i, j);
        BiVector { c: f.c }
    }

    pub fn wedge(u: &[F; DIM], v: &[F; DIM]) -> Self {
        BiVector { c: AlternatingForm::wedge(u, v).c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Ring::is_zero)
    }

    /// `Σ b_ij m_ij`.
    pub fn pair(&self, form: &AlternatingForm<F>) -> F {
        let mut acc = F::zero();
        for (a, b) in self.c.iter().zip(&form.c) {
            if !a.is_zero() && !b.is_zero() {
                acc = acc + a.clone() * b.clone();
            }
        }
        acc
    }

    /// The wedge square in ∧⁴W vanishes.
    pub fn is_decomposable(&self) -> bool {
        square_coeffs(&self.c).iter().all(Ring::is_zero)
    }

    pub fn scale(&self, s: &F) -> Self {
        BiVector { c: std::array::from_fn(|k| self.c[k].clone() * s.clone()) }
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> BiVector<G> {
        BiVector { c: std::array::from_fn(|k| f(&self.c[k])) }
    }
}

impl<F: Field> BiVector<F> {
    /// Span of the bivector as a subspace of W (2-dimensional when decomposable).
    pub fn plane(&self) -> Subspace<F> {
        let rows: Vec<[F; DIM]> = skew_matrix(&self.c).rows_vec().into_iter().map(to_array).collect();
        Subspace::span(Ambient::W, &rows)
    }
}

/// Membership test for the tangent space at a rank-2 form.
#[derive(Clone, Debug)]
pub struct TangentSpace<F> {
    kernel: Subspace<F>,
}

impl<F: Field> TangentSpace<F> {
    /// `θ` restricted to the 4-dimensional kernel of the base point vanishes.
    pub fn contains(&self, theta: &AlternatingForm<F>) -> bool {
        let b = self.kernel.basis();
        (0..b.len()).all(|a| (a + 1..b.len()).all(|c| theta.eval(&b[a], &b[c]).is_zero()))
    }

    pub fn kernel(&self) -> &Subspace<F> {
        &self.kernel
    }
}
