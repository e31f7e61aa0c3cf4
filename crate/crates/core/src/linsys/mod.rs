//! Linear systems of forms, their matrix of linear forms and Pfaffian cubic.

mod intersect;

use serde::{Deserialize, Serialize};

use crate::exterior::json::{FormJson, SystemJson};
use crate::exterior::{pfaffian_of, AlternatingForm, BiVector, GroupElement, DIM};
use crate::sample;
use crate::scalars::{Field, Fp, Matrix, MultiPoly, Rational, Ring};
use crate::{Error, Result};

pub use intersect::{gr_intersection, rank2_count, GrIntersectionReport, IntersectionType};

/// Independent generators `ω_0..ω_n` spanning a subspace of ∧²W*.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem<F> {
    gens: Vec<AlternatingForm<F>>,
    echelon: Matrix<F>,
}

impl<F: Field> LinearSystem<F> {
    pub fn new(gens: Vec<AlternatingForm<F>>) -> Result<Self> {
        if gens.is_empty() || gens.len() > 15 {
            return Err(Error::GeneratorCount(gens.len()));
        }
        let rows: Vec<&[F; 15]> = gens.iter().map(|g| g.coeffs()).collect();
        let (echelon, pivots) = Matrix::from_rows(&rows, 15).rref();
        if pivots.len() != gens.len() {
            return Err(Error::DependentGenerators);
        }
        Ok(LinearSystem { gens, echelon })
    }

    /// Number of generators, `n + 1`.
    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[AlternatingForm<F>] {
        &self.gens
    }

    pub fn contains(&self, form: &AlternatingForm<F>) -> bool {
        let mut rows: Vec<&[F; 15]> = self.gens.iter().map(|g| g.coeffs()).collect();
        rows.push(form.coeffs());
        Matrix::from_rows(&rows, 15).rank() == self.dim()
    }

    /// Same span (echelon forms agree).
    pub fn same_span(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.echelon == other.echelon
    }

    pub fn combination(&self, coeffs: &[F]) -> AlternatingForm<F> {
        AlternatingForm::combination(&self.gens, coeffs)
    }

    /// Coordinates of `form` on the generators, if it lies in the span.
    pub fn coordinates(&self, form: &AlternatingForm<F>) -> Option<Vec<F>> {
        let m = Matrix::from_fn(15, self.dim(), |r, c| self.gens[c].coeffs()[r].clone());
        m.solve(form.coeffs())
    }

    pub fn act(&self, g: &GroupElement<F>) -> Self {
        LinearSystem::new(self.gens.iter().map(|w| g.act(w)).collect()).expect("group action preserves independence")
    }

    /// Adds a generator.
    pub fn extended(&self, form: AlternatingForm<F>) -> Result<Self> {
        let mut gens = self.gens.clone();
        gens.push(form);
        LinearSystem::new(gens)
    }

    /// The subsystem spanned by the generators at `indices`.
    pub fn subsystem(&self, indices: &[usize]) -> Result<Self> {
        LinearSystem::new(indices.iter().map(|&i| self.gens[i].clone()).collect())
    }

    /// `M_A`: entry `(i, j)` is `Σ_k m_ij^k X_k`.
    pub fn matrix_of_linear_forms(&self) -> Vec<Vec<MultiPoly<F>>> {
        let n = self.dim();
        (0..DIM)
            .map(|i| {
                (0..DIM)
                    .map(|j| {
                        let mut acc = MultiPoly::zero_in(n);
                        for (k, g) in self.gens.iter().enumerate() {
                            let c = g.entry(i, j);
                            if !c.is_zero() {
                                acc = acc + MultiPoly::var(k, n).scale(&c);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    /// `Pf(M_A)`, a cubic in `X_0..X_n` or zero.
    pub fn pfaffian_cubic(&self) -> MultiPoly<F> {
        pfaffian_of(&self.matrix_of_linear_forms()) + MultiPoly::zero_in(self.dim())
    }

    /// Basis of `A^⊥ ⊂ ∧²W` under the coefficient pairing.
    pub fn orthogonal(&self) -> Vec<BiVector<F>> {
        let rows: Vec<&[F; 15]> = self.gens.iter().map(|g| g.coeffs()).collect();
        Matrix::from_rows(&rows, 15)
            .nullspace()
            .into_iter()
            .map(|v| BiVector::from_coeffs(v.try_into().unwrap_or_else(|_| unreachable!())))
            .collect()
    }
}

impl LinearSystem<Rational> {
    /// Reduction modulo `P`; fails if a denominator vanishes or generators become dependent.
    pub fn reduce<const P: u32>(&self) -> Result<LinearSystem<Fp<P>>> {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let c: Vec<Fp<P>> = g.coeffs().iter().map(|x| x.reduce_mod::<P>()).collect::<Result<_>>()?;
                Ok(AlternatingForm::from_coeffs(c.try_into().unwrap_or_else(|_| unreachable!())))
            })
            .collect::<Result<Vec<_>>>()?;
        LinearSystem::new(gens).map_err(|_| Error::BadPrime(P))
    }

    /// Whether no nonzero member has rank ≤ 2, over ℚ or any extension of it.
    ///
    /// The Plücker quadrics restricted to `A` have no common projective zero exactly when
    /// they generate every form of degree `dim + 1`.
    pub fn misses_grassmannian(&self) -> bool {
        let n = self.dim();
        let generic = AlternatingForm::combination(
            &self.gens.iter().map(|g| g.map(|c| MultiPoly::constant(c.clone(), n))).collect::<Vec<_>>(),
            &(0..n).map(|k| MultiPoly::var(k, n)).collect::<Vec<_>>(),
        );
        let quadrics = generic.wedge_square();
        let targets = monomials(n, n as u32 + 1);
        let rows: Vec<Vec<Rational>> = quadrics
            .coeffs()
            .iter()
            .filter(|q| !q.is_zero())
            .flat_map(|q| monomials(n, n as u32 - 1).into_iter().map(move |m| q.clone() * MultiPoly::monomial(m, Rational::one())))
            .map(|f| targets.iter().map(|t| f.coefficient(t)).collect())
            .collect();
        !rows.is_empty() && Matrix::from_rows(&rows, targets.len()).rank() == targets.len()
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson { generators: self.gens.iter().map(FormJson::from_form).collect() }
    }

    pub fn from_json(j: &SystemJson) -> Result<Self> {
        let gens = j.generators.iter().map(FormJson::to_form).collect::<Result<Vec<_>>>()?;
        LinearSystem::new(gens)
    }

    pub fn parse_json(s: &str) -> Result<Self> {
        let j: SystemJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }
}

impl Serialize for LinearSystem<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearSystem<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SystemJson::deserialize(d)?;
        LinearSystem::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// `Pf(M_A)`.
pub fn pfaffian_cubic<F: Field>(a: &LinearSystem<F>) -> MultiPoly<F> {
    a.pfaffian_cubic()
}

/// Basis of `A^⊥`.
pub fn orthogonal<F: Field>(a: &LinearSystem<F>) -> Vec<BiVector<F>> {
    a.orthogonal()
}

/// Generic rank with its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericRank {
    pub rank: usize,
    /// `Pf(M_A) ≡ 0`, which certifies `rank ≤ 4`; otherwise the rank is certified to be 6.
    pub pf_cubic_zero: bool,
    /// Largest rank seen among the random members.
    pub sampled_max: usize,
}

/// Number of random members sampled by [`generic_rank`].
pub const RANK_SAMPLES: usize = 50;

pub fn generic_rank(a: &LinearSystem<Rational>, seed: u64) -> GenericRank {
    let mut rng = sample::rng(seed);
    let sampled_max = (0..RANK_SAMPLES)
        .map(|_| {
            let c = sample::random_combination(&mut rng, a.generators(), 1000);
            a.combination(&c).rank()
        })
        .max()
        .unwrap_or(0);
    let pf_cubic_zero = a.pfaffian_cubic().is_zero();
    let rank = if pf_cubic_zero { sampled_max.min(4) } else { 6 };
    GenericRank { rank, pf_cubic_zero, sampled_max }
}

/// Whether the whole pencil `s·ω + t·ω′` lies in the Pfaffian hypersurface.
///
/// The restriction is a binary cubic, so vanishing at four distinct points suffices.
pub fn line_in_pfaffian<F: Field>(w: &AlternatingForm<F>, w2: &AlternatingForm<F>) -> bool {
    [(1, 0), (0, 1), (1, 1), (1, 2)].iter().all(|&(s, t)| {
        (w.scale(&F::from_i64(s)) + w2.scale(&F::from_i64(t))).pfaffian().is_zero()
    })
}

/// Exponent vectors of the monomials of degree `d` in `n` variables.
fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    (0..=d)
        .rev()
        .flat_map(|e| {
            monomials(n - 1, d - e).into_iter().map(move |mut rest| {
                rest.insert(0, e);
                rest
            })
        })
        .collect()
}
