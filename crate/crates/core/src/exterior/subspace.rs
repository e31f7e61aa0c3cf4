use std::cmp::Ordering;

use serde::Serialize;

use super::form::to_array;
use super::DIM;
use crate::scalars::{Field, Matrix, Rational, Ring};

/// Which space a subspace lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Ambient {
    /// W, spanned by `u1..u6`.
    W,
    /// W*, spanned by `e1..e6`.
    WDual,
}

impl Ambient {
    pub fn dual(self) -> Self {
        match self {
            Ambient::W => Ambient::WDual,
            Ambient::WDual => Ambient::W,
        }
    }
}

/// Subspace stored by its reduced row-echelon basis, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<F> {
    ambient: Ambient,
    rows: Vec<[F; DIM]>,
}

impl<F: Field> Subspace<F> {
    pub fn span(ambient: Ambient, vectors: &[[F; DIM]]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let (m, pivots) = Matrix::from_rows(vectors, DIM).rref();
        let rows = (0..pivots.len()).map(|r| to_array(m.row(r).to_vec())).collect();
        Subspace { ambient, rows }
    }

    pub fn zero(ambient: Ambient) -> Self {
        Subspace { ambient, rows: Vec::new() }
    }

    pub fn full(ambient: Ambient) -> Self {
        let units: Vec<[F; DIM]> = (0..DIM).map(super::unit).collect();
        Self::span(ambient, &units)
    }

    /// Span of basis vectors with the given 1-based indices, e.g. `⟨u1, u2, u3⟩`.
    pub fn coordinate(ambient: Ambient, indices: &[usize]) -> Self {
        let units: Vec<[F; DIM]> = indices.iter().map(|&i| super::unit(i - 1)).collect();
        Self::span(ambient, &units)
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[[F; DIM]] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row")).collect()
    }

    pub fn contains(&self, v: &[F; DIM]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.clone());
        Matrix::from_rows(&rows, DIM).rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        self.ambient == other.ambient && other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Self {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Self::span(self.ambient, &rows)
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Self {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Annihilator in the dual space.
    pub fn annihilator(&self) -> Self {
        let null = if self.rows.is_empty() {
            (0..DIM).map(|i| super::unit::<F>(i).to_vec()).collect()
        } else {
            Matrix::from_rows(&self.rows, DIM).nullspace()
        };
        let vecs: Vec<[F; DIM]> = null.into_iter().map(to_array).collect();
        Self::span(self.ambient.dual(), &vecs)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Subspace<G> {
        let vecs: Vec<[G; DIM]> = self.rows.iter().map(|r| std::array::from_fn(|k| f(&r[k]))).collect();
        Subspace::span(self.ambient, &vecs)
    }
}

impl Subspace<Rational> {
    /// Canonical order: by pivot columns, then entrywise on the echelon rows.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.pivots()
            .cmp(&other.pivots())
            .then_with(|| self.rows.iter().flatten().cmp(other.rows.iter().flatten()))
    }
}

impl<F: Ring + std::fmt::Display> std::fmt::Display for Subspace<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self.ambient {
            Ambient::W => "u",
            Ambient::WDual => "e",
        };
        let parts: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let terms: Vec<String> = r
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| {
                        if *c == F::one() {
                            format!("{name}{}", i + 1)
                        } else {
                            format!("({c}){name}{}", i + 1)
                        }
                    })
                    .collect();
                terms.join("+")
            })
            .collect();
        write!(f, "<{}>", parts.join(", "))
    }
}
