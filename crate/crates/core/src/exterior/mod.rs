//! Exterior algebra of a fixed six-dimensional space.
//!
//! Covectors `e1..e6` span W*, vectors `u1..u6` span W. Internally all indices are
//! 0-based; constructors that mirror mathematical notation say so explicitly.

mod form;
mod group;
pub mod json;
mod subspace;

pub use form::{pfaffian_of, AlternatingForm, BiVector, FourVector, TangentSpace};
pub use group::GroupElement;
pub use subspace::{Ambient, Subspace};

/// Dimension of W.
pub const DIM: usize = 6;

/// Pairs `(i, j)`, `i < j`, in lexicographic order; index of `e_i∧e_j` in a 15-vector.
pub const PAIRS: [(usize, usize); 15] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (0, 5),
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 5),
    (4, 5),
];

/// Increasing 4-tuples in lexicographic order.
pub const QUADS: [[usize; 4]; 15] = [
    [0, 1, 2, 3],
    [0, 1, 2, 4],
    [0, 1, 2, 5],
    [0, 1, 3, 4],
    [0, 1, 3, 5],
    [0, 1, 4, 5],
    [0, 2, 3, 4],
    [0, 2, 3, 5],
    [0, 2, 4, 5],
    [0, 3, 4, 5],
    [1, 2, 3, 4],
    [1, 2, 3, 5],
    [1, 2, 4, 5],
    [1, 3, 4, 5],
    [2, 3, 4, 5],
];

/// Position of the pair `(i, j)` with `i < j` in [`PAIRS`].
#[inline]
pub const fn pair_index(i: usize, j: usize) -> usize {
    // Rows of the upper triangle have lengths 5, 4, 3, 2, 1.
    i * (11 - i) / 2 + (j - i - 1)
}

/// Unit vector with a one at 0-based position `i`.
pub fn unit<F: crate::scalars::Ring>(i: usize) -> [F; DIM] {
    std::array::from_fn(|k| if k == i { F::one() } else { F::zero() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_index_matches_table() {
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            assert_eq!(pair_index(i, j), k);
        }
    }
}
