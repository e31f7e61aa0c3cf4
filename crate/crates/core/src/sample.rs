//! Seeded random inputs for sampling-based checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{AlternatingForm, GroupElement, DIM};
use crate::scalars::{Matrix, Rational, Ring};

/// Default seed for every sampled computation.
pub const DEFAULT_SEED: u64 = 20_240_601;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_int<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    Rational::integer(rng.gen_range(-bound..=bound))
}

/// Form with integer coefficients in `[-bound, bound]`.
pub fn random_form<R: Rng>(rng: &mut R, bound: i64) -> AlternatingForm<Rational> {
    AlternatingForm::from_coeffs(std::array::from_fn(|_| random_int(rng, bound)))
}

/// Nonzero integer combination of `forms` with coefficients in `[-bound, bound]`.
pub fn random_combination<R: Rng>(rng: &mut R, forms: &[AlternatingForm<Rational>], bound: i64) -> Vec<Rational> {
    loop {
        let c: Vec<Rational> = forms.iter().map(|_| random_int(rng, bound)).collect();
        if c.iter().any(|x| !x.is_zero()) {
            return c;
        }
    }
}

/// Invertible integer matrix with entries in `[-bound, bound]`.
pub fn random_invertible<R: Rng>(rng: &mut R, bound: i64) -> GroupElement<Rational> {
    loop {
        let m = Matrix::from_fn(DIM, DIM, |_, _| random_int(rng, bound));
        if let Ok(g) = GroupElement::new(m) {
            return g;
        }
    }
}

/// Integer matrix of determinant ±1: a random permutation times random elementary operations.
///
/// Invertible modulo every prime, so finite-field reductions stay faithful.
pub fn random_unimodular<R: Rng>(rng: &mut R) -> GroupElement<Rational> {
    let mut m: Matrix<Rational> = Matrix::identity(DIM);
    for _ in 0..12 {
        let i = rng.gen_range(0..DIM);
        let j = (i + rng.gen_range(1..DIM)) % DIM;
        let k = Rational::integer(rng.gen_range(-2..=2));
        for c in 0..DIM {
            let v = m[(i, c)].clone() + k.clone() * m[(j, c)].clone();
            m[(i, c)] = v;
        }
    }
    let mut perm: [usize; DIM] = std::array::from_fn(|i| i);
    for i in (1..DIM).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let p = GroupElement::permutation(perm);
    p.compose(&GroupElement::new(m).expect("unimodular"))
}
