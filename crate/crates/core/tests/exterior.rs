mod common;

use proptest::prelude::*;

use skewforms::exterior::json::{form_from_json, form_to_json};
use skewforms::exterior::{pair_index, unit, AlternatingForm, Ambient, BiVector, GroupElement, Subspace, PAIRS};
use skewforms::sample;
use skewforms::scalars::{Matrix, Rational, Ring};
use skewforms::Error;

fn form_strategy(bound: i64) -> impl Strategy<Value = AlternatingForm<Rational>> {
    proptest::array::uniform15(-bound..=bound).prop_map(|c| AlternatingForm::from_coeffs(c.map(Rational::integer)))
}

fn vec6() -> impl Strategy<Value = [Rational; 6]> {
    proptest::array::uniform6(-4i64..=4).prop_map(|v| v.map(Rational::integer))
}

proptest! {
    #[test]
    fn pfaffian_squares_to_determinant(f in form_strategy(6)) {
        let m = common::skew(&f);
        let pf = common::to_q(&f.pfaffian());
        prop_assert_eq!(pf.clone() * pf.clone(), common::det_leibniz(&m));
        prop_assert_eq!(pf, common::pf_matchings(&m));
        prop_assert_eq!(f.rank(), common::rank_q(&m));
    }

    #[test]
    fn wedge_square_matches_minor_pfaffians(f in form_strategy(5)) {
        let ours: Vec<common::Q> = f.wedge_square().coeffs().iter().map(common::to_q).collect();
        prop_assert_eq!(ours, common::wedge_square_q(&common::skew(&f)));
        prop_assert_eq!(f.wedge_square().is_zero(), f.rank() <= 2);
    }

    #[test]
    fn decomposable_forms_have_rank_two(x in vec6(), y in vec6()) {
        let f = AlternatingForm::wedge(&x, &y);
        let independent = Subspace::span(Ambient::WDual, &[x.clone(), y.clone()]).dim() == 2;
        prop_assert_eq!(f.rank(), if independent { 2 } else { 0 });
        prop_assert!(f.pfaffian().is_zero());
    }

    #[test]
    fn action_is_a_homomorphism(f in form_strategy(4), seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let g = sample::random_invertible(&mut rng, 2);
        let h = sample::random_invertible(&mut rng, 2);
        prop_assert_eq!(g.compose(&h).act(&f), g.act(&h.act(&f)));
        prop_assert_eq!(g.inverse().act(&g.act(&f)), f.clone());
        prop_assert_eq!(g.act(&f).pfaffian(), g.det() * f.pfaffian());
        prop_assert_eq!(g.act(&f).rank(), f.rank());
    }

    #[test]
    fn kernel_is_annihilated(f in form_strategy(3)) {
        let k = f.kernel();
        prop_assert_eq!(k.dim(), 6 - f.rank());
        for v in k.basis() {
            prop_assert!(f.contract(v).iter().all(Ring::is_zero));
        }
    }

    #[test]
    fn json_round_trip(f in form_strategy(9)) {
        prop_assert_eq!(form_from_json(&form_to_json(&f)).unwrap(), f);
    }

    #[test]
    fn subspace_dimensions(a in proptest::collection::vec(vec6(), 0..4), b in proptest::collection::vec(vec6(), 0..4)) {
        let (u, v) = (Subspace::span(Ambient::W, &a), Subspace::span(Ambient::W, &b));
        prop_assert_eq!(u.sum(&v).dim() + u.intersect(&v).dim(), u.dim() + v.dim());
        prop_assert_eq!(u.annihilator().dim(), 6 - u.dim());
        prop_assert!(u.sum(&v).contains_subspace(&u));
    }
}

#[test]
fn coordinates_and_signs() {
    assert_eq!(PAIRS.len(), 15);
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        assert_eq!(pair_index(i, j), k);
    }
    let f = AlternatingForm::<Rational>::elementary(2, 5);
    assert_eq!(f.entry(1, 4), Rational::one());
    assert_eq!(f.entry(4, 1), -Rational::one());
    assert_eq!(f.eval(&unit(1), &unit(4)), Rational::one());
    let symplectic = AlternatingForm::<Rational>::elementary(1, 2) + AlternatingForm::elementary(3, 4) + AlternatingForm::elementary(5, 6);
    assert_eq!(symplectic.pfaffian(), Rational::one());
    assert_eq!(symplectic.rank(), 6);
    assert_eq!(AlternatingForm::from_matrix(&symplectic.matrix()), symplectic);
}

#[test]
fn gauss_map_of_rank_four() {
    let w = AlternatingForm::<Rational>::elementary(1, 2) + AlternatingForm::elementary(3, 4);
    let g = w.gauss_map().unwrap();
    assert!(g.is_decomposable());
    assert_eq!(g.plane(), Subspace::coordinate(Ambient::W, &[5, 6]));
    assert_eq!(g.pair(&w), Rational::zero());
    assert_eq!(AlternatingForm::<Rational>::elementary(1, 2).gauss_map(), Err(Error::RankError { required: 4, actual: 2 }));
    let t = AlternatingForm::<Rational>::elementary(1, 2).tangent_space().unwrap();
    assert!(t.contains(&AlternatingForm::elementary(1, 3)));
    assert!(!t.contains(&AlternatingForm::elementary(3, 4)));
    assert!(w.tangent_space().is_err());
}

#[test]
fn bivector_pairing() {
    let b = BiVector::<Rational>::elementary(1, 2);
    assert_eq!(b.pair(&AlternatingForm::elementary(1, 2)), Rational::one());
    assert_eq!(b.pair(&AlternatingForm::elementary(1, 3)), Rational::zero());
}

#[test]
fn group_elements_reject_singular_matrices() {
    assert_eq!(GroupElement::new(Matrix::<Rational>::zeros(6, 6)).err(), Some(Error::Singular));
    let g = GroupElement::<Rational>::permutation([1, 0, 2, 3, 4, 5]);
    assert_eq!(g.det(), -Rational::one());
}

#[test]
fn malformed_json_is_rejected() {
    assert!(matches!(form_from_json(r#"{"terms":[{"i":2,"j":1,"c":"1"}]}"#), Err(Error::Parse(_))));
    assert!(matches!(form_from_json(r#"{"terms":[{"i":1,"j":2,"c":"1"},{"i":1,"j":2,"c":"3"}]}"#), Err(Error::Parse(_))));
    assert!(matches!(form_from_json(r#"{"terms":[{"i":1,"j":7,"c":"1"}]}"#), Err(Error::Parse(_))));
    assert_eq!(form_from_json(r#"{"terms":[{"i":1,"j":2,"c":"-3/4"}]}"#).unwrap().coeffs()[0], Rational::new(-3, 4));
}
