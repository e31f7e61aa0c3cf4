mod common;

use proptest::prelude::*;

use skewforms::catalog::builtin;
use skewforms::exterior::{Ambient, GroupElement, Subspace};
use skewforms::linsys::LinearSystem;
use skewforms::planes::{pi_5, pi_g, pi_t};
use skewforms::sample;
use skewforms::scalars::Rational;
use skewforms::stability::{
    decide_stability, one_ps_limit_class, pattern_fill, search_s1, search_s3, verify_witness, zero_pattern_check,
    DecideOptions, DecisionPath, DestabilizingWitness, LimitClass, OnePS, PatternMatch, Severity, VerdictTag,
};
use skewforms::Error;

fn coord(idx: &[usize]) -> Subspace<Rational> {
    Subspace::coordinate(Ambient::W, idx)
}

fn entry() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("thm_dim3"), Just("thm_dim4a"), Just("thm_dim4b"), Just("pi_g"), Just("pi_t"), Just("pi_5")]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn verdicts_are_invariant_under_conjugation(name in entry(), seed in any::<u64>()) {
        let n = builtin(name).unwrap();
        let mut rng = sample::rng(seed);
        let moved = n.system.act(&sample::random_unimodular(&mut rng));
        let v = decide_stability(&moved, &DecideOptions::default()).unwrap();
        prop_assert_eq!(v.tag, n.expected.verdict);
        if let Some(w) = &v.witness {
            prop_assert!(verify_witness(&moved, w));
        }
    }

    #[test]
    fn witnesses_transport(seed in any::<u64>()) {
        let w = DestabilizingWitness::from_isotropic(&pi_t(), &coord(&[3, 4, 5, 6])).unwrap();
        let mut rng = sample::rng(seed);
        let g = sample::random_invertible(&mut rng, 3);
        prop_assert!(verify_witness(&pi_t().act(&g), &w.transport(&g)));
    }

    #[test]
    fn unstable_fills_are_not_stable(s in 1usize..=3, seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let a = pattern_fill(&mut rng, s, Severity::Unstable, 2, 4);
        prop_assert_eq!(zero_pattern_check(&a, &GroupElement::identity(), s), PatternMatch::Unstable);
        prop_assert_eq!(one_ps_limit_class(&a, &OnePS::unstable_family(s)), LimitClass::LimitZero);
        let v = decide_stability(&a, &DecideOptions::default()).unwrap();
        prop_assert_eq!(v.tag, VerdictTag::Unstable);
        prop_assert!(verify_witness(&a, v.witness.as_ref().unwrap()));
    }
}

#[test]
fn certify_rejects_bad_witnesses() {
    let g = pi_g();
    assert!(DestabilizingWitness::certify(&g, 3, coord(&[1, 2, 3]), coord(&[1, 2, 3])).is_ok());
    assert!(matches!(DestabilizingWitness::certify(&g, 3, coord(&[1, 2, 4]), coord(&[1, 2, 4])), Err(Error::Precondition(_))));
    assert!(matches!(DestabilizingWitness::certify(&g, 2, coord(&[1, 2, 3]), coord(&[1, 2, 3])), Err(Error::Precondition(_))));
    assert!(matches!(DestabilizingWitness::certify(&g, 4, coord(&[1]), coord(&[1])), Err(Error::Precondition(_))));
    let claimed = DestabilizingWitness::claim(3, coord(&[1, 2, 3]), coord(&[1, 2, 3]), Severity::Unstable);
    assert!(!verify_witness(&g, &claimed));
}

#[test]
fn one_parameter_subgroup_weights() {
    assert_eq!(OnePS::unstable_family(2).weights(), [4, 4, -1, -1, -1, -5]);
    assert_eq!(OnePS::nonstable_family(1).weights(), [1, 0, 0, 0, 0, -1]);
    assert!(OnePS::new([1, 2, 0, 0, 0, -3]).is_err());
    assert!(OnePS::new([1, 0, 0, 0, 0, 0]).is_err());
    assert!(OnePS::new([0; 6]).is_err());
    assert_eq!(one_ps_limit_class(&pi_g(), &OnePS::nonstable_family(3)), LimitClass::BoundedNonzeroLimit);
    assert_eq!(one_ps_limit_class(&pi_g(), &OnePS::nonstable_family(1)), LimitClass::Diverges);
}

#[test]
fn finite_field_searches() {
    let out = search_s3(&pi_g(), 5, 3).unwrap();
    let w = out.certified.expect("liftable isotropic 3-space");
    assert!(verify_witness(&pi_g(), &w));
    let out = search_s1(&pi_5(), 7, Severity::Unstable).unwrap();
    assert!(out.certified.is_some_and(|w| verify_witness(&pi_5(), &w) && *w.u() == coord(&[6])));
    let stable = builtin("thm_dim3").unwrap().system;
    assert!(search_s3(&stable, 5, 3).unwrap().evidence.is_none());
    assert_eq!(search_s3(&pi_g(), 53, 3).err(), Some(Error::UnsupportedPrime(53)));
}

#[test]
fn general_plane_is_strictly_semistable() {
    let v = decide_stability(&pi_g(), &DecideOptions::default()).unwrap();
    assert_eq!(v.tag, VerdictTag::StrictlySemistable);
    assert_eq!(v.evidence.path, DecisionPath::ExactGeneralPlane);
    assert!(v.evidence.certified);
}

#[test]
fn assume_normal_form_requires_it() {
    let opts = DecideOptions { assume_pi_g: true, ..DecideOptions::default() };
    let v = decide_stability(&builtin("thm_dim4a").unwrap().system, &opts).unwrap();
    assert_eq!(v.tag, VerdictTag::Stable);
    let moved = pi_t().act(&GroupElement::permutation([1, 0, 2, 3, 4, 5]));
    assert!(decide_stability(&moved, &opts).is_err());
}

#[test]
fn systems_outside_the_pfaffian_are_stable_or_unknown() {
    let symplectic = skewforms::exterior::AlternatingForm::elementary(1, 2)
        + skewforms::exterior::AlternatingForm::elementary(3, 4)
        + skewforms::exterior::AlternatingForm::elementary(5, 6);
    let a = LinearSystem::new(vec![symplectic]).unwrap();
    let v = decide_stability(&a, &DecideOptions::default()).unwrap();
    assert_ne!(v.tag, VerdictTag::Unstable);
    assert!(v.witness.is_none() || verify_witness(&a, v.witness.as_ref().unwrap()));
}
