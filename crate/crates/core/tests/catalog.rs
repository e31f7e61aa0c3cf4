use std::path::PathBuf;

use skewforms::catalog::{beta_orbit, builtin, names, verify_suite, verify_theorem, BetaMatrix, BetaOrbit, THEOREMS};
use skewforms::linsys::gr_intersection;
use skewforms::planes::{classify_plane, OrbitLabel};
use skewforms::sample::DEFAULT_SEED;
use skewforms::scalars::{Rational, DEFAULT_PRIMES};
use skewforms::Error;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

/// Set `UPDATE_GOLDEN=1` to rewrite the files after an intentional change.
#[test]
fn entries_match_golden_files() {
    for name in names() {
        let entry = builtin(name).unwrap();
        let text = serde_json::to_string_pretty(&entry).unwrap() + "\n";
        let path = golden(name);
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            std::fs::write(&path, &text).unwrap();
        }
        let frozen = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(text, frozen, "{name}");
    }
}

#[test]
fn expected_values_hold() {
    for name in names() {
        let entry = builtin(name).unwrap();
        let report = gr_intersection(&entry.system, &DEFAULT_PRIMES).unwrap();
        assert_eq!(report.kind, entry.expected.intersection, "{name}");
        if let Some(o) = entry.expected.orbit {
            assert_eq!(classify_plane(&entry.system).unwrap(), OrbitLabel::Orbit(o), "{name}");
        }
    }
}

#[test]
fn unknown_names() {
    assert_eq!(builtin("pi_x").err(), Some(Error::UnknownName("pi_x".into())));
    assert!(matches!(verify_theorem("dim6", 1), Err(Error::UnknownName(_))));
}

#[test]
fn every_report_passes() {
    let reports = verify_suite("all", DEFAULT_SEED).unwrap();
    assert_eq!(reports.len(), THEOREMS.len());
    for r in &reports {
        assert!(r.pass(), "{}: {:?}", r.theorem, r.claims.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    }
    assert_eq!(verify_theorem("planes", DEFAULT_SEED).unwrap().theorem, "planes_not_stable");
}

#[test]
fn beta_matrices() {
    let conic = BetaMatrix::conic();
    assert!(conic.pfaffian().is_zero());
    let x = [1, 0, 0, 0, 0].map(Rational::integer);
    assert_eq!(conic.at(&x).rank(), 2);
    assert_eq!(beta_orbit(&BetaMatrix::lines()).unwrap(), BetaOrbit::TwoLinesType);
    let short = builtin("thm_dim3").unwrap().system;
    assert!(BetaMatrix::from_system(short).is_err());
    let dim5 = builtin("thm_dim5").unwrap().system;
    let m = BetaMatrix::from_system(dim5.subsystem(&[0, 1, 2, 3, 4]).unwrap()).unwrap();
    assert!(matches!(beta_orbit(&m), Ok(_) | Err(Error::SignatureMismatch(_)) | Err(Error::Precondition(_))));
}
