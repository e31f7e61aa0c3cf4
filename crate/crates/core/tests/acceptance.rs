//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use common::{q, Q};
use skewforms::catalog::{beta_orbit, beta_rank_locus, builtin, BetaMatrix, BetaOrbit};
use skewforms::exterior::{unit, AlternatingForm, Ambient, Subspace};
use skewforms::linsys::{gr_intersection, IntersectionType, LinearSystem};
use skewforms::planes::{classify_cr4_plane, pi_5, pi_g, pi_p, pi_t, OrbitLabel, PlaneOrbit};
use skewforms::sample;
use skewforms::scalars::{Rational, DEFAULT_PRIMES};
use skewforms::scroll::ScrollDatum;
use skewforms::stability::{
    decide_stability, isotropic3_candidates_for_pi_g, one_ps_limit_class, pattern_fill, pattern_forces_zero,
    verify_witness, DecideOptions, DecisionPath, DestabilizingWitness, LimitClass, OnePS, Severity, VerdictTag,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn span(idx: &[usize]) -> Subspace<Rational> {
    let vs: Vec<_> = idx.iter().map(|&i| unit::<Rational>(i - 1)).collect();
    Subspace::span(Ambient::W, &vs)
}

fn pfaffian_correctness() -> Outcome {
    let mut rng = sample::rng(1);
    let forms: Vec<AlternatingForm<Rational>> = (0..500).map(|_| sample::random_form(&mut rng, 9)).collect();
    let bad = forms
        .par_iter()
        .filter(|f| {
            let m = common::skew(f);
            let pf = common::to_q(&f.pfaffian());
            pf.clone() * pf.clone() != common::det_leibniz(&m) || pf != common::pf_matchings(&m)
        })
        .count();
    ensure(bad == 0, || format!("{bad}/500 forms with Pf² ≠ det"))?;
    let symplectic = AlternatingForm::<Rational>::elementary(1, 2) + AlternatingForm::elementary(3, 4) + AlternatingForm::elementary(5, 6);
    ensure(symplectic.pfaffian() == Rational::integer(1), || format!("Pf(symplectic) = {}", symplectic.pfaffian()))?;
    let mut low = 0;
    for _ in 0..200 {
        let v = |rng: &mut rand_chacha::ChaCha8Rng| std::array::from_fn(|_| sample::random_int(rng, 5));
        let (a, b, c, d) = (v(&mut rng), v(&mut rng), v(&mut rng), v(&mut rng));
        let f = AlternatingForm::wedge(&a, &b) + AlternatingForm::wedge(&c, &d);
        let r = common::rank_q(&common::skew(&f));
        ensure(f.rank() == r && r <= 4 && f.pfaffian() == Rational::integer(0), || format!("rank {r} form with Pf {}", f.pfaffian()))?;
        low += 1;
    }
    Ok(format!("500 forms Pf² = det, Pf(symplectic) = 1, {low} rank ≤ 4 forms with Pf = 0"))
}

fn orbit_classification() -> Outcome {
    let mut rng = sample::rng(2);
    let mut jobs = Vec::new();
    for o in PlaneOrbit::ALL {
        jobs.push((o, o.normal_form()));
        for _ in 0..25 {
            let g = sample::random_invertible(&mut rng, 3);
            jobs.push((o, o.normal_form().act(&g)));
        }
    }
    let mismatches: Vec<String> = jobs
        .par_iter()
        .filter_map(|(o, b)| match classify_cr4_plane(b) {
            Ok(OrbitLabel::Orbit(found)) if found == *o => None,
            other => Some(format!("{o:?} -> {other:?}")),
        })
        .collect();
    ensure(mismatches.is_empty(), || format!("{} mismatches, first {}", mismatches.len(), mismatches[0]))?;
    Ok(format!("{} classifications, 0 mismatches", jobs.len()))
}

fn plane_witnesses() -> Outcome {
    let explicit = [
        ("pi_t", DestabilizingWitness::from_isotropic(&pi_t(), &span(&[3, 4, 5, 6])), Severity::Unstable),
        ("pi_5", DestabilizingWitness::certify(&pi_5(), 1, span(&[6]), span(&[1, 2, 3, 4, 5, 6])), Severity::Unstable),
        ("pi_g", DestabilizingWitness::from_isotropic(&pi_g(), &span(&[1, 2, 3])), Severity::Nonstable),
    ];
    for (name, w, needed) in &explicit {
        let b = builtin(name).map_err(|e| e.to_string())?.system;
        let w = w.as_ref().map_err(|e| format!("{name}: {e}"))?;
        ensure(verify_witness(&b, w) && w.severity() == *needed, || format!("{name}: explicit witness rejected"))?;
    }
    let mut seen = Vec::new();
    for (name, b, needed) in
        [("pi_t", pi_t(), Severity::Unstable), ("pi_5", pi_5(), Severity::Unstable), ("pi_g", pi_g(), Severity::Nonstable), ("pi_p", pi_p(), Severity::Nonstable)]
    {
        let v = decide_stability(&b, &DecideOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        let w = v.witness.ok_or_else(|| format!("{name}: no witness, verdict {:?}", v.tag))?;
        ensure(verify_witness(&b, &w) && w.severity() >= needed, || format!("{name}: pipeline witness rejected"))?;
        seen.push(format!("{name} {:?}", w.severity()).to_lowercase());
    }
    Ok(format!("explicit and pipeline witnesses verified: {}", seen.join(", ")))
}

fn isotropic_spaces_of_general_plane() -> Outcome {
    let exact = isotropic3_candidates_for_pi_g(&pi_g()).map_err(|e| e.to_string())?;
    ensure(exact.len() == 2, || format!("exact solver returned {} spaces", exact.len()))?;
    let p = 7;
    let (found, domain) = common::isotropic3_mod(&pi_g(), p);
    let expected_domain = common::gaussian_binomial(6, 3, p);
    ensure(domain == expected_domain, || format!("enumerated {domain} representatives, expected {expected_domain}"))?;
    ensure(found.len() == 2, || format!("brute force found {} isotropic spaces over F_7", found.len()))?;
    for s in &exact {
        let reduced: Vec<Vec<u64>> = s.basis().iter().map(|v| v.iter().map(|x| common::residue(x, p)).collect()).collect();
        let hit = found.iter().any(|rows| {
            let mut stacked: Vec<Vec<u64>> = rows.to_vec();
            stacked.extend(reduced.iter().cloned());
            common::rank_mod(stacked, p) == 3
        });
        ensure(hit, || "an exact isotropic space is missing from the F_7 enumeration".into())?;
    }
    Ok(format!("2 exact spaces; F_7 brute force over {domain} representatives finds 2"))
}

fn stable_representative(name: &str, kind: IntersectionType) -> Result<String, String> {
    let a = builtin(name).map_err(|e| e.to_string())?.system;
    let v = decide_stability(&a, &DecideOptions::default()).map_err(|e| e.to_string())?;
    ensure(v.tag == VerdictTag::Stable && v.evidence.path == DecisionPath::ExactGeneralPlane, || {
        format!("{name}: {:?} via {:?}", v.tag, v.evidence.path)
    })?;
    let report = gr_intersection(&a, &DEFAULT_PRIMES).map_err(|e| e.to_string())?;
    ensure(report.kind == kind, || format!("{name}: intersection {}", report.kind))?;
    for &p in &DEFAULT_PRIMES {
        let brute = common::rank2_points(&a, u64::from(p));
        let want = kind.expected_count(p).expect("known type");
        ensure(brute == want && report.counts[&p] == want, || {
            format!("{name}: p = {p}, library {}, brute force {brute}, expected {want}", report.counts[&p])
        })?;
    }
    let counts: Vec<String> = report.counts.values().map(u64::to_string).collect();
    Ok(format!("{name} stable (exact), {kind} [{}]", counts.join(",")))
}

fn dim3() -> Outcome {
    let rep = stable_representative("thm_dim3", IntersectionType::TwoPoints)?;
    let degenerate = pi_g().extended(AlternatingForm::elementary(1, 2)).map_err(|e| e.to_string())?;
    let v = decide_stability(&degenerate, &DecideOptions::default()).map_err(|e| e.to_string())?;
    let target = span(&[4, 5, 6]);
    let w = v.witness.as_ref().ok_or("degenerate member has no witness")?;
    ensure(v.tag != VerdictTag::Stable && verify_witness(&degenerate, w) && *w.u() == target && *w.u_prime() == target, || {
        format!("degenerate member: {:?}", v.tag)
    })?;
    Ok(format!("{rep}; <pi_g, e1^e2> {:?} with witness <u4,u5,u6>", v.tag).to_lowercase())
}

fn dim4() -> Outcome {
    let a = stable_representative("thm_dim4a", IntersectionType::Conic)?;
    let b = stable_representative("thm_dim4b", IntersectionType::TwoLines)?;
    Ok(format!("{a}; {b}"))
}

fn dim5() -> Outcome {
    stable_representative("thm_dim5", IntersectionType::TwoPlanes)
}

fn free_entries(s: usize, severity: Severity) -> usize {
    (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).filter(|&(i, j)| !pattern_forces_zero(s, severity, i, j)).count()
}

fn fill<R: Rng>(rng: &mut R, s: usize, severity: Severity) -> LinearSystem<Rational> {
    let ngens = rng.gen_range(1..=free_entries(s, severity).min(6));
    pattern_fill(rng, s, severity, ngens, 5)
}

fn unstable_patterns_in_pf() -> Outcome {
    let mut rng = sample::rng(8);
    let systems: Vec<LinearSystem<Rational>> = (0..300).map(|k| fill(&mut rng, k % 3 + 1, Severity::Unstable)).collect();
    let seeds: Vec<u64> = (0..300).map(|_| rng.gen()).collect();
    let bad = systems
        .par_iter()
        .zip(&seeds)
        .filter(|(a, &seed)| {
            let mut r = sample::rng(seed);
            let sampled_zero = (0..3).all(|_| {
                let f = a.combination(&sample::random_combination(&mut r, a.generators(), 7));
                common::pf_matchings(&common::skew(&f)) == q(0)
            });
            !a.pfaffian_cubic().is_zero() || !sampled_zero
        })
        .count();
    ensure(bad == 0, || format!("{bad}/300 fills with nonzero Pfaffian"))?;
    Ok("300/300 fills have Pf-cubic ≡ 0".into())
}

/// Highest weight `w_i + w_j` over the support, recomputed from the coefficients.
fn top_weight(a: &LinearSystem<Rational>, w: [i64; 6]) -> Option<i64> {
    let pairs = common::pairs();
    a.generators()
        .iter()
        .flat_map(|g| g.coeffs().iter().zip(&pairs).filter(|(c, _)| **c != Rational::integer(0)).map(|(_, &(i, j))| w[i] + w[j]))
        .max()
}

fn one_parameter_limits() -> Outcome {
    let mut rng = sample::rng(9);
    let mut zero = 0;
    let mut bounded = 0;
    for k in 0..200 {
        let s = k % 3 + 1;
        let unstable = k % 2 == 0;
        let (severity, family) =
            if unstable { (Severity::Unstable, OnePS::unstable_family(s)) } else { (Severity::Nonstable, OnePS::nonstable_family(s)) };
        let a = fill(&mut rng, s, severity);
        let class = one_ps_limit_class(&a, &family);
        let top = top_weight(&a, family.weights());
        if unstable {
            ensure(class == LimitClass::LimitZero && top.is_some_and(|t| t < 0), || format!("unstable fill {k}: {class:?}"))?;
            zero += 1;
        } else {
            ensure(class != LimitClass::Diverges && top.is_some_and(|t| t <= 0), || format!("nonstable fill {k}: {class:?}"))?;
            bounded += 1;
        }
    }
    Ok(format!("{zero} unstable fills limit zero, {bounded} nonstable fills bounded"))
}

fn scroll() -> Outcome {
    let z = ScrollDatum::new(&pi_g()).map_err(|e| e.to_string())?;
    ensure(z.lambda.len() == 9, || format!("span of the scroll has dimension {}", z.lambda.len()))?;
    let qdim = z.restricted_quadric_system_dim();
    let mut rng = sample::rng(10);
    let evals: Vec<Vec<Q>> = (0..40)
        .map(|_| {
            let c = sample::random_combination(&mut rng, &z.lambda, 9);
            common::wedge_square_q(&common::skew(&AlternatingForm::combination(&z.lambda, &c)))
        })
        .collect();
    let oracle_dim = common::rank_q(&evals) - 1;
    ensure(qdim == 14 && oracle_dim == 14, || format!("quadric dimension {qdim}, oracle {oracle_dim}"))?;

    let check_p = 11;
    let span11 = common::scroll_span_mod(&pi_g(), check_p);
    for _ in 0..100 {
        let omega = pi_g().combination(&sample::random_combination(&mut rng, pi_g().generators(), 6));
        let t = [sample::random_int(&mut rng, 6), sample::random_int(&mut rng, 6)];
        if t.iter().all(|x| *x == Rational::integer(0)) {
            continue;
        }
        let theta = z.psi(&omega, [&t[0], &t[1]]).map_err(|e| e.to_string())?;
        ensure(common::rank_q(&common::skew(&theta)) == 2 && z.in_lambda(&theta), || "a scroll sample is off the scroll".into())?;
        let mut stacked = span11.clone();
        let before = common::rank_mod(stacked.clone(), check_p);
        stacked.push(common::coeffs_mod(&theta, check_p).to_vec());
        ensure(common::rank_mod(stacked, check_p) == before, || "a scroll sample leaves the span mod 11".into())?;
    }

    let mut counts = Vec::new();
    for (p, want) in [(5u32, 186u64), (7, 456)] {
        let image = z.z_point_count(p).map_err(|e| e.to_string())?;
        let span = common::scroll_span_mod(&pi_g(), u64::from(p));
        let brute = common::rank2_in_span_mod(&span, u64::from(p));
        ensure(span.len() == 9 && image == want && brute == want, || {
            format!("p = {p}: image {image}, brute force {brute}, expected {want}")
        })?;
        counts.push(format!("|Z(F_{p})| = {image}"));
    }
    Ok(format!("quadric dimension 14, 100 samples of rank 2 in the span, {}", counts.join(", ")))
}

fn beta_matrices() -> Outcome {
    let mut out = Vec::new();
    for (beta, orbit, per_line) in [(BetaMatrix::conic(), BetaOrbit::ConicType, 20), (BetaMatrix::lines(), BetaOrbit::TwoLinesType, 20)] {
        let report = beta_rank_locus(&beta, orbit, per_line, 50, 11);
        ensure(report.matches(), || format!("{orbit:?}: rank locus mismatch"))?;
        let mut rng = sample::rng(11);
        for _ in 0..10 {
            let x: [Rational; 5] = std::array::from_fn(|_| sample::random_int(&mut rng, 9));
            let m = common::skew(&beta.at(&x));
            ensure(common::det_leibniz(&m) == q(0), || format!("{orbit:?}: nonzero determinant at a sampled point"))?;
        }
        let label = beta_orbit(&beta).map_err(|e| e.to_string())?;
        ensure(label == orbit, || format!("{orbit:?} labelled {label:?}"))?;
        let v = decide_stability(beta.system(), &DecideOptions::default()).map_err(|e| e.to_string())?;
        ensure(v.tag == VerdictTag::Stable, || format!("{orbit:?}: {:?}", v.tag))?;
        out.push(format!(
            "{orbit:?} Pf ≡ 0, rank 2 at {} locus points, rank 4 at {} generic points, stable",
            report.locus_ranks.len(),
            report.generic_ranks.len()
        ));
    }
    Ok(out.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("pfaffian correctness", pfaffian_correctness),
        ("four-orbit classification", orbit_classification),
        ("witnesses for the normal forms", plane_witnesses),
        ("isotropic 3-spaces of the general plane", isotropic_spaces_of_general_plane),
        ("three-dimensional representative", dim3),
        ("four-dimensional representatives", dim4),
        ("five-dimensional representative", dim5),
        ("unstable patterns inside Pf", unstable_patterns_in_pf),
        ("one-parameter subgroup limits", one_parameter_limits),
        ("scroll", scroll),
        ("skew matrices of linear forms", beta_matrices),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.1}s): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {detail}", k + 1);
            }
        }
    }
    println!("{} criteria, {failed} failed", criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
