use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{beta_orbit, beta_rank_locus, builtin, BetaMatrix, BetaOrbit};
use crate::exterior::{unit, Ambient, Subspace};
use crate::linsys::{gr_intersection, IntersectionType, LinearSystem};
use crate::planes::{form, pi_g};
use crate::sample;
use crate::scalars::{Rational, DEFAULT_PRIMES};
use crate::scroll::ScrollDatum;
use crate::stability::{
    decide_stability, one_ps_limit_class, pattern_fill, pattern_forces_zero, verify_witness, DecideOptions, DecisionPath, LimitClass, OnePS,
    Severity, VerdictTag,
};
use crate::{Error, Result};

/// Individually verifiable reports, in the order `all` runs them.
pub const THEOREMS: [&str; 8] =
    ["dim3", "dim4a", "dim4b", "dim5", "planes_not_stable", "unstable_in_pf", "beta_matrices", "scroll_extensions"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub claims: Vec<Claim>,
}

impl TheoremReport {
    pub fn pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }
}

fn claim(name: impl Into<String>, expected: impl Into<String>, observed: impl Into<String>, pass: bool) -> Claim {
    Claim { name: name.into(), expected: expected.into(), observed: observed.into(), pass }
}

fn failed(name: &str, expected: &str, e: &Error) -> Claim {
    claim(name, expected, format!("error: {e}"), false)
}

fn stable_exact(a: &LinearSystem<Rational>) -> Claim {
    let expected = "stable (exact)";
    match decide_stability(a, &DecideOptions::default()) {
        Ok(v) => {
            let exact = v.evidence.path == DecisionPath::ExactGeneralPlane;
            let observed = format!("{:?} via {:?}", v.tag, v.evidence.path).to_lowercase();
            claim("stability", expected, observed, exact && v.tag == VerdictTag::Stable)
        }
        Err(e) => failed("stability", expected, &e),
    }
}

fn intersection(a: &LinearSystem<Rational>, expected: IntersectionType) -> Claim {
    let name = "intersection";
    match gr_intersection(a, &DEFAULT_PRIMES) {
        Ok(r) => {
            let counts: Vec<String> = r.counts.iter().map(|(p, c)| format!("{p}:{c}")).collect();
            let observed = format!("{} [{}]", r.kind, counts.join(" "));
            claim(name, expected.to_string(), observed, r.kind == expected)
        }
        Err(e) => failed(name, &expected.to_string(), &e),
    }
}

fn representative(entry: &str) -> Vec<Claim> {
    match builtin(entry) {
        Ok(n) => vec![stable_exact(&n.system), intersection(&n.system, n.expected.intersection)],
        Err(e) => vec![failed("builtin", entry, &e)],
    }
}

/// `⟨π_g, e1∧e2⟩` has the isotropic 3-space `⟨u4, u5, u6⟩`.
fn degenerate_dim3() -> Claim {
    let name = "degenerate member <pi_g, e1^e2>";
    let expected = "non-stable, witness <u4,u5,u6>";
    let a = pi_g().extended(form(&[(1, 2, 1)])).expect("independent");
    let target = Subspace::span(Ambient::W, &[unit(3), unit(4), unit(5)]);
    match decide_stability(&a, &DecideOptions::default()) {
        Ok(v) => {
            let w = v.witness.as_ref();
            let ok = v.tag != VerdictTag::Stable
                && w.is_some_and(|w| verify_witness(&a, w) && *w.u() == target && *w.u_prime() == target);
            claim(name, expected, format!("{:?}", v.tag).to_lowercase(), ok)
        }
        Err(e) => failed(name, expected, &e),
    }
}

fn planes_not_stable() -> Vec<Claim> {
    let cases = [("pi_t", Severity::Unstable), ("pi_5", Severity::Unstable), ("pi_p", Severity::Nonstable), ("pi_g", Severity::Nonstable)];
    cases
        .par_iter()
        .map(|&(entry, needed)| {
            let expected = format!("{needed:?} witness").to_lowercase();
            let a = builtin(entry).expect("catalog entry").system;
            match decide_stability(&a, &DecideOptions::default()) {
                Ok(v) => match v.witness {
                    Some(w) => {
                        let ok = verify_witness(&a, &w) && w.severity() >= needed;
                        let observed = format!("{:?} witness, s = {}, dim U' = {}", w.severity(), w.s(), w.u_prime().dim());
                        claim(entry, expected, observed.to_lowercase(), ok)
                    }
                    None => claim(entry, expected, format!("{:?}, no witness", v.tag).to_lowercase(), false),
                },
                Err(e) => failed(entry, &expected, &e),
            }
        })
        .collect()
}

const PF_FILLS: usize = 300;
const ONE_PS_FILLS: usize = 200;

fn random_fill<R: Rng>(rng: &mut R, s: usize, severity: Severity) -> LinearSystem<Rational> {
    let free = (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).filter(|&(i, j)| !pattern_forces_zero(s, severity, i, j)).count();
    let ngens = rng.gen_range(1..=free.min(6));
    pattern_fill(rng, s, severity, ngens, 5)
}

fn unstable_in_pf(seed: u64) -> Vec<Claim> {
    let mut rng = sample::rng(seed);
    let fills: Vec<(usize, LinearSystem<Rational>)> =
        (0..PF_FILLS).map(|k| (k % 3 + 1, random_fill(&mut rng, k % 3 + 1, Severity::Unstable))).collect();
    let nonzero = fills.par_iter().filter(|(_, a)| !a.pfaffian_cubic().is_zero()).count();
    let pf = claim(
        "unstable patterns lie in Pf",
        format!("{PF_FILLS}/{PF_FILLS} Pf-cubic = 0"),
        format!("{}/{PF_FILLS} Pf-cubic = 0", PF_FILLS - nonzero),
        nonzero == 0,
    );

    let mut misses = 0;
    for k in 0..ONE_PS_FILLS {
        let s = k % 3 + 1;
        let (severity, family, ok): (Severity, OnePS, fn(LimitClass) -> bool) = if k % 2 == 0 {
            (Severity::Unstable, OnePS::unstable_family(s), |c| c == LimitClass::LimitZero)
        } else {
            (Severity::Nonstable, OnePS::nonstable_family(s), |c| c != LimitClass::Diverges)
        };
        let a = random_fill(&mut rng, s, severity);
        if !ok(one_ps_limit_class(&a, &family)) {
            misses += 1;
        }
    }
    let one_ps = claim(
        "one-parameter subgroup limits",
        format!("{ONE_PS_FILLS}/{ONE_PS_FILLS} limit zero (unstable) or bounded (nonstable)"),
        format!("{}/{ONE_PS_FILLS}", ONE_PS_FILLS - misses),
        misses == 0,
    );
    vec![pf, one_ps]
}

fn beta_matrices(seed: u64) -> Vec<Claim> {
    [(BetaMatrix::conic(), BetaOrbit::ConicType, "beta_conic"), (BetaMatrix::lines(), BetaOrbit::TwoLinesType, "beta_lines")]
        .par_iter()
        .flat_map_iter(|(beta, orbit, name)| {
            let report = beta_rank_locus(beta, *orbit, 20, 50, seed);
            let locus = claim(
                format!("{name} rank locus"),
                "Pf = 0, rank 2 on the locus, rank 4 off it",
                format!(
                    "Pf = 0: {}, locus ranks {:?}, generic ranks {:?}",
                    report.pfaffian_zero,
                    distinct(&report.locus_ranks),
                    distinct(&report.generic_ranks)
                ),
                report.matches(),
            );
            let label = match beta_orbit(beta) {
                Ok(o) => claim(format!("{name} orbit"), format!("{orbit:?}"), format!("{o:?}"), o == *orbit),
                Err(e) => failed(&format!("{name} orbit"), &format!("{orbit:?}"), &e),
            };
            let mut stable = stable_exact(beta.system());
            stable.name = format!("{name} stability");
            vec![locus, label, stable]
        })
        .collect()
}

fn distinct(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

const PROBE_POINTS: usize = 200;

/// Adding a rank-2 point of the scroll to the five-dimensional representative never gives a
/// stable six-dimensional system inside Pf.
fn scroll_extensions(seed: u64) -> Vec<Claim> {
    let name = "dim-5 extensions by scroll points";
    let expected = format!("{PROBE_POINTS}/{PROBE_POINTS} leave Pf or become non-stable");
    let base = builtin("thm_dim5").expect("catalog entry").system;
    let scroll = match ScrollDatum::new(&pi_g()) {
        Ok(s) => s,
        Err(e) => return vec![failed(name, &expected, &e)],
    };
    let mut rng = sample::rng(seed);
    let mut points = Vec::new();
    while points.len() < PROBE_POINTS {
        let omega = pi_g().combination(&sample::random_combination(&mut rng, pi_g().generators(), 5));
        let t = [sample::random_int(&mut rng, 5), sample::random_int(&mut rng, 5)];
        let Ok(theta) = scroll.psi(&omega, [&t[0], &t[1]]) else { continue };
        if let Ok(a) = base.extended(theta) {
            points.push(a);
        }
    }
    let outcomes: Vec<Result<bool>> = points
        .par_iter()
        .map(|a| {
            if !a.pfaffian_cubic().is_zero() {
                return Ok(true);
            }
            Ok(decide_stability(a, &DecideOptions::default())?.tag != VerdictTag::Stable)
        })
        .collect();
    let ok = outcomes.iter().filter(|r| matches!(r, Ok(true))).count();
    vec![claim(name, expected, format!("{ok}/{PROBE_POINTS}"), ok == PROBE_POINTS)]
}

/// Runs one named report; `planes` is accepted for `planes_not_stable`.
pub fn verify_theorem(name: &str, seed: u64) -> Result<TheoremReport> {
    let claims = match name {
        "dim3" => {
            let mut c = representative("thm_dim3");
            c.push(degenerate_dim3());
            c
        }
        "dim4a" => representative("thm_dim4a"),
        "dim4b" => representative("thm_dim4b"),
        "dim5" => representative("thm_dim5"),
        "planes" | "planes_not_stable" => planes_not_stable(),
        "unstable_in_pf" => unstable_in_pf(seed),
        "beta_matrices" => beta_matrices(seed),
        "scroll_extensions" => scroll_extensions(seed),
        other => return Err(Error::UnknownName(other.to_string())),
    };
    let theorem = if name == "planes" { "planes_not_stable" } else { name };
    Ok(TheoremReport { theorem: theorem.to_string(), claims })
}

/// `all` expands to every report in [`THEOREMS`], run in parallel.
pub fn verify_suite(name: &str, seed: u64) -> Result<Vec<TheoremReport>> {
    if name == "all" {
        THEOREMS.par_iter().map(|t| verify_theorem(t, seed)).collect()
    } else {
        Ok(vec![verify_theorem(name, seed)?])
    }
}
