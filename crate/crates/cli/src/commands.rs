use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use skewforms::catalog::{verify_suite, TheoremReport};
use skewforms::exterior::{AlternatingForm, PAIRS};
use skewforms::linsys::{generic_rank, gr_intersection, LinearSystem};
use skewforms::planes::{classify_plane, is_constant_rank4, normalize_general_plane, recover_cdf, OrbitLabel, PlaneOrbit};
use skewforms::sample;
use skewforms::scalars::{check_primes, Rational, Ring};
use skewforms::scroll::ScrollDatum;
use skewforms::stability::{decide_stability, DecideOptions, StabilityVerdict};
use skewforms::Error;

use crate::input::{self, Parsed};
use crate::{Cli, Command, Source};

pub struct Output {
    pub text: String,
    pub ok: bool,
}

pub struct Failure {
    pub message: String,
    pub code: u8,
}

impl Failure {
    pub fn usage(message: String) -> Self {
        Failure { message, code: 2 }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedPrime(_) | Error::Parse(_) | Error::UnknownName(_) => 2,
            _ => 1,
        };
        Failure { message: e.to_string(), code }
    }
}

type Res = Result<Output, Failure>;

fn emit<T: Serialize>(cli: &Cli, value: &T, table: impl FnOnce() -> String) -> Res {
    let text = if cli.json { serde_json::to_string_pretty(value).expect("serializable") + "\n" } else { table() };
    Ok(Output { text, ok: true })
}

pub fn run(cli: &Cli) -> Res {
    check_primes(&cli.primes).map_err(|e| Failure::usage(format!("--primes: {e}")))?;
    match &cli.command {
        Command::Rank(src) => rank(cli, src),
        Command::Pfaffian(src) => pfaffian(cli, src),
        Command::GrIntersect(src) => gr(cli, src),
        Command::Stability { source, assume_pi_g } => stability(cli, source, *assume_pi_g),
        Command::ClassifyPlane(src) => classify(cli, src),
        Command::Scroll { source, member, quadric_dim, count } => scroll(cli, source, member.as_deref(), *quadric_dim, *count),
        Command::Verify { theorem } => verify(cli, theorem),
        Command::OrbitSample(src) => orbit_sample(cli, src),
    }
}

/// `c·e_i^e_j + …` with 1-based indices.
fn show_form(f: &AlternatingForm<Rational>) -> String {
    let terms: Vec<String> = PAIRS
        .iter()
        .zip(f.coeffs())
        .filter(|(_, c)| !c.is_zero())
        .map(|(&(i, j), c)| {
            let e = format!("e{}^e{}", i + 1, j + 1);
            if *c == Rational::one() {
                e
            } else if *c == -Rational::one() {
                format!("-{e}")
            } else {
                format!("{c}*{e}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

fn rank(cli: &Cli, src: &Source) -> Res {
    let a = input::system(src)?;
    let r = generic_rank(&a, cli.seed);
    let value = json!({ "dim": a.dim(), "generic_rank": r.rank, "pf_cubic_zero": r.pf_cubic_zero, "sampled_max": r.sampled_max });
    emit(cli, &value, || {
        let pf = if r.pf_cubic_zero { "Pf-cubic ≡ 0" } else { "Pf-cubic ≢ 0" };
        format!("generic rank {}, {pf}\n", r.rank)
    })
}

fn pfaffian(cli: &Cli, src: &Source) -> Res {
    match input::parse_any(src)? {
        Parsed::Form(f) => {
            let (pf, rk) = (f.pfaffian(), f.rank());
            emit(cli, &json!({ "pfaffian": pf, "rank": rk }), || format!("Pf = {pf}\nrank = {rk}\n"))
        }
        Parsed::System(a) => {
            let cubic = a.pfaffian_cubic();
            let value = json!({ "pfaffian_cubic": cubic.to_string(), "zero": cubic.is_zero() });
            emit(cli, &value, || format!("Pf = {cubic}\n"))
        }
    }
}

fn gr(cli: &Cli, src: &Source) -> Res {
    let a = input::system(src)?;
    let report = gr_intersection(&a, &cli.primes)?;
    emit(cli, &report, || {
        let mut t = String::from("p,count,type\n");
        for (p, c) in &report.counts {
            let _ = writeln!(t, "{p},{c},{}", report.kind);
        }
        t
    })
}

fn show_verdict(v: &StabilityVerdict) -> String {
    let mut t = format!("verdict: {:?}\npath: {:?}\ncertified: {}\n", v.tag, v.evidence.path, v.evidence.certified);
    if let Some(w) = &v.witness {
        let _ = writeln!(t, "witness: s = {}, {:?}", w.s(), w.severity());
        let _ = writeln!(t, "  U  = {}", w.u());
        let _ = writeln!(t, "  U' = {}", w.u_prime());
    }
    for n in &v.evidence.notes {
        let _ = writeln!(t, "note: {n}");
    }
    t
}

fn stability(cli: &Cli, src: &Source, assume_pi_g: bool) -> Res {
    let a = input::system(src)?;
    let opts = DecideOptions { primes: cli.primes.clone(), seed: cli.seed, assume_pi_g };
    let v = decide_stability(&a, &opts)?;
    emit(cli, &v, || show_verdict(&v))
}

fn classify(cli: &Cli, src: &Source) -> Res {
    let b = input::system(src)?;
    let label = classify_plane(&b)?;
    let evidence = is_constant_rank4(&b, &cli.primes)?;
    let general = label == OrbitLabel::Orbit(PlaneOrbit::General);
    let cdf = general.then(|| recover_cdf(&b).ok()).flatten();
    let normalizer = general.then(|| normalize_general_plane(&b).ok()).flatten().map(|g| g.matrix().rows_vec());
    let mut value = json!({ "label": label.to_string(), "constant_rank4": evidence });
    if let Some(c) = &cdf {
        value["cdf"] = json!({ "C": c.c, "D": c.d, "f": c.f });
    }
    if let Some(g) = &normalizer {
        value["normalizer"] = json!(g);
    }
    emit(cli, &value, || {
        let mut t = format!("label: {label}\n");
        if let Some(c) = &cdf {
            let _ = writeln!(t, "C = {}\nD = {}", c.c, c.d);
        } else if general {
            t.push_str("isotropic 3-spaces are not defined over Q\n");
        }
        t
    })
}

fn scroll(cli: &Cli, src: &Source, member: Option<&str>, quadric_dim: bool, count: bool) -> Res {
    let b = input::system(src)?;
    let z = ScrollDatum::new(&b)?;
    let mut value = json!({ "lambda_dim": z.lambda.len(), "gauss_span_dim": z.gauss_span.len() });
    let mut t = format!("span of the scroll: dimension {}\n", z.lambda.len());
    if let Some(path) = member {
        let w = input::form(path)?;
        if b.contains(&w) {
            let c = z.conic(&w)?;
            let fibers: BTreeMap<u32, usize> =
                cli.primes.iter().map(|&p| Ok((p, z.conic_fiber_mod(&w, p)?.len()))).collect::<Result<_, Error>>()?;
            let _ = writeln!(t, "rho = {}\npsi(t) = t0^2*({}) + t0*t1*({}) + t1^2*({})", show_form(&c.a0), show_form(&c.a0), show_form(&c.a1), show_form(&c.a2));
            value["member"] = json!({ "in_plane": true, "rho": c.a0, "conic": c, "fiber_points": fibers });
        } else {
            let (inl, onz) = (z.in_lambda(&w), z.z_membership(&w));
            let _ = writeln!(t, "not in the plane; in span: {inl}; on the scroll: {onz}");
            value["member"] = json!({ "in_plane": false, "in_lambda": inl, "on_scroll": onz });
        }
    }
    if quadric_dim {
        let d = z.restricted_quadric_system_dim();
        let _ = writeln!(t, "restricted quadric system: dimension {d}");
        value["quadric_dim"] = json!(d);
    }
    if count {
        let counts: BTreeMap<u32, u64> = cli.primes.iter().map(|&p| Ok((p, z.z_point_count(p)?))).collect::<Result<_, Error>>()?;
        for (p, c) in &counts {
            let _ = writeln!(t, "|Z(F_{p})| = {c}");
        }
        value["point_counts"] = json!(counts);
    }
    emit(cli, &value, || t)
}

fn table(reports: &[TheoremReport]) -> String {
    let mut t = String::new();
    for r in reports {
        for c in &r.claims {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(t, "{mark}  {:<18} {:<34} expected {} | observed {}", r.theorem, c.name, c.expected, c.observed);
        }
    }
    let failed = reports.iter().filter(|r| !r.pass()).count();
    let _ = writeln!(t, "{} reports, {} failed", reports.len(), failed);
    t
}

fn verify(cli: &Cli, theorem: &str) -> Res {
    let reports = verify_suite(theorem, cli.seed)?;
    let ok = reports.iter().all(TheoremReport::pass);
    let mut out = emit(cli, &reports, || table(&reports))?;
    out.ok = ok;
    Ok(out)
}

fn orbit_sample(cli: &Cli, src: &Source) -> Res {
    let a = input::system(src)?;
    let mut rng = sample::rng(cli.seed);
    let g = sample::random_unimodular(&mut rng);
    let moved: LinearSystem<Rational> = a.act(&g);
    let value = if cli.json { json!({ "system": moved, "g": g.matrix().rows_vec() }) } else { json!(moved) };
    Ok(Output { text: serde_json::to_string_pretty(&value).expect("serializable") + "\n", ok: true })
}
