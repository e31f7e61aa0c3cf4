//! Exact solver for small zero-dimensional polynomial systems over the rationals.
//!
//! Handles systems whose elimination steps stay linear, univariate, or affine in the
//! eliminated variable. Anything else is reported rather than guessed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use super::{Field, Matrix, MultiPoly, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("solution set is positive-dimensional")]
    PositiveDimensional,
    #[error("some solutions are not rational")]
    NonRational,
    #[error("system shape not supported by the elimination strategy")]
    Unsupported,
}

type Poly = MultiPoly<Rational>;

/// All common zeros of `eqs` in the unknowns listed in `unknowns`.
///
/// Variables not listed must not occur in `eqs`. Each solution is a full assignment of
/// length `nvars`, with unlisted variables set to zero.
pub fn solve_system(eqs: &[Poly], unknowns: &[usize], nvars: usize) -> Result<Vec<Vec<Rational>>, SolveError> {
    let eqs: Vec<Poly> = eqs.iter().map(|e| lift_vars(e, nvars)).collect();
    let mut sols = solve_rec(&eqs, unknowns.to_vec(), nvars)?;
    sols.retain(|s| eqs.iter().all(|e| e.eval(s).map(|v| v.is_zero()).unwrap_or(false)));
    sols.sort();
    sols.dedup();
    Ok(sols)
}

fn lift_vars(p: &Poly, nvars: usize) -> Poly {
    if p.nvars() == nvars {
        p.clone()
    } else {
        p.clone() + Poly::zero_in(nvars)
    }
}

fn solve_rec(eqs: &[Poly], unknowns: Vec<usize>, nvars: usize) -> Result<Vec<Vec<Rational>>, SolveError> {
    let mut live = Vec::new();
    for e in eqs {
        if e.is_zero() {
            continue;
        }
        if e.as_constant().is_some() {
            return Ok(Vec::new());
        }
        live.push(e.clone());
    }
    if unknowns.is_empty() {
        return Ok(vec![vec![Rational::zero(); nvars]]);
    }
    if live.is_empty() {
        return Err(SolveError::PositiveDimensional);
    }

    // Linear equations: eliminate pivot variables by substitution.
    let linear: Vec<&Poly> = live.iter().filter(|e| e.total_degree() == Some(1)).collect();
    if !linear.is_empty() {
        return solve_linear_step(&live, &linear, &unknowns, nvars);
    }

    // Univariate equation: branch over its rational roots.
    if let Some((var, poly)) = live.iter().find_map(|e| {
        let s = e.support();
        (s.len() == 1).then(|| (s[0], e))
    }) {
        let roots = rational_roots(&poly.coefficients_in(var))?;
        let rest: Vec<usize> = unknowns.iter().copied().filter(|&u| u != var).collect();
        let mut out = Vec::new();
        for r in roots {
            let sub: Vec<Poly> = live.iter().map(|e| e.substitute(var, &r)).collect();
            for mut s in solve_rec(&sub, rest.clone(), nvars)? {
                s[var] = r.clone();
                out.push(s);
            }
        }
        return Ok(out);
    }

    // Affine elimination of a variable of degree ≤ 1 everywhere.
    let var = unknowns
        .iter()
        .copied()
        .find(|&v| live.iter().all(|e| e.degree_in(v) <= 1) && live.iter().any(|e| e.degree_in(v) == 1))
        .ok_or(SolveError::Unsupported)?;
    let rest: Vec<usize> = unknowns.iter().copied().filter(|&u| u != var).collect();
    let mut e0 = Vec::new();
    let mut e1 = Vec::new();
    for e in &live {
        let cs = e.coefficients_in(var);
        if cs.len() == 1 {
            e0.push(e.clone());
        } else {
            e1.push((cs[0].clone(), cs[1].clone()));
        }
    }

    // Branch where every leading coefficient vanishes: the variable would be free.
    let mut free_sys = e0.clone();
    for (a, b) in &e1 {
        free_sys.push(a.clone());
        free_sys.push(b.clone());
    }
    if !solve_rec(&free_sys, rest.clone(), nvars)?.is_empty() {
        return Err(SolveError::PositiveDimensional);
    }

    // Branch i: b_j = 0 for j < i, b_i ≠ 0, so var = −a_i / b_i.
    let mut out = Vec::new();
    for (i, (ai, bi)) in e1.iter().enumerate() {
        let mut sys = e0.clone();
        for (aj, bj) in &e1[..i] {
            sys.push(bj.clone());
            sys.push(aj.clone());
        }
        for (aj, bj) in &e1[i + 1..] {
            sys.push(aj.clone() * bi.clone() - ai.clone() * bj.clone());
        }
        for mut s in solve_rec(&sys, rest.clone(), nvars)? {
            let b = bi.eval(&s).map_err(|_| SolveError::Unsupported)?;
            if b.is_zero() {
                continue;
            }
            let a = ai.eval(&s).map_err(|_| SolveError::Unsupported)?;
            s[var] = -(a.div(&b).expect("nonzero"));
            out.push(s);
        }
    }
    Ok(out)
}

fn solve_linear_step(
    live: &[Poly],
    linear: &[&Poly],
    unknowns: &[usize],
    nvars: usize,
) -> Result<Vec<Vec<Rational>>, SolveError> {
    // Rows: coefficients on the unknowns, then the negated constant term.
    let cols = unknowns.len();
    let rows: Vec<Vec<Rational>> = linear
        .iter()
        .map(|e| {
            let mut row: Vec<Rational> = unknowns
                .iter()
                .map(|&u| {
                    let mut ex = vec![0u32; nvars];
                    ex[u] = 1;
                    e.coefficient(&ex)
                })
                .collect();
            row.push(-e.coefficient(&vec![0u32; nvars]));
            row
        })
        .collect();
    let (m, pivots) = Matrix::from_rows(&rows, cols + 1).rref();
    if pivots.last() == Some(&cols) {
        return Ok(Vec::new());
    }
    let pivot_vars: Vec<usize> = pivots.iter().map(|&c| unknowns[c]).collect();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).map(|c| unknowns[c]).collect();

    // Each pivot variable as an affine function of the free ones.
    let mut args: Vec<Poly> = (0..nvars).map(|v| Poly::var(v, nvars)).collect();
    for (r, &pv) in pivot_vars.iter().enumerate() {
        let mut expr = Poly::constant(m[(r, cols)].clone(), nvars);
        for (c, &u) in unknowns.iter().enumerate() {
            if !pivots.contains(&c) && !m[(r, c)].is_zero() {
                expr = expr - Poly::var(u, nvars).scale(&m[(r, c)]);
            }
        }
        args[pv] = expr;
    }
    let sub: Vec<Poly> = live
        .iter()
        .map(|e| e.compose(&args).expect("arity"))
        .collect();
    let mut out = Vec::new();
    for mut s in solve_rec(&sub, free, nvars)? {
        for &pv in &pivot_vars {
            s[pv] = args[pv].eval(&s).expect("arity");
        }
        out.push(s);
    }
    Ok(out)
}

/// Distinct rational roots of `Σ c_k x^k`; errors unless the polynomial splits over ℚ.
pub fn rational_roots(coeffs: &[Poly]) -> Result<Vec<Rational>, SolveError> {
    let c: Vec<Rational> = coeffs
        .iter()
        .map(|p| p.as_constant().ok_or(SolveError::Unsupported))
        .collect::<Result<_, _>>()?;
    rational_roots_of(&c)
}

/// Distinct rational roots of a univariate polynomial given by rational coefficients.
pub fn rational_roots_of(coeffs: &[Rational]) -> Result<Vec<Rational>, SolveError> {
    let mut c: Vec<BigInt> = integer_coefficients(coeffs);
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    if c.len() <= 1 {
        return if c.is_empty() { Err(SolveError::PositiveDimensional) } else { Ok(Vec::new()) };
    }
    let mut roots = Vec::new();
    if c[0].is_zero() {
        roots.push(Rational::zero());
        while c[0].is_zero() {
            c.remove(0);
        }
    }
    loop {
        match c.len() - 1 {
            0 => break,
            1 => {
                roots.push(Rational::from_bigints(-c[0].clone(), c[1].clone()).expect("nonzero"));
                break;
            }
            2 => {
                let (a, b, cc) = (&c[2], &c[1], &c[0]);
                let disc = b * b - BigInt::from(4) * a * cc;
                if disc.is_negative() {
                    return Err(SolveError::NonRational);
                }
                let s = disc.sqrt();
                if &s * &s != disc {
                    return Err(SolveError::NonRational);
                }
                let two_a = BigInt::from(2) * a;
                roots.push(Rational::from_bigints(-b + &s, two_a.clone()).expect("nonzero"));
                roots.push(Rational::from_bigints(-b - &s, two_a).expect("nonzero"));
                break;
            }
            _ => {
                let r = find_rational_root(&c).ok_or(SolveError::NonRational)?;
                c = deflate(&c, &r);
                roots.push(r);
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn integer_coefficients(coeffs: &[Rational]) -> Vec<BigInt> {
    let l = coeffs.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
    coeffs.iter().map(|q| q.numer() * (&l / q.denom())).collect()
}

const DIVISOR_LIMIT: u64 = 1_000_000;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let small: u64 = n.clone().try_into().ok()?;
    if small > DIVISOR_LIMIT * DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small.is_multiple_of(d) {
            out.push(BigInt::from(d));
            out.push(BigInt::from(small / d));
        }
        d += 1;
    }
    Some(out)
}

fn find_rational_root(c: &[BigInt]) -> Option<Rational> {
    let ps = divisors(&c[0])?;
    let qs = divisors(c.last()?)?;
    for p in &ps {
        for q in &qs {
            for sign in [1, -1] {
                let r = Rational::from_bigints(p * sign, q.clone())?;
                let value = c.iter().rev().fold(Rational::zero(), |acc, k| {
                    acc * r.clone() + Rational::from_bigints(k.clone(), BigInt::from(1)).expect("unit")
                });
                if value.is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// Divides by `(q·x − p)` where `r = p/q` is a root; result stays integral.
fn deflate(c: &[BigInt], r: &Rational) -> Vec<BigInt> {
    let (p, q) = (r.numer().clone(), r.denom().clone());
    let n = c.len() - 1;
    let mut out = vec![BigInt::zero(); n];
    // c(x) = (q x − p) · d(x); solve from the top coefficient down.
    let mut carry = BigInt::zero();
    for k in (1..=n).rev() {
        let v = (&c[k] + &carry) / &q;
        carry = &v * &p;
        out[k - 1] = v;
    }
    out
}
