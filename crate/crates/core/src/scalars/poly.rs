use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Ring;
use crate::{Error, Result};

/// Sparse multivariate polynomial in `X0..X{n-1}`.
///
/// Exponent vectors always have length `nvars`; zero coefficients are never stored.
/// Constants built through [`Ring::zero`]/[`Ring::one`] have `nvars = 0` and are
/// promoted when combined with a polynomial in more variables.
#[derive(Clone)]
pub struct MultiPoly<R> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, R>,
}

impl<R: Ring> MultiPoly<R> {
    pub fn zero_in(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: R, nvars: usize) -> Self {
        let mut p = Self::zero_in(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `X{i}`.
    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero_in(nvars);
        p.add_term(e, R::one());
        p
    }

    pub fn monomial(exps: Vec<u32>, c: R) -> Self {
        let mut p = Self::zero_in(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &R)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> R {
        let key = self.pad(exps);
        self.terms.get(&key).cloned().unwrap_or_else(R::zero)
    }

    fn pad(&self, exps: &[u32]) -> Vec<u32> {
        let mut e = exps.to_vec();
        e.resize(self.nvars.max(exps.len()), 0);
        e
    }

    fn add_term(&mut self, exps: Vec<u32>, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    fn promoted(&self, nvars: usize) -> Self {
        if nvars == self.nvars {
            return self.clone();
        }
        assert!(nvars > self.nvars, "cannot drop variables");
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.resize(nvars, 0);
                (e, c.clone())
            })
            .collect();
        MultiPoly { nvars, terms }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree if homogeneous; the zero polynomial is homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e.get(var).copied().unwrap_or(0)).max().unwrap_or(0)
    }

    /// Variables with a positive exponent in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.degree_in(v) > 0).collect()
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero_in(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> MultiPoly<S> {
        let mut out = MultiPoly::zero_in(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), f(v));
        }
        out
    }

    /// Exact evaluation.
    pub fn eval(&self, point: &[R]) -> Result<R> {
        if self.nvars != 0 && point.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, got: point.len() });
        }
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Substitutes polynomials (all in the same ring of `m` variables) for every variable.
    pub fn compose(&self, args: &[MultiPoly<R>]) -> Result<MultiPoly<R>> {
        if self.nvars != 0 && args.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, got: args.len() });
        }
        let m = args.iter().map(|a| a.nvars).max().unwrap_or(0);
        let mut acc = MultiPoly::zero_in(m);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone(), m);
            for (a, &k) in args.iter().zip(e) {
                for _ in 0..k {
                    t = t * a.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Replaces `X{var}` by the constant `value`, keeping the variable count.
    pub fn substitute(&self, var: usize, value: &R) -> Self {
        let mut out = Self::zero_in(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            let k = std::mem::replace(&mut e[var], 0);
            let mut t = c.clone();
            for _ in 0..k {
                t = t * value.clone();
            }
            out.add_term(e, t);
        }
        out
    }

    /// Writes `self = Σ_k c_k · X{var}^k` and returns the `c_k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly<R>> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Self::zero_in(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let mut e = e.clone();
            let k = std::mem::replace(&mut e[var], 0) as usize;
            out[k].add_term(e, c.clone());
        }
        out
    }

    /// Constant value if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<R> {
        match self.terms.len() {
            0 => Some(R::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }
}

impl<R: Ring> PartialEq for MultiPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        let n = self.nvars.max(other.nvars);
        self.promoted(n).terms == other.promoted(n).terms
    }
}

impl<R: Ring> fmt::Debug for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Ring> fmt::Display for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("X{i}") } else { format!("X{i}^{k}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{c:?}")?;
            } else if *c == R::one() {
                write!(f, "{}", mono.join("*"))?;
            } else if *c == -R::one() {
                write!(f, "-{}", mono.join("*"))?;
            } else {
                write!(f, "{c:?}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<R: Ring> Add for MultiPoly<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let n = self.nvars.max(o.nvars);
        let mut out = self.promoted(n);
        for (e, c) in o.promoted(n).terms {
            out.add_term(e, c);
        }
        out
    }
}

impl<R: Ring> Sub for MultiPoly<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<R: Ring> Neg for MultiPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        let terms = self.terms.into_iter().map(|(e, c)| (e, -c)).collect();
        MultiPoly { nvars: self.nvars, terms }
    }
}

impl<R: Ring> Mul for MultiPoly<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let n = self.nvars.max(o.nvars);
        let a = self.promoted(n);
        let b = o.promoted(n);
        let mut out = Self::zero_in(n);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<R: Ring> Ring for MultiPoly<R> {
    fn zero() -> Self {
        Self::zero_in(0)
    }
    fn one() -> Self {
        Self::constant(R::one(), 0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(R::from_i64(n), 0)
    }
}
