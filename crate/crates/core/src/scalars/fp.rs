use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Ring};

/// Element of the prime field F_P, stored as a residue in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub const ZERO: Self = Fp(0);
    pub const ONE: Self = Fp(1);

    /// Reduces any residue representative.
    #[inline]
    pub fn new(v: u32) -> Self {
        Fp(v % P)
    }

    #[inline]
    pub fn from_signed(v: i64) -> Self {
        Fp(v.rem_euclid(i64::from(P)) as u32)
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    pub const fn modulus() -> u32 {
        P
    }

    pub fn pow(self, mut e: u32) -> Self {
        let mut b = self;
        let mut r = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b;
            }
            b = b * b;
            e >>= 1;
        }
        r
    }

    /// Symmetric representative in `(-P/2, P/2]`.
    pub fn centered(self) -> i64 {
        let v = i64::from(self.0);
        if v > i64::from(P) / 2 {
            v - i64::from(P)
        } else {
            v
        }
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Fp(((u64::from(self.0) * u64::from(o.0)) % u64::from(P)) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u32> Ring for Fp<P> {
    fn zero() -> Self {
        Self::ZERO
    }
    fn one() -> Self {
        Self::ONE
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn from_i64(n: i64) -> Self {
        Self::from_signed(n)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Number of points of the projective space P^{m-1}(F_p).
pub fn projective_count(p: u32, m: usize) -> u64 {
    (0..m).map(|k| u64::from(p).pow(k as u32)).sum()
}

/// The `idx`-th point of P^{m-1}(F_P), normalized so the first nonzero coordinate is 1.
///
/// Points are ordered by the position of the leading one, then lexicographically.
pub fn projective_point<const P: u32>(m: usize, mut idx: u64) -> Vec<Fp<P>> {
    let p = u64::from(P);
    for lead in 0..m {
        let block = p.pow((m - 1 - lead) as u32);
        if idx < block {
            let mut v = vec![Fp::ZERO; m];
            v[lead] = Fp::ONE;
            for k in (lead + 1..m).rev() {
                v[k] = Fp::new((idx % p) as u32);
                idx /= p;
            }
            return v;
        }
        idx -= block;
    }
    panic!("projective index out of range");
}
