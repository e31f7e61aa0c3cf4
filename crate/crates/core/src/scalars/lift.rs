use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Recovers `r/s` from `a mod m` with `|r|, s ≤ sqrt(m/2)`, if such a fraction exists.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    if *m <= BigInt::one() {
        return None;
    }
    let bound = (m / BigInt::from(2)).sqrt();
    let mut r0 = m.clone();
    let mut r1 = a.mod_floor(m);
    let mut s0 = BigInt::zero();
    let mut s1 = BigInt::one();
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !s1.gcd(m).is_one() {
        return None;
    }
    let (num, den) = if s1.is_negative() { (-r1, -s1) } else { (r1, s1) };
    Rational::from_bigints(num, den)
}

/// Combines `a mod m` and `b mod n` (coprime moduli) into a residue mod `m·n`.
pub fn crt_pair(a: &BigInt, m: &BigInt, b: &BigInt, n: &BigInt) -> (BigInt, BigInt) {
    let g = m.extended_gcd(n);
    debug_assert!(g.gcd.is_one());
    let mn = m * n;
    // a + m·((b − a)·m⁻¹ mod n)
    let t = ((b - a) * g.x).mod_floor(n);
    ((a + m * t).mod_floor(&mn), mn)
}
