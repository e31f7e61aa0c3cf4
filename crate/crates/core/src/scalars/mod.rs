//! Exact scalars: rationals, prime fields, sparse polynomials and dense matrices.

mod fp;
mod lift;
mod matrix;
mod poly;
mod rational;
pub mod solve;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use fp::{projective_count, projective_point, Fp};
pub use lift::{crt_pair, rational_reconstruct};
pub use matrix::Matrix;
pub use poly::MultiPoly;
pub use rational::{reduce_mod, Rational};

/// Commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
}

/// Field: a ring with inverses of nonzero elements.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }
}

/// Primes with a compiled finite-field backend.
pub const SUPPORTED_PRIMES: [u32; 14] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
pub(crate) const SUPPORTED_PRIMES_TEXT: &str = "3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47";

/// Default primes for finite-field enumeration.
pub const DEFAULT_PRIMES: [u32; 3] = [5, 7, 11];

/// Calls a function generic over `const P: u32` with a runtime prime.
///
/// Evaluates to `Result<T, Error>`; unsupported moduli give `UnsupportedPrime`.
#[macro_export]
macro_rules! dispatch_prime {
    ($p:expr, $func:ident ( $($arg:expr),* $(,)? )) => {{
        match $p {
            3 => Ok($func::<3>($($arg),*)),
            5 => Ok($func::<5>($($arg),*)),
            7 => Ok($func::<7>($($arg),*)),
            11 => Ok($func::<11>($($arg),*)),
            13 => Ok($func::<13>($($arg),*)),
            17 => Ok($func::<17>($($arg),*)),
            19 => Ok($func::<19>($($arg),*)),
            23 => Ok($func::<23>($($arg),*)),
            29 => Ok($func::<29>($($arg),*)),
            31 => Ok($func::<31>($($arg),*)),
            37 => Ok($func::<37>($($arg),*)),
            41 => Ok($func::<41>($($arg),*)),
            43 => Ok($func::<43>($($arg),*)),
            47 => Ok($func::<47>($($arg),*)),
            other => Err($crate::Error::UnsupportedPrime(other)),
        }
    }};
}

/// Trial-division primality, enough for moduli that fit the enumeration backend.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Validates a user-supplied prime list.
pub fn check_primes(primes: &[u32]) -> crate::Result<()> {
    for &p in primes {
        if p < 3 || !is_prime(p) {
            return Err(crate::Error::BadPrime(p));
        }
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(crate::Error::UnsupportedPrime(p));
        }
    }
    Ok(())
}
