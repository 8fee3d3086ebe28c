//! p-adic valuations on exact rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::rat::Rat;
use crate::error::{Error, Result};

/// A valuation: an integer, or `+inf` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PadicVal {
    Finite(i64),
    Infinite,
}

impl PadicVal {
    pub fn is_infinite(self) -> bool {
        matches!(self, PadicVal::Infinite)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            PadicVal::Finite(v) => Some(v),
            PadicVal::Infinite => None,
        }
    }

    /// Multiplies a finite valuation by an exponent (valuation of a power).
    pub fn scale(self, k: u32) -> PadicVal {
        match self {
            _ if k == 0 => PadicVal::Finite(0),
            PadicVal::Finite(v) => PadicVal::Finite(v * k as i64),
            PadicVal::Infinite => PadicVal::Infinite,
        }
    }
}

impl Ord for PadicVal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PadicVal::Infinite, PadicVal::Infinite) => Ordering::Equal,
            (PadicVal::Infinite, _) => Ordering::Greater,
            (_, PadicVal::Infinite) => Ordering::Less,
            (PadicVal::Finite(a), PadicVal::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for PadicVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for PadicVal {
    type Output = PadicVal;

    fn add(self, rhs: PadicVal) -> PadicVal {
        match (self, rhs) {
            (PadicVal::Finite(a), PadicVal::Finite(b)) => PadicVal::Finite(a + b),
            _ => PadicVal::Infinite,
        }
    }
}

impl From<i64> for PadicVal {
    fn from(v: i64) -> Self {
        PadicVal::Finite(v)
    }
}

impl fmt::Display for PadicVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicVal::Finite(v) => write!(f, "{v}"),
            PadicVal::Infinite => f.write_str("+inf"),
        }
    }
}

impl Serialize for PadicVal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PadicVal::Finite(v) => s.serialize_i64(*v),
            PadicVal::Infinite => s.serialize_str("+inf"),
        }
    }
}

pub fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A checked prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Prime(i64);

impl Prime {
    pub fn new(p: i64) -> Result<Prime> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> i64 {
        self.0
    }

    pub fn big(self) -> BigInt {
        BigInt::from(self.0)
    }
}

/// Exponent of `p` in a nonzero integer.
pub fn vp_int(n: &BigInt, p: Prime) -> u64 {
    debug_assert!(!n.is_zero());
    let p = p.big();
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn vp(x: &Rat, p: Prime) -> PadicVal {
    if x.is_zero() {
        return PadicVal::Infinite;
    }
    let v = vp_int(x.numer(), p) as i64 - vp_int(x.denom(), p) as i64;
    PadicVal::Finite(v)
}

/// Like [`vp`] but checks primality of a raw integer first.
pub fn vp_checked(x: &Rat, p: i64) -> Result<PadicVal> {
    Ok(vp(x, Prime::new(p)?))
}

/// `p^e` as a rational, for any integer `e`.
pub fn prime_power(p: Prime, e: i64) -> Rat {
    let base = p.big();
    let mag = num_traits::pow(base, e.unsigned_abs().to_usize().expect("exponent fits usize"));
    if e >= 0 {
        Rat::from_integer(mag)
    } else {
        Rat::new(BigInt::from(1), mag)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat::{int, rat};
    use proptest::prelude::*;

    fn p(n: i64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn zero_is_infinite() {
        assert_eq!(vp(&int(0), p(5)), PadicVal::Infinite);
    }

    #[test]
    fn inverse_square_of_p() {
        assert_eq!(vp(&rat(1, 25), p(5)), PadicVal::Finite(-2));
    }

    // oracle: 3/4 = 3 * 2^-2
    #[test]
    fn three_quarters() {
        assert_eq!(vp(&rat(3, 4), p(2)), PadicVal::Finite(-2));
        assert_eq!(vp(&rat(3, 4), p(3)), PadicVal::Finite(1));
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(vp_checked(&int(3), 6), Err(Error::NotPrime(6)));
        assert_eq!(vp_checked(&int(3), 1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn ordering_puts_infinity_last() {
        assert!(PadicVal::Infinite > PadicVal::Finite(i64::MAX));
        assert_eq!(PadicVal::Finite(2) + PadicVal::Infinite, PadicVal::Infinite);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(p(5), -2), rat(1, 25));
        assert_eq!(prime_power(p(3), 3), int(27));
    }

    proptest! {
        #[test]
        fn ultrametric(a in -500i64..500, b in 1i64..500, c in -500i64..500, d in 1i64..500,
                       pi in 0usize..4) {
            let pr = p([2, 3, 5, 7][pi]);
            let x = rat(a, b);
            let y = rat(c, d);
            let vx = vp(&x, pr);
            let vy = vp(&y, pr);
            let vs = vp(&(&x + &y), pr);
            prop_assert!(vs >= vx.min(vy));
            if vx != vy {
                prop_assert_eq!(vs, vx.min(vy));
            }
            prop_assert_eq!(vp(&(&x * &y), pr), vx + vy);
        }
    }
}
