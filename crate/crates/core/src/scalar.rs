//! Exact coefficient fields.
//!
//! Two backends are provided: arbitrary-precision rationals and residues
//! modulo a prime fixed at compile time.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact field.
pub trait Field:
    Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static
{
    /// Short backend name used in reports.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Whether the canonical printed form carries a minus sign.
    fn is_negative(&self) -> bool;
    /// Parse `a`, `-a` or `a/b`.
    fn parse(s: &str) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Arbitrary-precision rationals, always stored in lowest terms.
pub type Rational = BigRational;

impl Field for BigRational {
    const NAME: &'static str = "rational";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let value = BigRational::from_str(s).ok()?;
        Some(value)
    }
}

/// Residues modulo the prime `P`, stored as the least non-negative residue.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

/// Prime fields offered by the command line.
pub type F32003 = Fp<32003>;
pub type F1000003 = Fp<1_000_003>;
pub type F2147483647 = Fp<2_147_483_647>;

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u128;
        let mut acc = 1u128;
        let p = P as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u64)
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Fp<P> {
    const NAME: &'static str = "mod-p";

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp(((self.0 as u128 + other.0 as u128) % P as u128) as u64)
    }
    fn sub(&self, other: &Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - other.0 as u128) % P as u128) as u64)
    }
    fn mul(&self, other: &Self) -> Self {
        Fp((self.0 as u128 * other.0 as u128 % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    fn is_negative(&self) -> bool {
        false
    }
    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((a, b)) => {
                let a = Self::from_i64(a.trim().parse().ok()?);
                let b = Self::from_i64(b.trim().parse().ok()?);
                Some(a.mul(&b.inv()?))
            }
            None => Some(Self::from_i64(s.parse().ok()?)),
        }
    }
}

/// Absolute value used when printing a negative coefficient.
pub(crate) fn abs<F: Field>(c: &F) -> F {
    if c.is_negative() {
        c.neg()
    } else {
        c.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_canonical_form() {
        let a = <Rational as Field>::parse("6/4").unwrap();
        assert_eq!(a.to_string(), "3/2");
        assert_eq!(<Rational as Field>::parse("-2").unwrap().to_string(), "-2");
        assert!(Field::is_zero(&a.sub(&a)));
    }

    #[test]
    fn prime_field_arithmetic() {
        type F = Fp<7>;
        let a = F::from_i64(-1);
        assert_eq!(a.value(), 6);
        assert_eq!(a.mul(&a), F::one());
        for v in 1..7 {
            let x = F::from_i64(v);
            assert_eq!(x.mul(&x.inv().unwrap()), F::one());
        }
        assert_eq!(F::parse("1/2").unwrap(), F::from_i64(4));
    }

    #[test]
    fn large_prime_does_not_overflow() {
        let a = F2147483647::from_i64(2_147_483_646);
        assert_eq!(a.mul(&a), F2147483647::one());
    }
}
