//! Exact coefficient arithmetic over the rationals and prime fields.
//!
//! A [`Coeff`] carries everything needed to do arithmetic with it, so the
//! usual operator traits work directly. Mixing a rational with a modular
//! value, or values modulo different primes, is a logic error and panics;
//! polynomial-level code checks ring descriptors before it gets that far.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientField {
    Rationals,
    PrimeField(u32),
}

impl CoefficientField {
    /// A prime field, rejecting composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if !(5..(1u64 << 31)).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(CoefficientField::PrimeField(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            CoefficientField::Rationals => 0,
            CoefficientField::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match *self {
            CoefficientField::Rationals => Coeff::Rational(BigRational::from_integer(v.into())),
            CoefficientField::PrimeField(p) => Coeff::Modular {
                value: v.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match *self {
            CoefficientField::Rationals => Coeff::Rational(BigRational::from_integer(v.clone())),
            CoefficientField::PrimeField(p) => Coeff::Modular {
                value: reduce_bigint(v, p),
                modulus: p,
            },
        }
    }

    /// Maps a rational into this field; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Coeff> {
        match *self {
            CoefficientField::Rationals => Ok(Coeff::Rational(q.clone())),
            CoefficientField::PrimeField(p) => {
                let num = reduce_bigint(q.numer(), p);
                let den = reduce_bigint(q.denom(), p);
                if den == 0 {
                    return Err(Error::DenominatorVanishes(q.denom().to_string()));
                }
                Ok(Coeff::Modular {
                    value: mul_mod(num, inv_mod(den, p), p),
                    modulus: p,
                })
            }
        }
    }

    /// Re-interprets a coefficient from another field in this one.
    pub fn convert(&self, c: &Coeff) -> Result<Coeff> {
        match c {
            Coeff::Rational(q) => self.from_rational(q),
            Coeff::Modular { modulus, .. } => match *self {
                CoefficientField::PrimeField(p) if p == *modulus => Ok(c.clone()),
                _ => Err(Error::RingMismatch),
            },
        }
    }

    pub fn contains(&self, c: &Coeff) -> bool {
        match (self, c) {
            (CoefficientField::Rationals, Coeff::Rational(_)) => true,
            (CoefficientField::PrimeField(p), Coeff::Modular { modulus, .. }) => p == modulus,
            _ => false,
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "Q"),
            CoefficientField::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

/// An element of a [`CoefficientField`].
///
/// Rationals are kept in lowest terms with a positive denominator (as
/// [`BigRational`] guarantees); modular values are kept in `0..modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

impl Coeff {
    pub fn field(&self) -> CoefficientField {
        match self {
            Coeff::Rational(_) => CoefficientField::Rationals,
            Coeff::Modular { modulus, .. } => CoefficientField::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_zero(),
            Coeff::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_one(),
            Coeff::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<Coeff> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Coeff::Rational(q) => Coeff::Rational(q.recip()),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, rhs: &Coeff) -> Result<Coeff> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Coeff {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// True when the rendered form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_negative(),
            Coeff::Modular { value, modulus } => *value > modulus / 2,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Rational(q) => Some(q),
            Coeff::Modular { .. } => None,
        }
    }

    /// Small integer representative, when one exists (used by the order-free
    /// pretty printer and by tests).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Coeff::Rational(q) if q.is_integer() => q.numer().to_i64(),
            Coeff::Rational(_) => None,
            Coeff::Modular { value, modulus } => Some(symmetric(*value, *modulus)),
        }
    }
}

fn symmetric(value: u32, modulus: u32) -> i64 {
    if value > modulus / 2 {
        value as i64 - modulus as i64
    } else {
        value as i64
    }
}

impl fmt::Display for Coeff {
    /// Rationals print as `p/q`; prime-field values print in the symmetric
    /// range `(-p/2, p/2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::Modular { value, modulus } => write!(f, "{}", symmetric(*value, *modulus)),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $q:expr, $m:expr) => {
        impl<'a> $trait<&'a Coeff> for &'a Coeff {
            type Output = Coeff;
            fn $method(self, rhs: &'a Coeff) -> Coeff {
                match (self, rhs) {
                    (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational($q(a, b)),
                    (
                        Coeff::Modular { value: a, modulus: p },
                        Coeff::Modular { value: b, modulus: q },
                    ) if p == q => Coeff::Modular {
                        value: $m(*a, *b, *p),
                        modulus: *p,
                    },
                    _ => panic!("coefficient field mismatch: {:?} vs {:?}", self, rhs),
                }
            }
        }

        impl $trait for Coeff {
            type Output = Coeff;
            fn $method(self, rhs: Coeff) -> Coeff {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, add_mod);
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, sub_mod);
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, mul_mod);

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Rational(q) => Coeff::Rational(-q),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + p as u64 - b as u64) % p as u64) as u32
}

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let g = (a as i64).extended_gcd(&(p as i64));
    debug_assert_eq!(g.gcd, 1);
    g.x.rem_euclid(p as i64) as u32
}

fn reduce_bigint(v: &BigInt, p: u32) -> u32 {
    let m = BigInt::from(p);
    v.mod_floor(&m).to_u32().expect("residue fits in u32")
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powm = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulm(r, b);
            }
            b = mulm(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn prime_field_construction() {
        assert!(CoefficientField::prime(32003).is_ok());
        assert!(CoefficientField::prime(7).is_ok());
        assert_eq!(CoefficientField::prime(32001), Err(Error::NotPrime(32001)));
        assert_eq!(CoefficientField::prime(3), Err(Error::ModulusOutOfRange(3)));
        assert_eq!(
            CoefficientField::prime(1 << 31),
            Err(Error::ModulusOutOfRange(1 << 31))
        );
        assert!(CoefficientField::prime(2147483647).is_ok());
    }

    #[test]
    fn primality_matches_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
    }

    #[test]
    fn rationals_stay_canonical() {
        let k = CoefficientField::Rationals;
        let a = k.from_rational(&q(2, -4)).unwrap();
        assert_eq!(a.to_string(), "-1/2");
        let b = &a + &k.from_rational(&q(3, 2)).unwrap();
        assert!(b.is_one());
    }

    #[test]
    fn modular_inverse_and_display() {
        let k = CoefficientField::prime(7).unwrap();
        let three = k.from_i64(3);
        assert_eq!((&three * &three.inv().unwrap()), k.one());
        assert_eq!(k.from_i64(-1).to_string(), "-1");
        assert_eq!(k.from_i64(3).to_string(), "3");
        assert_eq!(k.from_i64(4).to_string(), "-3");
        assert_eq!(k.from_rational(&q(1, 7)), Err(Error::DenominatorVanishes("7".into())));
        assert_eq!(k.from_rational(&q(1, 2)).unwrap(), k.from_i64(4));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(CoefficientField::Rationals.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    #[should_panic(expected = "coefficient field mismatch")]
    fn mixing_fields_panics() {
        let _ = CoefficientField::Rationals.one() + CoefficientField::PrimeField(7).one();
    }

    proptest::proptest! {
        // Reduction mod p is a ring homomorphism wherever it is defined.
        #[test]
        fn reduction_is_a_homomorphism(an in -1000i64..1000, ad in 1i64..1000,
                                        bn in -1000i64..1000, bd in 1i64..1000) {
            let k = CoefficientField::PrimeField(32003);
            let (a, b) = (q(an, ad), q(bn, bd));
            let red = |x: &BigRational| k.from_rational(x).unwrap();
            proptest::prop_assert_eq!(red(&(&a + &b)), &red(&a) + &red(&b));
            proptest::prop_assert_eq!(red(&(&a * &b)), &red(&a) * &red(&b));
            proptest::prop_assert_eq!(red(&(&a - &b)), &red(&a) - &red(&b));
        }
    }
}
