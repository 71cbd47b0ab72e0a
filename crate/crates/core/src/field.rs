//! Coefficient fields: the rationals and prime fields.
//!
//! Scalars carry no reference to their field; every operation goes through
//! the [`CoefficientField`] that owns them. Rationals stay in machine words
//! while they fit and spill into big integers otherwise, so the common case of
//! small coefficients never allocates.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported prime modulus; products of residues must fit in `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientField {
    Rationals,
    PrimeField(u64),
}

/// An exact field element in canonical form.
///
/// Rationals are `Small(num, den)` with `den > 0` and `gcd(num, den) = 1`
/// whenever both fit in an `i64`; prime-field residues are `Small(r, 1)` with
/// `0 <= r < p`. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Scalar {
    pub const fn zero() -> Self {
        Scalar(Repr::Small(0, 1))
    }

    pub const fn one() -> Self {
        Scalar(Repr::Small(1, 1))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    /// Sign of a rational scalar; prime-field residues report `Greater` unless zero.
    pub fn signum(&self) -> Ordering {
        match &self.0 {
            Repr::Small(n, _) => n.cmp(&0),
            Repr::Big(b) => {
                if b.is_negative() {
                    Ordering::Less
                } else if b.is_zero() {
                    Ordering::Equal
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    fn from_big(b: BigRational) -> Self {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) => Scalar(Repr::Small(n, d)),
            _ => Scalar(Repr::Big(Box::new(b))),
        }
    }

    fn from_i128_ratio(n: i128, d: i128) -> Self {
        debug_assert!(d != 0);
        let (mut n, mut d) = (n, d);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Scalar(Repr::Small(n, d)),
            _ => Scalar::from_big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    /// Numerator and denominator (denominator positive).
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        let b = self.to_big();
        (b.numer().clone(), b.denom().clone())
    }

    /// Integer value of a scalar whose denominator is one and which fits in `i64`.
    pub fn as_i64(&self) -> Option<i64> {
        match self.0 {
            Repr::Small(n, 1) => Some(n),
            _ => None,
        }
    }

    fn abs_string(&self) -> String {
        match &self.0 {
            Repr::Small(n, 1) => n.unsigned_abs().to_string(),
            Repr::Small(n, d) => alloc::format!("{}/{}", n.unsigned_abs(), d),
            Repr::Big(b) => {
                let a = b.abs();
                if a.is_integer() {
                    a.numer().to_string()
                } else {
                    alloc::format!("{}/{}", a.numer(), a.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.signum() == Ordering::Less {
            f.write_str("-")?;
        }
        f.write_str(&self.abs_string())
    }
}

impl Scalar {
    /// Absolute value rendered for printing (no sign).
    pub fn magnitude_string(&self) -> String {
        self.abs_string()
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl CoefficientField {
    /// The prime field of order `p`.
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(CoefficientField::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Rationals => 0,
            CoefficientField::PrimeField(p) => *p,
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            CoefficientField::Rationals => Scalar(Repr::Small(n, 1)),
            CoefficientField::PrimeField(p) => {
                Scalar(Repr::Small(n.rem_euclid(*p as i64), 1))
            }
        }
    }

    /// Image of the integer `n` (arbitrary size) in the field.
    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            CoefficientField::Rationals => Scalar::from_big(BigRational::from_integer(n.clone())),
            CoefficientField::PrimeField(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar(Repr::Small(r.to_i64().expect("residue fits"), 1))
            }
        }
    }

    /// Image of `num / den`; fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        self.div(&n, &d)
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, &a.0, &b.0) {
            (CoefficientField::PrimeField(p), Repr::Small(x, _), Repr::Small(y, _)) => {
                let s = (*x as u64 + *y as u64) % p;
                Scalar(Repr::Small(s as i64, 1))
            }
            (CoefficientField::Rationals, Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                if *d1 == 1 && *d2 == 1 {
                    if let Some(s) = n1.checked_add(*n2) {
                        return Scalar(Repr::Small(s, 1));
                    }
                }
                let (n1, d1, n2, d2) = (*n1 as i128, *d1 as i128, *n2 as i128, *d2 as i128);
                Scalar::from_i128_ratio(n1 * d2 + n2 * d1, d1 * d2)
            }
            _ => Scalar::from_big(a.to_big() + b.to_big()),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, &a.0) {
            (CoefficientField::PrimeField(p), Repr::Small(x, _)) => {
                if *x == 0 {
                    Scalar::zero()
                } else {
                    Scalar(Repr::Small(*p as i64 - x, 1))
                }
            }
            (_, Repr::Small(n, d)) => match n.checked_neg() {
                Some(m) => Scalar(Repr::Small(m, *d)),
                None => Scalar::from_big(-a.to_big()),
            },
            (_, Repr::Big(b)) => Scalar::from_big(-(**b).clone()),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, &a.0, &b.0) {
            (CoefficientField::PrimeField(p), Repr::Small(x, _), Repr::Small(y, _)) => {
                let s = (*x as u64 * *y as u64) % p;
                Scalar(Repr::Small(s as i64, 1))
            }
            (CoefficientField::Rationals, Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                if *d1 == 1 && *d2 == 1 {
                    if let Some(s) = n1.checked_mul(*n2) {
                        return Scalar(Repr::Small(s, 1));
                    }
                }
                Scalar::from_i128_ratio(*n1 as i128 * *n2 as i128, *d1 as i128 * *d2 as i128)
            }
            _ => Scalar::from_big(a.to_big() * b.to_big()),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, &a.0) {
            (CoefficientField::PrimeField(p), Repr::Small(x, _)) => {
                Scalar(Repr::Small(pow_mod(*x as u64, p - 2, *p) as i64, 1))
            }
            (_, Repr::Small(n, d)) => Scalar::from_i128_ratio(*d as i128, *n as i128),
            (_, Repr::Big(b)) => Scalar::from_big(b.recip()),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut e: u32) -> Scalar {
        let mut base = a.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Short textual tag: `Q` or `Fp:<p>`.
    pub fn tag(&self) -> String {
        match self {
            CoefficientField::Rationals => "Q".into(),
            CoefficientField::PrimeField(p) => alloc::format!("Fp:{p}"),
        }
    }

    /// Parses the tag produced by [`CoefficientField::tag`].
    pub fn from_tag(tag: &str) -> Result<Self> {
        let t = tag.trim();
        if t == "Q" || t == "QQ" {
            return Ok(CoefficientField::Rationals);
        }
        if let Some(rest) = t.strip_prefix("Fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::BadParameters(alloc::format!("bad field `{tag}`")))?;
            return CoefficientField::prime(p);
        }
        Err(Error::BadParameters(alloc::format!("bad field `{tag}`")))
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_spills_to_big() {
        let q = CoefficientField::Rationals;
        let big = q.from_i64(i64::MAX);
        let s = q.add(&big, &big);
        assert!(matches!(s.0, Repr::Big(_)));
        let back = q.sub(&s, &big);
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(_, _)));
    }

    #[test]
    fn rational_canonical_form() {
        let q = CoefficientField::Rationals;
        let a = q.from_ratio(&BigInt::from(2), &BigInt::from(-4)).unwrap();
        assert_eq!(a.to_string(), "-1/2");
        let b = q.add(&a, &q.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap());
        assert!(b.is_zero());
    }

    #[test]
    fn prime_field_inverse() {
        let f = CoefficientField::prime(101).unwrap();
        for x in 1..101 {
            let a = f.from_i64(x);
            let inv = f.inv(&a).unwrap();
            assert!(f.mul(&a, &inv).is_one());
        }
        assert_eq!(f.from_i64(-1).to_string(), "100");
        assert_eq!(f.inv(&f.from_i64(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn half_is_undefined_in_char_two() {
        let f = CoefficientField::prime(2).unwrap();
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(2)).is_err());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(CoefficientField::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(CoefficientField::from_tag("Fp:7"), Ok(CoefficientField::PrimeField(7)));
        assert_eq!(CoefficientField::from_tag("Q"), Ok(CoefficientField::Rationals));
    }
}
