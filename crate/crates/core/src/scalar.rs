//! Exact scalars: rationals (small fast path, arbitrary precision fallback)
//! and residues modulo a prime.
//!
//! Constants built with [`Scalar::zero`], [`Scalar::one`] or [`Scalar::from_i64`]
//! are rational; mixing them with residues coerces them into the prime field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Parses `"Q"` or `"Fp:<prime>"`.
    pub fn parse(s: &str) -> Result<Field> {
        let t = s.trim();
        if t == "Q" {
            return Ok(Field::Rational);
        }
        if let Some(p) = t.strip_prefix("Fp:") {
            let p: u64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad prime in field descriptor {s:?}")))?;
            if !is_prime(p) || p > u32::MAX as u64 {
                return Err(Error::Parse(format!("{p} is not a supported prime")));
            }
            return Ok(Field::Prime(p));
        }
        Err(Error::Parse(format!("unknown field descriptor {s:?}")))
    }

    /// Parses a scalar literal (`"3"`, `"-3/2"`) into this field.
    pub fn scalar(&self, s: &str) -> Result<Scalar> {
        let q: Scalar = s.parse()?;
        match self {
            Field::Rational => Ok(q),
            Field::Prime(p) => {
                q.to_mod(*p).ok_or_else(|| Error::Parse(format!("{s} has a denominator divisible by {p}")))
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::from_i64(v),
            Field::Prime(p) => Scalar::Mod(v.rem_euclid(*p as i64) as u64, *p),
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            Field::Rational => "Q".to_string(),
            Field::Prime(p) => format!("Fp:{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
#[derive(Clone, Debug)]
pub enum Scalar {
    /// Reduced fraction with positive denominator.
    Small(i64, i64),
    Big(BigRational),
    /// Residue `v` modulo the prime `p`.
    Mod(u64, u64),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

fn norm_i128(n: i128, d: i128) -> Scalar {
    debug_assert!(d != 0);
    let g = n.gcd(&d);
    let (mut n, mut d) = if g > 1 { (n / g, d / g) } else { (n, d) };
    if d < 0 {
        n = -n;
        d = -d;
    }
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(a), Ok(b)) => Scalar::Small(a, b),
        _ => Scalar::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
    }
}

fn from_big(r: BigRational) -> Scalar {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(a), Some(b)) => Scalar::Small(a, b),
        _ => Scalar::Big(r),
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Small(0, 1)
    }

    pub fn one() -> Scalar {
        Scalar::Small(1, 1)
    }

    pub fn from_i64(v: i64) -> Scalar {
        Scalar::Small(v, 1)
    }

    /// `n/d`; panics if `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        norm_i128(n as i128, d as i128)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Small(a, _) => *a == 0,
            Scalar::Big(r) => r.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Small(a, b) => *a == 1 && *b == 1,
            Scalar::Big(r) => r.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Scalar::Small(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Scalar::Big(r) => r.clone(),
            Scalar::Mod(..) => unreachable!("residue has no rational value"),
        }
    }

    /// Image of a rational in `F_p`; `None` if the denominator vanishes mod `p`.
    pub fn to_mod(&self, p: u64) -> Option<Scalar> {
        let (n, d) = match self {
            Scalar::Mod(_, q) => {
                assert_eq!(*q, p, "mixing residues of different primes");
                return Some(self.clone());
            }
            Scalar::Small(a, b) => {
                ((*a as i128).rem_euclid(p as i128) as u64, (*b as i128).rem_euclid(p as i128) as u64)
            }
            Scalar::Big(r) => {
                let pb = BigInt::from(p);
                let n = r.numer().mod_floor(&pb).to_u64().unwrap();
                let d = r.denom().mod_floor(&pb).to_u64().unwrap();
                (n, d)
            }
        };
        if d == 0 {
            return None;
        }
        let inv = mod_pow(d, p - 2, p);
        Some(Scalar::Mod((n as u128 * inv as u128 % p as u128) as u64, p))
    }

    fn coerce(&self, p: u64) -> u64 {
        match self.to_mod(p) {
            Some(Scalar::Mod(v, _)) => v,
            _ => panic!("rational constant {self} is not defined modulo {p}"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Small(a, b) => norm_i128(*b as i128, *a as i128),
            Scalar::Big(r) => from_big(r.recip()),
            Scalar::Mod(v, p) => Scalar::Mod(mod_pow(*v, p - 2, *p), *p),
        })
    }

    /// Exact division; division by zero is an error.
    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar> {
        let i = o.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &i)
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Mod(_, p) => Field::Prime(*p),
            _ => Field::Rational,
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        let t = s.trim();
        let bad = || Error::Parse(format!("invalid scalar literal {s:?}"));
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(from_big(BigRational::new(n, d)))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Small(a, 1) => write!(f, "{a}"),
            Scalar::Small(a, b) => write!(f, "{a}/{b}"),
            Scalar::Big(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Scalar) -> bool {
        match (self, o) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => a == c && b == d,
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) => {
                assert_eq!(p, q, "mixing residues of different primes");
                a == b
            }
            (Scalar::Mod(a, p), r) | (r, Scalar::Mod(a, p)) => r.coerce(*p) == *a,
            _ => self.to_big() == o.to_big(),
        }
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    /// Rationals are ordered; residues are not.
    fn partial_cmp(&self, o: &Scalar) -> Option<Ordering> {
        match (self, o) {
            (Scalar::Mod(..), _) | (_, Scalar::Mod(..)) => None,
            _ => Some(self.to_big().cmp(&o.to_big())),
        }
    }
}

impl Scalar {
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Small(a, _) => *a < 0,
            Scalar::Big(r) => num_traits::Signed::is_negative(r),
            Scalar::Mod(..) => false,
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        return Scalar::Small(s, 1);
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                norm_i128(a * d + c * b, b * d)
            }
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => Scalar::Mod((a + b) % p, *p),
            (Scalar::Mod(a, p), r) | (r, Scalar::Mod(a, p)) => Scalar::Mod((a + r.coerce(*p)) % p, *p),
            _ => from_big(self.to_big() + o.to_big()),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_mul(*c) {
                        return Scalar::Small(s, 1);
                    }
                }
                norm_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => Scalar::Mod((*a as u128 * *b as u128 % *p as u128) as u64, *p),
            (Scalar::Mod(a, p), r) | (r, Scalar::Mod(a, p)) => {
                Scalar::Mod((*a as u128 * r.coerce(*p) as u128 % *p as u128) as u64, *p)
            }
            _ => from_big(self.to_big() * o.to_big()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Small(a, b) => match a.checked_neg() {
                Some(n) => Scalar::Small(n, *b),
                None => norm_i128(-(*a as i128), *b as i128),
            },
            Scalar::Big(r) => from_big(-r.clone()),
            Scalar::Mod(v, p) => Scalar::Mod((p - v) % p, *p),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}
impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self = &*self + &o;
    }
}
impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}
impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl std::ops::Div for Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] to get an error instead.
    fn div(self, o: Scalar) -> Scalar {
        self.checked_div(&o).expect("division by zero")
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Scalar {
        Scalar::from_i64(v)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic_reduces() {
        let a = Scalar::ratio(3, 6);
        assert_eq!(a, Scalar::ratio(1, 2));
        assert_eq!((&a + &a), Scalar::one());
        assert_eq!(a.to_string(), "1/2");
        assert_eq!(Scalar::ratio(3, -2).to_string(), "-3/2");
    }

    #[test]
    fn overflow_promotes_to_big() {
        let big = Scalar::from_i64(i64::MAX);
        let s = &big + &big;
        assert!(matches!(s, Scalar::Big(_)));
        assert_eq!(&s - &big, big);
        let p = &big * &big;
        assert_eq!(p.checked_div(&big).unwrap(), big);
    }

    #[test]
    fn prime_field_coerces_constants() {
        let f = Field::Prime(7);
        let x = f.scalar("3/2").unwrap();
        assert_eq!(&x * &Scalar::from_i64(2), Scalar::from_i64(3));
        assert_eq!(x.inv().unwrap() * x.clone(), Scalar::one());
        assert!(f.scalar("1/7").is_err());
    }

    #[test]
    fn division_by_zero_rejected() {
        assert!(Scalar::one().checked_div(&Scalar::zero()).is_err());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn field_descriptors() {
        assert_eq!(Field::parse("Q").unwrap(), Field::Rational);
        assert_eq!(Field::parse("Fp:101").unwrap(), Field::Prime(101));
        assert!(Field::parse("Fp:100").is_err());
        assert!(Field::parse("R").is_err());
    }
}
