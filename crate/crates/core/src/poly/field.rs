//! Coefficient fields: prime fields of machine-word size and the rationals.
//!
//! A [`Scalar`] carries no reference to its field; every operation goes
//! through a [`Field`] value so that a prime-field residue never meets a
//! rational by accident.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Prime(u64),
    Rationals,
}

/// An element of some [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Mod(u64),
    Rat(BigRational),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut i = 3u64;
    while i.saturating_mul(i) <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 2;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Characteristic; 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            Field::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Mod(0),
            Field::Rationals => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Mod(1),
            Field::Rationals => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod(v.rem_euclid(*p as i64) as u64),
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Scalar::Mod(r.to_u64().expect("residue fits in u64"))
            }
            Field::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
        }
    }

    /// `num / den` mapped into the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        match self {
            Field::Prime(_) => {
                let d = self.from_bigint(den);
                if self.is_zero(&d) {
                    return Err(Error::InvalidArgument(format!(
                        "denominator {den} vanishes in {self}"
                    )));
                }
                Ok(self.mul(&self.from_bigint(num), &self.inv(&d)?))
            }
            Field::Rationals => Ok(Scalar::Rat(BigRational::new(num.clone(), den.clone()))),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Mod(x)) => Scalar::Mod((*p - *x % *p) % *p),
            (Field::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        Ok(match (self, a) {
            (Field::Prime(p), Scalar::Mod(_)) => self.pow(a, p - 2),
            (Field::Rationals, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            _ => panic!("scalar does not belong to {self}"),
        })
    }

    /// Canonical text of a scalar: least nonnegative residue, or `a/b`.
    pub fn format_scalar(&self, a: &Scalar) -> String {
        match a {
            Scalar::Mod(v) => v.to_string(),
            Scalar::Rat(r) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    /// Whether the printed form of `a` starts with a minus sign.
    pub fn is_negative(&self, a: &Scalar) -> bool {
        matches!(a, Scalar::Rat(r) if r.is_negative())
    }

    /// Parses the `--field` spelling: `f<p>` or `q`.
    pub fn parse(spec: &str) -> Result<Field> {
        let s = spec.trim().to_ascii_lowercase();
        if s == "q" || s == "qq" || s == "rationals" {
            return Ok(Field::Rationals);
        }
        let digits = s
            .strip_prefix('f')
            .ok_or_else(|| Error::InvalidArgument(format!("unknown field `{spec}`")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("unknown field `{spec}`")))?;
        if p > u32::MAX as u64 {
            return Err(Error::InvalidArgument(format!(
                "prime {p} exceeds the word-size limit"
            )));
        }
        Field::prime(p)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(65537));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(0));
        assert_eq!(Field::prime(4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn modular_inverse() {
        let f = Field::Prime(7);
        for v in 1..7 {
            let a = f.from_i64(v);
            assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
        assert!(f.inv(&f.zero()).is_err());
    }

    #[test]
    fn parse_field_spec() {
        assert_eq!(Field::parse("f5").unwrap(), Field::Prime(5));
        assert_eq!(Field::parse("q").unwrap(), Field::Rationals);
        assert!(Field::parse("f6").is_err());
        assert!(Field::parse("z").is_err());
    }

    #[test]
    fn negative_residue() {
        let f = Field::Prime(5);
        assert_eq!(f.from_i64(-1), Scalar::Mod(4));
        assert_eq!(f.format_scalar(&f.neg(&f.one())), "4");
    }
}
