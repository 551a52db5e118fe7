//! Exact base fields: the rationals and prime fields `F_p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::KernelError;

/// The base field every matrix, algebra and module is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// `F_p`; `p` must be a prime below 2^31 so products fit in a `u64`.
    pub fn prime(p: u32) -> Result<Field, KernelError> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(KernelError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn is_rational(self) -> bool {
        matches!(self, Field::Rational)
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Mod { value: reduce_i64(v, p), modulus: p },
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> Result<Scalar, KernelError> {
        if den == 0 {
            return Err(KernelError::Parse(format!("{num}/{den}: zero denominator")));
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num.into(), den.into()))),
            Field::Prime(p) => {
                let d = reduce_i64(den, p);
                if d == 0 {
                    return Err(KernelError::Parse(format!(
                        "{num}/{den}: denominator vanishes mod {p}"
                    )));
                }
                Ok(Scalar::Mod { value: mul_mod(reduce_i64(num, p), inv_mod(d, p), p), modulus: p })
            }
        }
    }

    /// Parses `a`, `-a` or `a/b`.
    pub fn parse(self, s: &str) -> Result<Scalar, KernelError> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| KernelError::Parse(format!("bad scalar `{s}`")))?;
        let den = BigInt::from_str(den).map_err(|_| KernelError::Parse(format!("bad scalar `{s}`")))?;
        if den.is_zero() {
            return Err(KernelError::Parse(format!("{s}: zero denominator")));
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num, den))),
            Field::Prime(p) => {
                let n = reduce_big(&num, p);
                let d = reduce_big(&den, p);
                if d == 0 {
                    return Err(KernelError::Parse(format!("{s}: denominator vanishes mod {p}")));
                }
                Ok(Scalar::Mod { value: mul_mod(n, inv_mod(d, p), p), modulus: p })
            }
        }
    }

    /// A uniformly drawn element; over the rationals an integer in `[-spread, spread]`.
    pub fn random<R: Rng + ?Sized>(self, rng: &mut R, spread: i64) -> Scalar {
        match self {
            Field::Rational => self.from_i64(rng.gen_range(-spread..=spread)),
            Field::Prime(p) => Scalar::Mod { value: rng.gen_range(0..p), modulus: p },
        }
    }

    /// Every element of a prime field, in increasing representative order.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some((0..p).map(|v| Scalar::Mod { value: v, modulus: p }).collect()),
        }
    }

    /// Field size for finite fields.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p as u64),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// A single exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Field {
        let f = self.field();
        assert_eq!(f, other.field(), "scalar field mismatch");
        f
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, .. }) => {
                self.same_field(other);
                Scalar::Mod { value: add_mod(*a, *b, *p), modulus: *p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, .. }) => {
                self.same_field(other);
                Scalar::Mod { value: mul_mod(*a, *b, *p), modulus: *p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, modulus } => {
                Scalar::Mod { value: if *value == 0 { 0 } else { modulus - value }, modulus: *modulus }
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod { value: inv_mod(*value, *modulus), modulus: *modulus },
        })
    }

    /// Reduction of a rational modulo `p`; `None` when `p` divides the denominator.
    pub fn reduce_mod(&self, p: u32) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => {
                let d = reduce_big(q.denom(), p);
                if d == 0 {
                    return None;
                }
                Some(Scalar::Mod { value: mul_mod(reduce_big(q.numer(), p), inv_mod(d, p), p), modulus: p })
            }
            Scalar::Mod { modulus, .. } if *modulus == p => Some(self.clone()),
            Scalar::Mod { .. } => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Mod { .. } => None,
        }
    }

    /// Small integer value if representable (used by text output).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) if q.is_integer() => q.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Mod { value, .. } => Some(*value as i64),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= p as u64 { s - p as u64 } else { s }) as u32
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1u32 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p as u64 - 2, p)
}

pub(crate) fn reduce_i64(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

pub(crate) fn reduce_big(v: &BigInt, p: u32) -> u32 {
    let m = BigInt::from(p);
    let r = v % &m;
    let r = if r.is_negative() { r + m } else { r };
    r.to_u32().expect("residue fits")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions() {
        let q = Field::Rational;
        assert_eq!(q.parse("-3/6").unwrap(), q.from_ratio(-1, 2).unwrap());
        let f5 = Field::prime(5).unwrap();
        // 1/2 = 3 mod 5
        assert_eq!(f5.parse("1/2").unwrap(), f5.from_i64(3));
        assert!(f5.parse("1/5").is_err());
        assert!(q.parse("x").is_err());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(7).is_ok());
    }

    #[test]
    fn mod_arithmetic_is_canonical() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a, Scalar::Mod { value: 6, modulus: 7 });
        assert!(a.add(&f.one()).is_zero());
        assert!(a.mul(&a.inv().unwrap()).is_one());
    }

    #[test]
    fn reduction_of_rationals() {
        let q = Field::Rational.from_ratio(3, 4).unwrap();
        assert_eq!(q.reduce_mod(5), Some(Field::Prime(5).from_i64(2)));
        assert_eq!(q.reduce_mod(2), None);
    }
}
