//! Ground fields: the rationals and prime fields `F_p`.
//!
//! Elements are carried as [`Scalar`] values tagged with their field so that
//! matrices can be built at runtime from a field chosen in an input file.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest characteristic accepted; keeps every product inside a `u64`.
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// Prime field of characteristic `p`; `p` must be prime and below
    /// [`MAX_CHARACTERISTIC`].
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..MAX_CHARACTERISTIC).contains(&p) || !is_prime(p) {
            return Err(Error::Malformed(format!("{p} is not a supported prime characteristic")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Fp {
                v: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Malformed("zero denominator".into()));
        }
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        d.inv()
            .map(|di| &n * &di)
            .ok_or_else(|| Error::Malformed(format!("denominator {den} vanishes in {self}")))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Q(BigRational::from_integer(n.clone())),
            FieldSpec::Prime(p) => {
                let r = n.mod_floor_u64(p);
                Scalar::Fp { v: r, p }
            }
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => Ok(Scalar::Q(q.clone())),
            FieldSpec::Prime(_) => {
                let n = self.from_bigint(q.numer());
                let d = self.from_bigint(q.denom());
                d.inv()
                    .map(|di| &n * &di)
                    .ok_or_else(|| Error::Malformed(format!("{q} is not defined in {self}")))
            }
        }
    }

    /// Parses a literal: `"a/b"`, `"a"` for the rationals, `"a"` for `F_p`.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Malformed(format!("bad field element literal {s:?}"));
        match self {
            FieldSpec::Rationals => {
                let q = if let Some((a, b)) = s.split_once('/') {
                    let a: BigInt = a.trim().parse().map_err(|_| bad())?;
                    let b: BigInt = b.trim().parse().map_err(|_| bad())?;
                    if b.is_zero() {
                        return Err(bad());
                    }
                    BigRational::new(a, b)
                } else {
                    BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)
                };
                Ok(Scalar::Q(q))
            }
            FieldSpec::Prime(_) => {
                if s.contains('/') {
                    let (a, b) = s.split_once('/').unwrap();
                    let a: i64 = a.trim().parse().map_err(|_| bad())?;
                    let b: i64 = b.trim().parse().map_err(|_| bad())?;
                    return self.from_ratio(a, b);
                }
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(self.from_bigint(&n))
            }
        }
    }

    /// Uniform element for `F_p`; small integers or simple fractions for `Q`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match *self {
            FieldSpec::Rationals => {
                if rng.gen_bool(0.8) {
                    self.from_i64(rng.gen_range(-3..=3))
                } else {
                    self.from_ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)).unwrap()
                }
            }
            FieldSpec::Prime(p) => Scalar::Fp {
                v: rng.gen_range(0..p),
                p,
            },
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        matches!(
            (self, s),
            (FieldSpec::Rationals, Scalar::Q(_)) | (FieldSpec::Prime(_), Scalar::Fp { .. })
        ) && match (self, s) {
            (FieldSpec::Prime(p), Scalar::Fp { p: q, .. }) => p == q,
            _ => true,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

trait ModFloor {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        let m = BigInt::from(p);
        let r = ((self % &m) + &m) % &m;
        r.to_u64().expect("residue fits")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
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

/// A field element. Rationals are kept in lowest terms by `BigRational`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Rationals,
            Scalar::Fp { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: pow_mod(*v, p - 2, *p),
                p: *p,
            },
        })
    }

    /// Canonical text form: `"a/b"` or `"a"`.
    pub fn literal(&self) -> String {
        match self {
            Scalar::Q(q) if q.is_integer() => q.numer().to_string(),
            Scalar::Q(q) => format!("{}/{}", q.numer(), q.denom()),
            Scalar::Fp { v, .. } => v.to_string(),
        }
    }

    /// Ordering key used only for deterministic output (not a field order).
    pub fn sort_key(&self) -> (bool, BigRational) {
        match self {
            Scalar::Q(q) => (q.is_negative(), q.abs()),
            Scalar::Fp { v, .. } => (false, BigRational::from_integer(BigInt::from(*v))),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: (a + b) % p,
                p: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: (a + p - b) % p,
                p: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: a * b % p,
                p: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: (p - v) % p,
                p: *p,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::prime(5).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(4);
        assert_eq!(&a + &b, f.from_i64(2));
        assert_eq!(&a * &b, f.from_i64(2));
        assert_eq!(&a - &b, f.from_i64(4));
        assert_eq!(a.inv().unwrap(), f.from_i64(2));
        assert_eq!(-&f.from_i64(1), f.from_i64(4));
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(7).is_ok());
    }

    #[test]
    fn rational_literals_lowest_terms() {
        let q = FieldSpec::Rationals;
        let x = q.parse("4/-6").unwrap();
        assert_eq!(x.literal(), "-2/3");
        assert_eq!(q.parse(" 5 ").unwrap().literal(), "5");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("abc").is_err());
    }

    #[test]
    fn prime_literals_reduce() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(f.parse("7").unwrap(), f.from_i64(2));
        assert_eq!(f.parse("-1").unwrap(), f.from_i64(4));
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(3));
    }
}
