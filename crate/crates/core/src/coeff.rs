//! Coefficient groups: `Z`, `Z/n` and `Q/Z`, with exact arithmetic.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoeffGroup {
    Integers,
    /// `Z/n` with `n >= 2`.
    IntegersMod(u64),
    /// `Q/Z`, standing in for the circle group.
    RationalsMod1,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElem {
    Int(BigInt),
    Residue {
        value: u64,
        modulus: u64,
    },
    /// Reduced fraction in `[0, 1)`.
    Circle(BigRational),
}

impl CoeffGroup {
    pub fn zero(&self) -> GroupElem {
        match self {
            CoeffGroup::Integers => GroupElem::Int(BigInt::zero()),
            CoeffGroup::IntegersMod(n) => GroupElem::Residue { value: 0, modulus: *n },
            CoeffGroup::RationalsMod1 => GroupElem::Circle(BigRational::zero()),
        }
    }

    /// The image of an integer under `Z -> A`, `1 ↦ 1`. For `Q/Z` every integer maps to 0.
    pub fn from_int(&self, x: i64) -> GroupElem {
        self.from_bigint(&BigInt::from(x))
    }

    pub fn from_bigint(&self, x: &BigInt) -> GroupElem {
        match self {
            CoeffGroup::Integers => GroupElem::Int(x.clone()),
            CoeffGroup::IntegersMod(n) => GroupElem::Residue { value: reduce(x, *n), modulus: *n },
            CoeffGroup::RationalsMod1 => GroupElem::Circle(BigRational::zero()),
        }
    }

    /// `p/q` taken modulo 1. Only meaningful in `Q/Z`.
    pub fn fraction(&self, p: i64, q: i64) -> GroupElem {
        assert_eq!(self, &CoeffGroup::RationalsMod1, "fractions live in Q/Z");
        GroupElem::Circle(mod_one(BigRational::new(p.into(), q.into())))
    }

    /// Parses `"3"`, `"-2"` or, for `Q/Z`, `"p/q"`.
    pub fn parse_elem(&self, text: &str) -> Result<GroupElem> {
        let bad = || Error::BadValue(text.to_string(), self.to_string());
        let text = text.trim();
        match text.split_once('/') {
            Some((p, q)) => {
                if *self != CoeffGroup::RationalsMod1 {
                    return Err(bad());
                }
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(GroupElem::Circle(mod_one(BigRational::new(p, q))))
            }
            None => {
                let x: BigInt = text.parse().map_err(|_| bad())?;
                Ok(self.from_bigint(&x))
            }
        }
    }

    pub fn contains(&self, x: &GroupElem) -> bool {
        &x.group() == self
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, CoeffGroup::IntegersMod(_))
    }

    /// A small random element: integers in `-5..=5`, uniform residues,
    /// fractions with denominator at most 12.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElem {
        match self {
            CoeffGroup::Integers => self.from_int(rng.gen_range(-5..=5)),
            CoeffGroup::IntegersMod(n) => GroupElem::Residue { value: rng.gen_range(0..*n), modulus: *n },
            CoeffGroup::RationalsMod1 => {
                let q = rng.gen_range(1..=12i64);
                self.fraction(rng.gen_range(0..q), q)
            }
        }
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a GroupElem>) -> GroupElem {
        items.into_iter().fold(self.zero(), |acc, x| &acc + x)
    }
}

impl fmt::Display for CoeffGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffGroup::Integers => write!(f, "Z"),
            CoeffGroup::IntegersMod(n) => write!(f, "Z/{n}"),
            CoeffGroup::RationalsMod1 => write!(f, "Q/Z"),
        }
    }
}

impl FromStr for CoeffGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" => Ok(CoeffGroup::Integers),
            "Q/Z" => Ok(CoeffGroup::RationalsMod1),
            other => {
                let n = other
                    .strip_prefix("Z/")
                    .and_then(|n| n.parse::<u64>().ok())
                    .filter(|&n| n >= 2)
                    .ok_or_else(|| Error::UnsupportedCoefficients(other.to_string()))?;
                Ok(CoeffGroup::IntegersMod(n))
            }
        }
    }
}

fn reduce(x: &BigInt, n: u64) -> u64 {
    x.mod_floor(&BigInt::from(n)).to_u64().unwrap()
}

fn mod_one(x: BigRational) -> BigRational {
    let fl = x.floor();
    x - fl
}

impl GroupElem {
    pub fn group(&self) -> CoeffGroup {
        match self {
            GroupElem::Int(_) => CoeffGroup::Integers,
            GroupElem::Residue { modulus, .. } => CoeffGroup::IntegersMod(*modulus),
            GroupElem::Circle(_) => CoeffGroup::RationalsMod1,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            GroupElem::Int(x) => x.is_zero(),
            GroupElem::Residue { value, .. } => *value == 0,
            GroupElem::Circle(x) => x.is_zero(),
        }
    }

    /// `k·x`.
    pub fn mul_int(&self, k: &BigInt) -> GroupElem {
        match self {
            GroupElem::Int(x) => GroupElem::Int(x * k),
            GroupElem::Residue { value, modulus } => {
                GroupElem::Residue { value: reduce(&(BigInt::from(*value) * k), *modulus), modulus: *modulus }
            }
            GroupElem::Circle(x) => GroupElem::Circle(mod_one(x * BigRational::from_integer(k.clone()))),
        }
    }

    /// Some `y` with `d·y = self`, if one exists. `d` must be nonzero.
    pub fn divide(&self, d: &BigInt) -> Option<GroupElem> {
        assert!(!d.is_zero());
        match self {
            GroupElem::Int(x) => {
                let (q, r) = x.div_rem(d);
                r.is_zero().then_some(GroupElem::Int(q))
            }
            GroupElem::Residue { value, modulus } => {
                let n = BigInt::from(*modulus);
                let d = d.mod_floor(&n);
                let g = d.gcd(&n);
                let v = BigInt::from(*value);
                if !(&v % &g).is_zero() {
                    return None;
                }
                let m = &n / &g;
                let inv = if m.is_one() { BigInt::zero() } else { mod_inverse(&(&d / &g), &m) };
                let y = ((&v / &g) * inv).mod_floor(&m);
                Some(GroupElem::Residue { value: y.to_u64().unwrap(), modulus: *modulus })
            }
            GroupElem::Circle(x) => Some(GroupElem::Circle(mod_one(x / BigRational::from_integer(d.clone())))),
        }
    }

    /// Integer representative, for `Z` and `Z/n` elements.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            GroupElem::Int(x) => Some(x.clone()),
            GroupElem::Residue { value, .. } => Some(BigInt::from(*value)),
            GroupElem::Circle(_) => None,
        }
    }

    /// Numerator and denominator; integers have denominator 1.
    pub fn as_fraction(&self) -> (BigInt, BigInt) {
        match self {
            GroupElem::Circle(x) => (x.numer().clone(), x.denom().clone()),
            other => (other.to_bigint().unwrap(), BigInt::one()),
        }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn mismatch(a: &GroupElem, b: &GroupElem) -> ! {
    panic!("coefficient group mismatch: {} and {}", a.group(), b.group())
}

impl Add<&GroupElem> for &GroupElem {
    type Output = GroupElem;

    fn add(self, rhs: &GroupElem) -> GroupElem {
        match (self, rhs) {
            (GroupElem::Int(a), GroupElem::Int(b)) => GroupElem::Int(a + b),
            (GroupElem::Residue { value: a, modulus: n }, GroupElem::Residue { value: b, modulus: m }) if n == m => {
                GroupElem::Residue { value: ((*a as u128 + *b as u128) % *n as u128) as u64, modulus: *n }
            }
            (GroupElem::Circle(a), GroupElem::Circle(b)) => GroupElem::Circle(mod_one(a + b)),
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &GroupElem {
    type Output = GroupElem;

    fn neg(self) -> GroupElem {
        match self {
            GroupElem::Int(a) => GroupElem::Int(-a),
            GroupElem::Residue { value, modulus } => {
                GroupElem::Residue { value: if *value == 0 { 0 } else { modulus - value }, modulus: *modulus }
            }
            GroupElem::Circle(a) => GroupElem::Circle(mod_one(-a)),
        }
    }
}

impl Sub<&GroupElem> for &GroupElem {
    type Output = GroupElem;

    fn sub(self, rhs: &GroupElem) -> GroupElem {
        self + &(-rhs)
    }
}

impl Add for GroupElem {
    type Output = GroupElem;

    fn add(self, rhs: GroupElem) -> GroupElem {
        &self + &rhs
    }
}

impl Sub for GroupElem {
    type Output = GroupElem;

    fn sub(self, rhs: GroupElem) -> GroupElem {
        &self - &rhs
    }
}

impl Add<&GroupElem> for GroupElem {
    type Output = GroupElem;

    fn add(self, rhs: &GroupElem) -> GroupElem {
        &self + rhs
    }
}

impl Sub<&GroupElem> for GroupElem {
    type Output = GroupElem;

    fn sub(self, rhs: &GroupElem) -> GroupElem {
        &self - rhs
    }
}

impl Neg for GroupElem {
    type Output = GroupElem;

    fn neg(self) -> GroupElem {
        -&self
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElem::Int(x) => write!(f, "{x}"),
            GroupElem::Residue { value, .. } => write!(f, "{value}"),
            GroupElem::Circle(x) if x.is_zero() => write!(f, "0"),
            GroupElem::Circle(x) => write!(f, "{}/{}", x.numer(), x.denom()),
        }
    }
}
