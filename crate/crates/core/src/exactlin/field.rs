use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Arithmetic context for one exact field.
///
/// Elements do not carry their field, so every operation goes through the
/// context value. Contexts are tiny and `Copy`.
pub trait Field: Copy + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn elem_to_json(&self, a: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem>;
}

/// Which exact field a computation runs over.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    pub fn validate(self) -> Result<Self> {
        if let FieldSpec::Prime(p) = self {
            PrimeField::new(p)?;
        }
        Ok(self)
    }

    /// Accepts `Q`, `rationals`, or a prime like `5`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "Q" | "q" | "rationals" | "rational" => Ok(FieldSpec::Rationals),
            other => {
                let p: u32 = other
                    .parse()
                    .map_err(|_| Error::Parse(format!("unknown field {other:?}")))?;
                FieldSpec::Prime(p).validate()
            }
        }
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }

    fn elem_to_json(&self, a: &BigRational) -> Value {
        Value::String(format!("{}/{}", a.numer(), a.denom()))
    }

    fn elem_from_json(&self, v: &Value) -> Result<BigRational> {
        let s = match v {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            other => return Err(Error::Parse(format!("expected a fraction, got {other}"))),
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad fraction {s:?}")))?;
        let den: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad fraction {s:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(BigRational::new(num, den))
    }
}

/// `F_p` for a prime `p <= 251`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

pub const MAX_MODULUS: u32 = 251;

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) || p > MAX_MODULUS {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(&self) -> u32 {
        let p = self.p;
        if p == 2 {
            return 1;
        }
        let order = p - 1;
        let mut factors = Vec::new();
        let mut m = order;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..p)
            .find(|&g| factors.iter().all(|&f| self.pow(g, order / f) != 1))
            .expect("prime field has a primitive root")
    }

    pub fn pow(&self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1u32;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(i64::from(self.p)) as u32
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        a * b % self.p
    }
    fn neg(&self, a: &u32) -> u32 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }

    fn elem_to_json(&self, a: &u32) -> Value {
        Value::from(*a)
    }

    fn elem_from_json(&self, v: &Value) -> Result<u32> {
        v.as_i64()
            .map(|x| self.from_i64(x))
            .ok_or_else(|| Error::Parse(format!("expected an integer mod {}, got {v}", self.p)))
    }
}
