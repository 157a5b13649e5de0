//! Exact arithmetic in ℤ[i√3] and over arbitrary-precision rationals.
//!
//! Every distance in the two counterexample spaces is an integer once squared,
//! so each inequality `d ≤ q·D` is decided as `d² ≤ q²·D²` with `q²` rational.
//! Nothing in this module touches floating point.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An element `re + im·i√3` of ℤ[i√3].
///
/// The representation is unique, so structural equality is numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    pub re: BigInt,
    pub im: BigInt,
}

impl RingElem {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        RingElem { re: re.into(), im: im.into() }
    }

    pub fn zero() -> Self {
        RingElem::new(0, 0)
    }

    pub fn one() -> Self {
        RingElem::new(1, 0)
    }

    /// The generator `z = −1 + i√3` of the second counterexample space.
    pub fn zeta() -> Self {
        RingElem::new(-1, 1)
    }

    /// Squared complex modulus `re² + 3·im²`.
    pub fn sqnorm(&self) -> BigUint {
        let sq = &self.re * &self.re + BigInt::from(3) * &self.im * &self.im;
        sq.to_biguint().expect("a sum of squares is non-negative")
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `self · 2^bits`.
    fn shl(&self, bits: u64) -> Self {
        RingElem { re: &self.re << bits, im: &self.im << bits }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{} - {}·i√3", self.re, -&self.im)
        } else {
            write!(f, "{} + {}·i√3", self.re, self.im)
        }
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        RingElem { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        RingElem { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    // (i√3)² = −3
    fn mul(self, rhs: &RingElem) -> RingElem {
        RingElem {
            re: &self.re * &rhs.re - BigInt::from(3) * &self.im * &rhs.im,
            im: &self.re * &rhs.im + &rhs.re * &self.im,
        }
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem { re: -&self.re, im: -&self.im }
    }
}

macro_rules! forward_owned_binop {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for RingElem {
            type Output = RingElem;
            fn $m(self, rhs: RingElem) -> RingElem {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned_binop!(Add::add, Sub::sub, Mul::mul);

pub fn ring_add(a: &RingElem, b: &RingElem) -> RingElem {
    a + b
}

pub fn ring_mul(a: &RingElem, b: &RingElem) -> RingElem {
    a * b
}

pub fn sqnorm(e: &RingElem) -> BigUint {
    e.sqnorm()
}

/// `zⁿ` for `z = −1 + i√3`.
///
/// Uses `z³ = 8`, so `zⁿ = 2^(3⌊n/3⌋) · z^(n mod 3)` and the cost is a single shift.
pub fn zeta_pow(n: u64) -> RingElem {
    let base = match n % 3 {
        0 => RingElem::new(1, 0),
        1 => RingElem::new(-1, 1),
        _ => RingElem::new(-2, -2),
    };
    base.shl(3 * (n / 3))
}

/// Decides `√lhs_sq ≤ q·√rhs_sq` exactly, given `q_sq = q²`.
///
/// Squaring is monotone on non-negative reals, so this is `lhs_sq·den ≤ num·rhs_sq`.
pub fn leq_q_scaled(lhs_sq: &BigUint, q_sq: &Rational, rhs_sq: &BigUint) -> bool {
    debug_assert!(q_sq.is_positive());
    let lhs = BigInt::from(lhs_sq.clone()) * q_sq.denom();
    let rhs = q_sq.numer() * BigInt::from(rhs_sq.clone());
    lhs <= rhs
}

/// Exact rational number in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (num, den) = (num.into(), den.into());
        if den.is_zero() {
            return Err(Error::InvalidRational(format!("{num}/0")));
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    /// Panicking constructor for literal constants.
    pub fn frac(num: i64, den: i64) -> Self {
        Rational::new(num, den).expect("non-zero denominator")
    }

    pub fn integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(Pow::pow(&self.0, exp))
    }

    pub fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Rational(self.0.recip()))
    }

    /// Approximate value, for human-readable output only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Whether `0 < self < 1`, the admissible range for a squared contraction factor.
    pub fn is_unit_open(&self) -> bool {
        self.is_positive() && self.0 < BigRational::one()
    }
}

impl From<BigUint> for Rational {
    fn from(value: BigUint) -> Self {
        Rational::integer(BigInt::from_biguint(Sign::Plus, value))
    }
}

impl From<u64> for Rational {
    fn from(value: u64) -> Self {
        Rational::integer(value)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `p/q` and signed variants.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRational(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((num, den)) => {
                let num: BigInt = num.trim().parse().map_err(|_| bad())?;
                let den: BigInt = den.trim().parse().map_err(|_| bad())?;
                Rational::new(num, den).map_err(|_| bad())
            }
            None => s.parse::<BigInt>().map(Rational::integer).map_err(|_| bad()),
        }
    }
}

macro_rules! rational_binop {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
    )*};
}
rational_binop!(Add::add, Sub::sub, Mul::mul);

impl std::ops::Div for &Rational {
    type Output = Rational;
    /// Panics on division by zero.
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Rational", 2)?;
        st.serialize_field("num", &ExactInt(self.numer()))?;
        st.serialize_field("den", &ExactInt(self.denom()))?;
        st.end()
    }
}

/// Serializes an integer as a JSON number when it fits in 64 bits and as a
/// decimal string otherwise, so large values never lose precision.
pub struct ExactInt<'a>(pub &'a BigInt);

impl Serialize for ExactInt<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

/// [`ExactInt`] for unsigned values; usable with `#[serde(serialize_with)]`.
pub fn serialize_biguint<S: Serializer>(value: &BigUint, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    match value.to_u64() {
        Some(v) => serializer.serialize_u64(v),
        None => serializer.serialize_str(&value.to_string()),
    }
}
