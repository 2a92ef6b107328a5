//! Scalar type shared by all operators: exact rationals or complex doubles.
//!
//! The two arithmetic modes never mix silently. Combining an exact scalar
//! with a float one is a programming error and panics; callers choose the
//! mode when they build a model and stay in it.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// Magnitude below which a float scalar counts as zero and is dropped from
/// sparse storage.
pub const FLOAT_ZERO_TOL: f64 = 1e-12;

/// Arithmetic mode of a scalar, vector or operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Arbitrary precision rationals.
    Exact,
    /// Complex double precision.
    Float,
}

/// A number in one of the two supported arithmetic modes.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Float(Complex64),
}

impl Scalar {
    pub fn zero(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::zero()),
            Mode::Float => Scalar::Float(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn one(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::one()),
            Mode::Float => Scalar::Float(Complex64::new(1.0, 0.0)),
        }
    }

    /// Exact integer scalar.
    pub fn int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact fraction; panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Exact(r)
    }

    pub fn from_f64(x: f64) -> Self {
        Scalar::Float(Complex64::new(x, 0.0))
    }

    pub fn from_complex(z: Complex64) -> Self {
        Scalar::Float(z)
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    /// True for exact zero, or for a float within [`FLOAT_ZERO_TOL`] of zero.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(z) => z.norm() <= FLOAT_ZERO_TOL,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_one(),
            Scalar::Float(z) => (z - Complex64::new(1.0, 0.0)).norm() <= FLOAT_ZERO_TOL,
        }
    }

    /// Numeric value, independent of mode.
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(r) => {
                let num = r.numer().to_f64().unwrap_or(f64::NAN);
                let den = r.denom().to_f64().unwrap_or(f64::NAN);
                Complex64::new(num / den, 0.0)
            }
            Scalar::Float(z) => *z,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// Multiplicative inverse; panics on (numerical) zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero scalar");
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.recip()),
            Scalar::Float(z) => Scalar::Float(z.inv()),
        }
    }

    /// Integer power with nonnegative exponent.
    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Scalar::one(self.mode());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `|self - other| <= tol`, comparing numerically across modes.
    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        (self.to_complex() - other.to_complex()).norm() <= tol
    }

    fn mixed(op: &str) -> ! {
        panic!("mixed exact/float arithmetic in {op}");
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Float(a), Scalar::Float(b)) => a == b,
            _ => false,
        }
    }
}

impl<'a> Add<&'a Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a + b),
            _ => Scalar::mixed("add"),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a - b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a - b),
            _ => Scalar::mixed("sub"),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a * b),
            _ => Scalar::mixed("mul"),
        }
    }
}

impl<'a> Div<&'a Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero scalar");
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a / b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a / b),
            _ => Scalar::mixed("div"),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Float(a) => Scalar::Float(-a),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"n"` or `"n/d"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let mut parts = text.splitn(2, '/');
    let num: BigInt = parts.next()?.trim().parse().ok()?;
    match parts.next() {
        None => Some(BigRational::from_integer(num)),
        Some(d) => {
            let den: BigInt = d.trim().parse().ok()?;
            if den.is_zero() {
                None
            } else {
                Some(BigRational::new(num, den))
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{}", format_rational(r)),
            Scalar::Float(z) => {
                if z.im == 0.0 {
                    write!(f, "{}", z.re)
                } else if z.im.is_sign_negative() {
                    write!(f, "{}{}i", z.re, z.im)
                } else {
                    write!(f, "{}+{}i", z.re, z.im)
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(r) => serializer.serialize_str(&format_rational(r)),
            Scalar::Float(z) => [z.re, z.im].serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Pair([f64; 2]),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => parse_rational(&s)
                .map(Scalar::Exact)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational: {s:?}"))),
            Repr::Pair([re, im]) => Ok(Scalar::Float(Complex64::new(re, im))),
        }
    }
}

/// Sign of an integer power of minus one.
pub fn neg_one_pow(exp: i64) -> i64 {
    if exp.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Exact scalar `(-1)^exp`.
pub fn sign_scalar(exp: i64, mode: Mode) -> Scalar {
    match (neg_one_pow(exp), mode) {
        (1, m) => Scalar::one(m),
        (_, m) => -Scalar::one(m),
    }
}
