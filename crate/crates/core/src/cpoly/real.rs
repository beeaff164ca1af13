//! Real scalar abstraction.
//!
//! Every numeric routine in the crate is generic over [`Real`]. Two backends
//! exist: native `f64` (53-bit mantissa, used whenever the requested precision
//! is exactly 53 bits) and [`Mp`], an MPFR float at an arbitrary precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::{Constant, Round};
use rug::Float;

/// Precision, in bits, of the native double backend.
pub const DOUBLE_BITS: u32 = 53;

/// Smallest and largest precision accepted anywhere in the crate.
pub const MIN_BITS: u32 = 24;
pub const MAX_BITS: u32 = 4096;

pub trait Real:
    Clone
    + fmt::Debug
    + PartialOrd
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn from_f64(x: f64, bits: u32) -> Self;
    fn to_f64(&self) -> f64;
    /// Mantissa precision of this value.
    fn bits(&self) -> u32;

    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn ln_1p(self) -> Self;
    fn sin_cos(self) -> (Self, Self);
    fn atan2(self, x: Self) -> Self;
    fn hypot(self, other: Self) -> Self;
    fn floor(self) -> Self;
    fn pi(bits: u32) -> Self;

    fn is_finite(&self) -> bool;
    fn is_zero(&self) -> bool;

    /// Largest natural log of a magnitude that is safe to exponentiate.
    fn exp_budget(&self) -> f64;

    /// Parses a decimal string, correctly rounded to `bits`.
    fn parse_decimal(s: &str, bits: u32) -> Option<Self>;
    /// Decimal string that parses back to exactly this value.
    fn to_decimal(&self) -> String;

    fn zero(bits: u32) -> Self {
        Self::from_f64(0.0, bits)
    }

    fn one(bits: u32) -> Self {
        Self::from_f64(1.0, bits)
    }

    fn from_i64(k: i64, bits: u32) -> Self {
        Self::from_f64(k as f64, bits)
    }

    /// Unit roundoff `2^(1 - bits)`.
    fn epsilon(bits: u32) -> Self {
        Self::from_f64(2f64.powi(1 - bits as i32), bits)
    }

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn powi(self, k: u32) -> Self {
        let bits = self.bits();
        let mut acc = Self::one(bits);
        let mut base = self;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// `ln(1 + e^x)` without overflow.
    fn softplus(self) -> Self {
        let bits = self.bits();
        if self == Self::from_f64(f64::NEG_INFINITY, bits) {
            return Self::zero(bits);
        }
        let neg_abs = -self.clone().abs();
        let tail = neg_abs.exp().ln_1p();
        self.max(Self::zero(bits)) + tail
    }
}

/// Total ordering helper that sorts NaN last.
pub fn total_cmp<T: Real>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b).unwrap_or_else(|| match (a == a, b == b) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => Ordering::Equal,
    })
}

impl Real for f64 {
    fn from_f64(x: f64, _bits: u32) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn bits(&self) -> u32 {
        DOUBLE_BITS
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn ln_1p(self) -> Self {
        f64::ln_1p(self)
    }
    fn sin_cos(self) -> (Self, Self) {
        f64::sin_cos(self)
    }
    fn atan2(self, x: Self) -> Self {
        f64::atan2(self, x)
    }
    fn hypot(self, other: Self) -> Self {
        f64::hypot(self, other)
    }
    fn floor(self) -> Self {
        f64::floor(self)
    }
    fn pi(_bits: u32) -> Self {
        std::f64::consts::PI
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn exp_budget(&self) -> f64 {
        700.0
    }
    fn parse_decimal(s: &str, _bits: u32) -> Option<Self> {
        let t = s.trim();
        if t.is_empty() || t != s {
            return None;
        }
        // Rust accepts "inf"/"nan" spellings; reject everything non-numeric.
        if !t
            .bytes()
            .all(|b| b.is_ascii_digit() || matches!(b, b'+' | b'-' | b'.' | b'e' | b'E'))
        {
            return None;
        }
        t.parse::<f64>().ok().filter(|v| v.is_finite())
    }
    fn to_decimal(&self) -> String {
        let a = self.abs();
        if *self == 0.0 || (1e-5..1e16).contains(&a) {
            format!("{}", self)
        } else {
            format!("{:e}", self)
        }
    }
    fn epsilon(_bits: u32) -> Self {
        f64::EPSILON
    }
}

/// MPFR-backed real at a fixed precision.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Mp(pub Float);

impl Mp {
    pub fn new(x: f64, bits: u32) -> Self {
        Mp(Float::with_val(bits, x))
    }
}

impl fmt::Debug for Mp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mp({}, {}b)", self.to_decimal(), self.0.prec())
    }
}

impl fmt::Display for Mp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

impl Add for Mp {
    type Output = Mp;
    fn add(self, rhs: Mp) -> Mp {
        Mp(self.0 + rhs.0)
    }
}

impl Sub for Mp {
    type Output = Mp;
    fn sub(self, rhs: Mp) -> Mp {
        Mp(self.0 - rhs.0)
    }
}

impl Mul for Mp {
    type Output = Mp;
    fn mul(self, rhs: Mp) -> Mp {
        Mp(self.0 * rhs.0)
    }
}

impl Div for Mp {
    type Output = Mp;
    fn div(self, rhs: Mp) -> Mp {
        Mp(self.0 / rhs.0)
    }
}

impl Neg for Mp {
    type Output = Mp;
    fn neg(self) -> Mp {
        Mp(-self.0)
    }
}

impl Real for Mp {
    fn from_f64(x: f64, bits: u32) -> Self {
        Mp::new(x, bits)
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn bits(&self) -> u32 {
        self.0.prec()
    }
    fn abs(self) -> Self {
        Mp(self.0.abs())
    }
    fn sqrt(self) -> Self {
        Mp(self.0.sqrt())
    }
    fn exp(self) -> Self {
        Mp(self.0.exp())
    }
    fn ln(self) -> Self {
        Mp(self.0.ln())
    }
    fn ln_1p(self) -> Self {
        Mp(self.0.ln_1p())
    }
    fn sin_cos(self) -> (Self, Self) {
        let bits = self.bits();
        let (s, c) = self.0.sin_cos(Float::new(bits));
        (Mp(s), Mp(c))
    }
    fn atan2(self, x: Self) -> Self {
        Mp(self.0.atan2(&x.0))
    }
    fn hypot(self, other: Self) -> Self {
        Mp(self.0.hypot(&other.0))
    }
    fn floor(self) -> Self {
        Mp(self.0.floor())
    }
    fn pi(bits: u32) -> Self {
        Mp(Float::with_val(bits, Constant::Pi))
    }
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn exp_budget(&self) -> f64 {
        // MPFR's default exponent range is about 2^30 binary digits.
        5.0e8
    }
    fn parse_decimal(s: &str, bits: u32) -> Option<Self> {
        if s.trim() != s || s.is_empty() {
            return None;
        }
        if !s
            .bytes()
            .all(|b| b.is_ascii_digit() || matches!(b, b'+' | b'-' | b'.' | b'e' | b'E'))
        {
            return None;
        }
        let parsed = Float::parse(s).ok()?;
        let v = Float::with_val(bits, parsed);
        v.is_finite().then_some(Mp(v))
    }
    fn to_decimal(&self) -> String {
        if self.0.is_zero() {
            return if self.0.is_sign_negative() { "-0".into() } else { "0".into() };
        }
        self.0.to_string_radix_round(10, None, Round::Nearest)
    }
    fn epsilon(bits: u32) -> Self {
        Mp(Float::with_val(bits, 1) >> (bits - 1))
    }
}
