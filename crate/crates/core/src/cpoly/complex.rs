use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::real::Real;

/// Complex number over a [`Real`] scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexValue<T = f64> {
    pub re: T,
    pub im: T,
}

impl<T: Real> ComplexValue<T> {
    pub fn new(re: T, im: T) -> Self {
        ComplexValue { re, im }
    }

    pub fn from_f64(re: f64, im: f64, bits: u32) -> Self {
        ComplexValue::new(T::from_f64(re, bits), T::from_f64(im, bits))
    }

    pub fn from_real(re: T) -> Self {
        let im = T::zero(re.bits());
        ComplexValue { re, im }
    }

    pub fn zero(bits: u32) -> Self {
        Self::from_f64(0.0, 0.0, bits)
    }

    pub fn one(bits: u32) -> Self {
        Self::from_f64(1.0, 0.0, bits)
    }

    pub fn bits(&self) -> u32 {
        self.re.bits()
    }

    /// `r·e^{iθ}`.
    pub fn from_polar(r: T, theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        ComplexValue::new(r.clone() * c, r * s)
    }

    pub fn to_f64(&self) -> ComplexValue<f64> {
        ComplexValue::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn lift(z: &ComplexValue<f64>, bits: u32) -> Self {
        Self::from_f64(z.re, z.im, bits)
    }

    pub fn norm(&self) -> T {
        self.re.clone().hypot(self.im.clone())
    }

    /// `ln|z|`; `-inf` at zero.
    pub fn ln_abs(&self) -> T {
        self.norm().ln()
    }

    pub fn arg(&self) -> T {
        self.im.clone().atan2(self.re.clone())
    }

    pub fn conj(&self) -> Self {
        ComplexValue::new(self.re.clone(), -self.im.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        ComplexValue::new(self.re.clone() * k.clone(), self.im.clone() * k.clone())
    }

    pub fn exp(&self) -> Self {
        Self::from_polar(self.re.clone().exp(), self.im.clone())
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Self::one(self.bits());
        let mut base = self.clone();
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

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn dist(&self, other: &Self) -> T {
        (self.clone() - other.clone()).norm()
    }
}

impl<T: Real> Add for ComplexValue<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        ComplexValue::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<T: Real> Sub for ComplexValue<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ComplexValue::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<T: Real> Mul for ComplexValue<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        ComplexValue::new(re, im)
    }
}

impl<T: Real> Div for ComplexValue<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        // Smith's algorithm keeps the intermediate products in range.
        if rhs.re.clone().abs() >= rhs.im.clone().abs() {
            let r = rhs.im.clone() / rhs.re.clone();
            let d = rhs.re.clone() + rhs.im.clone() * r.clone();
            ComplexValue::new(
                (self.re.clone() + self.im.clone() * r.clone()) / d.clone(),
                (self.im - self.re * r) / d,
            )
        } else {
            let r = rhs.re.clone() / rhs.im.clone();
            let d = rhs.re.clone() * r.clone() + rhs.im.clone();
            ComplexValue::new(
                (self.re.clone() * r.clone() + self.im.clone()) / d.clone(),
                (self.im * r - self.re) / d,
            )
        }
    }
}

impl<T: Real> Neg for ComplexValue<T> {
    type Output = Self;
    fn neg(self) -> Self {
        ComplexValue::new(-self.re, -self.im)
    }
}

impl fmt::Display for ComplexValue<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_sign_negative() {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}


/// Error for malformed complex literals.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expected a complex number of the form a+bi or a-bi, got {0:?}")]
pub struct ParseComplexError(pub String);

impl std::str::FromStr for ComplexValue<f64> {
    type Err = ParseComplexError;

    /// Accepts `a`, `a+bi` and `a-bi` with no interior whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseComplexError(s.to_string());
        let real = |t: &str| -> Result<f64, ParseComplexError> {
            let ok = !t.is_empty() && t.chars().all(|c| c.is_ascii_digit() || "+-.eE".contains(c));
            let v: f64 = if ok { t.parse().map_err(|_| bad())? } else { return Err(bad()) };
            if v.is_finite() {
                Ok(v)
            } else {
                Err(bad())
            }
        };
        let Some(body) = s.strip_suffix('i') else {
            return Ok(ComplexValue::new(real(s)?, 0.0));
        };
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
            .ok_or_else(bad)?;
        let re = real(&body[..split])?;
        let im = real(&body[split..])?;
        Ok(ComplexValue::new(re, im))
    }
}

#[cfg(test)]
mod parse_tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        let p = |s: &str| s.parse::<ComplexValue<f64>>();
        assert_eq!(p("1+0i").unwrap(), ComplexValue::new(1.0, 0.0));
        assert_eq!(p("0.5-2i").unwrap(), ComplexValue::new(0.5, -2.0));
        assert_eq!(p("-1e-3+2.5e+1i").unwrap(), ComplexValue::new(-1e-3, 25.0));
        assert_eq!(p("0").unwrap(), ComplexValue::new(0.0, 0.0));
        assert_eq!(p("1.5").unwrap(), ComplexValue::new(1.5, 0.0));
        for bad in ["1 + 0i", "1+ 0i", " 1", "i", "1+i", "+0i", "abc", "1+2j", "inf", "nan+0i", ""] {
            assert!(p(bad).is_err(), "{bad}");
        }
        let z = ComplexValue::new(0.25, -1.5);
        assert_eq!(p(&z.to_string()).unwrap(), z);
    }
}
