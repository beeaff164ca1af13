//! Magnitudes that may lie far outside the floating exponent range.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cpoly::{ComplexValue, Real};

/// Nonnegative real stored as `mantissa · 10^exp10`.
///
/// Values whose natural log fits the backend's exponent budget are kept
/// directly (`exp10 == 0`); larger or smaller ones are split with the mantissa
/// in `[1, 10)`. The decimal form is canonical: [`WideReal::parse`] of
/// [`WideReal::to_decimal`] reproduces the value bit for bit.
#[derive(Clone, Debug, PartialEq)]
pub struct WideReal<T = f64> {
    mantissa: T,
    exp10: i64,
}

impl<T: Real> WideReal<T> {
    pub fn zero(bits: u32) -> Self {
        WideReal {
            mantissa: T::zero(bits),
            exp10: 0,
        }
    }

    /// Returns `None` for negative or non-finite input.
    pub fn from_real(v: T) -> Option<Self> {
        let bits = v.bits();
        if !v.is_finite() || v < T::zero(bits) {
            return None;
        }
        if v.is_zero() {
            return Some(Self::zero(bits));
        }
        let ln = v.clone().ln();
        if ln.to_f64().abs() <= v.exp_budget() {
            Some(WideReal { mantissa: v, exp10: 0 })
        } else {
            Some(Self::from_ln(ln))
        }
    }

    /// The value `e^ln`; `ln = -inf` gives zero.
    pub fn from_ln(ln: T) -> Self {
        let bits = ln.bits();
        let lf = ln.to_f64();
        if lf == f64::NEG_INFINITY {
            return Self::zero(bits);
        }
        if lf.abs() <= ln.exp_budget() {
            if let Some(w) = Self::direct(ln.clone().exp()) {
                return w;
            }
        }
        let ln10 = T::from_f64(10.0, bits).ln();
        let k = (ln.clone() / ln10.clone()).floor();
        let mut exp10 = k.to_f64() as i64;
        let mut mantissa = (ln - k * ln10).exp();
        let ten = T::from_f64(10.0, bits);
        if mantissa >= ten {
            mantissa = mantissa / ten;
            exp10 += 1;
        } else if mantissa < T::one(bits) {
            mantissa = mantissa * ten;
            exp10 -= 1;
        }
        WideReal { mantissa, exp10 }.canonical()
    }

    /// The form [`WideReal::parse`] gives back for this value's decimal.
    /// Near the budget edge a split value may read back as a direct one and
    /// the reverse.
    fn canonical(self) -> Self {
        let bits = self.bits();
        if self.is_zero() {
            return Self::zero(bits);
        }
        let mut w = self;
        if w.exp10 != 0 {
            let ten = T::from_f64(10.0, bits);
            while w.mantissa >= ten {
                w.mantissa = w.mantissa / ten.clone();
                w.exp10 += 1;
            }
            while w.mantissa < T::one(bits) {
                w.mantissa = w.mantissa * ten.clone();
                w.exp10 -= 1;
            }
        } else if Self::direct(w.mantissa.clone()).is_none() {
            return Self::from_ln(w.mantissa.ln());
        }
        Self::parse(&w.to_decimal(), bits).unwrap_or(w)
    }

    /// `v` stored directly, when it is nonzero and within the budget.
    fn direct(v: T) -> Option<Self> {
        let ok = v.is_finite() && !v.is_zero() && v.clone().ln().to_f64().abs() <= v.exp_budget();
        ok.then_some(WideReal { mantissa: v, exp10: 0 })
    }

    pub fn bits(&self) -> u32 {
        self.mantissa.bits()
    }

    pub fn mantissa(&self) -> &T {
        &self.mantissa
    }

    pub fn exp10(&self) -> i64 {
        self.exp10
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// Natural log (`-inf` for zero).
    pub fn ln(&self) -> T {
        let bits = self.bits();
        let base = self.mantissa.clone().ln();
        if self.exp10 == 0 {
            base
        } else {
            base + T::from_i64(self.exp10, bits) * T::from_f64(10.0, bits).ln()
        }
    }

    /// The value itself when it is stored directly.
    pub fn to_real(&self) -> Option<T> {
        (self.exp10 == 0).then(|| self.mantissa.clone())
    }

    /// Lossy conversion, saturating to `inf`/0.
    pub fn to_f64(&self) -> f64 {
        if self.exp10 == 0 {
            self.mantissa.to_f64()
        } else {
            self.mantissa.to_f64() * 10f64.powi(self.exp10.clamp(-400, 400) as i32)
        }
    }

    pub fn half(&self) -> Self {
        let bits = self.bits();
        WideReal {
            mantissa: self.mantissa.clone() / T::from_f64(2.0, bits),
            exp10: self.exp10,
        }
        .canonical()
    }

    /// Multiplies the mantissa by `k > 0`.
    pub fn scale_mantissa(&self, k: f64) -> Self {
        let bits = self.bits();
        WideReal {
            mantissa: self.mantissa.clone() * T::from_f64(k, bits),
            exp10: self.exp10,
        }
        .canonical()
    }

    pub fn to_decimal(&self) -> String {
        if self.exp10 == 0 {
            self.mantissa.to_decimal()
        } else {
            let m = self.mantissa.to_decimal();
            // The mantissa may carry its own (zero) exponent suffix.
            let m = m.strip_suffix("e0").unwrap_or(&m);
            format!("{m}e{}", self.exp10)
        }
    }

    pub fn parse(s: &str, bits: u32) -> Option<Self> {
        if s.starts_with('-') {
            return None;
        }
        if let Some(v) = T::parse_decimal(s, bits) {
            if v.is_zero() {
                // Distinguish a literal zero from an underflowed tiny value.
                let head = s.split(['e', 'E']).next().unwrap_or(s);
                if T::parse_decimal(head, bits).is_some_and(|m| m.is_zero()) {
                    return Some(Self::zero(bits));
                }
            } else if v.clone().ln().to_f64().abs() <= v.exp_budget() {
                return Some(WideReal { mantissa: v, exp10: 0 });
            }
        }
        let (m, e) = s.rsplit_once(['e', 'E'])?;
        let exp10: i64 = e.parse().ok()?;
        let mantissa = T::parse_decimal(m, bits)?;
        if mantissa <= T::zero(bits) {
            return None;
        }
        Some(WideReal { mantissa, exp10 })
    }

    pub fn to_wide_f64(&self) -> WideReal<f64> {
        match self.to_real() {
            Some(v) => WideReal::<f64>::from_real(v.to_f64())
                .unwrap_or_else(|| WideReal::<f64>::from_ln(self.ln().to_f64())),
            None => WideReal::<f64>::from_ln(self.ln().to_f64()),
        }
    }
}

impl<T: Real> fmt::Display for WideReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

impl<T: Real> Serialize for WideReal<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal())
    }
}

impl<'de> Deserialize<'de> for WideReal<f64> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        WideReal::parse(&s, 53).ok_or_else(|| serde::de::Error::custom(format!("bad magnitude {s:?}")))
    }
}

/// A complex quantity held as `(ln|w|, arg w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogMagnitude<T = f64> {
    pub log_abs: T,
    pub arg: T,
}

impl<T: Real> LogMagnitude<T> {
    pub fn from_complex(w: &ComplexValue<T>) -> Self {
        LogMagnitude {
            log_abs: w.ln_abs(),
            arg: w.arg(),
        }
    }

    pub fn magnitude(&self) -> WideReal<T> {
        WideReal::from_ln(self.log_abs.clone())
    }

    /// The complex value, or `None` when its modulus exceeds the exponent budget.
    pub fn to_complex(&self) -> Option<ComplexValue<T>> {
        if self.log_abs.to_f64() > self.log_abs.exp_budget() {
            return None;
        }
        Some(ComplexValue::from_polar(self.log_abs.clone().exp(), self.arg.clone()))
    }
}
