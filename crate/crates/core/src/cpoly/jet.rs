use super::complex::ComplexValue;
use super::real::Real;

/// Derivative values `(f(z), f'(z), …, f^(J)(z))` at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<T = f64> {
    values: Vec<ComplexValue<T>>,
}

impl<T: Real> Jet<T> {
    /// Panics on an empty vector; a jet always carries at least the value.
    pub fn new(values: Vec<ComplexValue<T>>) -> Self {
        assert!(!values.is_empty(), "a jet needs at least one entry");
        Jet { values }
    }

    pub fn zero(order: usize, bits: u32) -> Self {
        Jet {
            values: vec![ComplexValue::zero(bits); order + 1],
        }
    }

    /// Jet of the constant function `c`.
    pub fn constant(c: ComplexValue<T>, order: usize) -> Self {
        let bits = c.bits();
        let mut values = vec![ComplexValue::zero(bits); order + 1];
        values[0] = c;
        Jet { values }
    }

    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[ComplexValue<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<ComplexValue<T>> {
        self.values
    }

    pub fn get(&self, j: usize) -> &ComplexValue<T> {
        &self.values[j]
    }

    pub fn scale(&self, k: &ComplexValue<T>) -> Self {
        Jet {
            values: self.values.iter().map(|v| v.clone() * k.clone()).collect(),
        }
    }

    /// Jet truncated to `order`.
    pub fn truncate(&self, order: usize) -> Self {
        Jet {
            values: self.values[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn to_f64(&self) -> Jet<f64> {
        Jet {
            values: self.values.iter().map(ComplexValue::to_f64).collect(),
        }
    }
}

/// Binomial coefficient as an `f64`, exact for the small arguments used here.
pub(crate) fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}
