//! Jets of `e^p` and `h = g·e^p`, plain and in log-scaled form.

use crate::cpoly::{binom, ComplexValue, Jet, NewtonPolynomial, Real};

use super::conditions::{g_jet, g_jet_at_node, nearest_node};
use super::wide::LogMagnitude;
use super::ForgeError;

/// Points closer than this to a root of unity are excluded from the log-space
/// ratio evaluation.
pub const NODE_EXCLUSION: f64 = 1e-3;

/// Jet of `e^{p}/e^{p(z)}`: `B₀ = 1`, `Bⱼ = Σ_{i<j} C(j−1, i)·p^{(j−i)}·Bᵢ`.
pub fn exp_jet_reduced<T: Real>(p_jet: &Jet<T>) -> Jet<T> {
    let bits = p_jet.get(0).bits();
    let order = p_jet.order();
    let mut b: Vec<ComplexValue<T>> = Vec::with_capacity(order + 1);
    b.push(ComplexValue::one(bits));
    for j in 1..=order {
        let mut acc = ComplexValue::zero(bits);
        for (i, bi) in b.iter().enumerate() {
            let w = T::from_f64(binom(j - 1, i), bits);
            acc = acc + (p_jet.get(j - i).clone() * bi.clone()).scale(&w);
        }
        b.push(acc);
    }
    Jet::new(b)
}

/// Jet of `e^{p}` from the jet of `p`. Fails when `|Re p(z)|` leaves the
/// exponent budget of the backend.
pub fn exp_jet<T: Real>(p_jet: &Jet<T>) -> Result<Jet<T>, ForgeError> {
    let p0 = p_jet.get(0);
    let re = p0.re.to_f64();
    if re.abs() > p0.re.exp_budget() {
        return Err(ForgeError::Overflow { log_magnitude: re });
    }
    let e0 = p0.exp();
    Ok(exp_jet_reduced(p_jet).scale(&e0))
}

/// Leibniz combination `Σ C(m, j)·g^{(m−j)}·Bⱼ` for each `m`.
fn leibniz<T: Real>(g: &Jet<T>, b: &Jet<T>) -> Jet<T> {
    let bits = g.get(0).bits();
    let order = g.order().min(b.order());
    let values = (0..=order)
        .map(|m| {
            (0..=m).fold(ComplexValue::zero(bits), |acc, j| {
                let w = T::from_f64(binom(m, j), bits);
                acc + (g.get(m - j).clone() * b.get(j).clone()).scale(&w)
            })
        })
        .collect();
    Jet::new(values)
}

/// A jet held as `e^{log_scale + i·phase}·reduced`.
///
/// The scale factor never materializes, so magnitudes far beyond the float
/// range can still be compared through their logs.
#[derive(Clone, Debug)]
pub struct ScaledJet<T = f64> {
    pub log_scale: T,
    pub phase: T,
    pub reduced: Jet<T>,
}

impl<T: Real> ScaledJet<T> {
    pub fn order(&self) -> usize {
        self.reduced.order()
    }

    /// `ln|values[j]|` (`-inf` for an exact zero).
    pub fn log_abs(&self, j: usize) -> T {
        self.log_scale.clone() + self.reduced.get(j).ln_abs()
    }

    pub fn log_magnitude(&self, j: usize) -> LogMagnitude<T> {
        LogMagnitude {
            log_abs: self.log_abs(j),
            arg: self.phase.clone() + self.reduced.get(j).arg(),
        }
    }

    /// Materializes the jet, failing if any entry overflows.
    pub fn materialize(&self) -> Result<Jet<T>, ForgeError> {
        let budget = self.log_scale.exp_budget();
        let mut values = Vec::with_capacity(self.order() + 1);
        for j in 0..=self.order() {
            let r = self.reduced.get(j);
            if r.is_zero() {
                values.push(r.clone());
                continue;
            }
            let lm = self.log_magnitude(j);
            let lf = lm.log_abs.to_f64();
            if lf > budget {
                return Err(ForgeError::Overflow { log_magnitude: lf });
            }
            values.push(ComplexValue::from_polar(lm.log_abs.exp(), lm.arg));
        }
        Ok(Jet::new(values))
    }

    /// Adds `ln k` to the scale.
    pub fn rescale(mut self, ln_k: T) -> Self {
        self.log_scale = self.log_scale + ln_k;
        self
    }
}

/// `p(z)` and the reduced jet `R` with `h^{(m)} = e^{p(z)}·R_m`.
pub(crate) fn h_parts<T: Real>(
    n: u32,
    p: &NewtonPolynomial<T>,
    z: &ComplexValue<T>,
    order: usize,
    at_node: bool,
) -> (ComplexValue<T>, Jet<T>) {
    let pj = p.eval_jet(z, order);
    let b = exp_jet_reduced(&pj);
    let g = if at_node {
        g_jet_at_node(n, z, order)
    } else {
        g_jet(n, z, order)
    };
    (pj.get(0).clone(), leibniz(&g, &b))
}

/// Jet of `h = g_n·e^{p}` at `z`.
pub fn h_jet<T: Real>(
    n: u32,
    p: &NewtonPolynomial<T>,
    z: &ComplexValue<T>,
    order: usize,
) -> Result<Jet<T>, ForgeError> {
    let pj = p.eval_jet(z, order);
    let e = exp_jet(&pj)?;
    Ok(leibniz(&g_jet(n, z, order), &e))
}

/// Log-scaled jet of `h`; `at_node` pins `g(z) = 0` for a point known to be
/// a root of unity.
pub fn h_scaled_jet<T: Real>(
    n: u32,
    p: &NewtonPolynomial<T>,
    z: &ComplexValue<T>,
    order: usize,
    at_node: bool,
) -> ScaledJet<T> {
    let (p0, reduced) = h_parts(n, p, z, order, at_node);
    ScaledJet {
        log_scale: p0.re,
        phase: p0.im,
        reduced,
    }
}

/// `ln|h(z)| = ln|g(z)| + Re p(z)`.
pub fn log_abs_h<T: Real>(n: u32, p: &NewtonPolynomial<T>, z: &ComplexValue<T>) -> T {
    let g = z.powi(n) - ComplexValue::one(z.bits());
    g.ln_abs() + p.eval(z).re
}

/// `ln|h″(z)/h(z)³|` evaluated as
/// `ln|g″ + 2g′p′ + g(p″ + p′²)| − 2·Re p(z) − 3·ln|g(z)|`.
///
/// Returns `-inf` where the numerator vanishes identically (e.g. `n = 1`).
pub fn ratio_log_abs<T: Real>(
    n: u32,
    p: &NewtonPolynomial<T>,
    z: &ComplexValue<T>,
) -> Result<T, ForgeError> {
    let (l, _, d) = nearest_node(n, z);
    if d.to_f64() < NODE_EXCLUSION {
        return Err(ForgeError::NearNode { index: l });
    }
    Ok(ratio_log_abs_unchecked(n, p, z))
}

pub(crate) fn ratio_log_abs_unchecked<T: Real>(n: u32, p: &NewtonPolynomial<T>, z: &ComplexValue<T>) -> T {
    let bits = z.bits();
    let g = g_jet(n, z, 2);
    let pj = p.eval_jet(z, 2);
    let (g0, g1, g2) = (g.get(0).clone(), g.get(1).clone(), g.get(2).clone());
    let (p0, p1, p2) = (pj.get(0).clone(), pj.get(1).clone(), pj.get(2).clone());
    let num = g2
        + (g1 * p1.clone()).scale(&T::from_f64(2.0, bits))
        + g0.clone() * (p2 + p1.clone() * p1);
    if num.is_zero() {
        return T::from_f64(f64::NEG_INFINITY, bits);
    }
    num.ln_abs() - p0.re * T::from_f64(2.0, bits) - g0.ln_abs() * T::from_f64(3.0, bits)
}
