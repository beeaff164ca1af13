//! Sequence probes across several family members: Marty blow-up on the unit
//! circle and decay of `f^{(ℓ)}/f^{ℓ+1}` away from it.

use crate::cpoly::{ComplexValue, Real};
use crate::forge::{nearest_node, CounterexampleFunction, WideReal};

use super::functional::{quotient_log, spherical_derivative_log};
use super::report::ProbeResult;
use super::AnalysisError;

/// Allowed distance of a Marty centre from the unit circle.
pub const CENTER_TOL: f64 = 1e-6;
/// Relative slack on the closed-form lower bound `a·n`.
pub const MARTY_SLACK: f64 = 1e-6;
pub const MARTY_RINGS: usize = 16;
pub const MARTY_ANGLES: usize = 64;
/// Points for the decay probe must satisfy `||z| − 1| ≥ 0.1` and `|z| ≤ 1.9`.
pub const CIRCLE_GAP: f64 = 0.1;
pub const OUTER_LIMIT: f64 = 1.9;
/// Final first-order quotient required for a "decay" verdict.
pub const DECAY_CEILING: f64 = 0.1;

/// A family member the probes can measure, whatever its precision.
pub trait ProbeTarget {
    fn order(&self) -> u32;
    /// `ln a` rounded to double.
    fn ln_scale(&self) -> f64;
    /// `ln max f^#` over `center + offsets` and, when it lies within
    /// `radius` of `center`, the nearest node; with the maximizing point.
    fn max_log_spherical(
        &self,
        center: &ComplexValue<f64>,
        offsets: &[ComplexValue<f64>],
        radius: f64,
    ) -> Result<(WideReal<f64>, ComplexValue<f64>), AnalysisError>;
    /// `ln(|f^{(l)}(z)| / |f(z)|^{l+1})`.
    fn log_quotient(&self, z: &ComplexValue<f64>, l: usize) -> Result<WideReal<f64>, AnalysisError>;
}

impl<T: Real> ProbeTarget for CounterexampleFunction<T> {
    fn order(&self) -> u32 {
        self.n()
    }

    fn ln_scale(&self) -> f64 {
        self.ln_a().to_f64()
    }

    fn max_log_spherical(
        &self,
        center: &ComplexValue<f64>,
        offsets: &[ComplexValue<f64>],
        radius: f64,
    ) -> Result<(WideReal<f64>, ComplexValue<f64>), AnalysisError> {
        let bits = self.precision_bits();
        let c = ComplexValue::<T>::lift(center, bits);
        let mut candidates: Vec<ComplexValue<T>> = offsets
            .iter()
            .map(|o| c.clone() + ComplexValue::lift(o, bits))
            .collect();
        let (l, _, d) = nearest_node(self.n(), &c);
        if d.to_f64() <= radius {
            candidates.push(self.nodes()[l as usize].clone());
        }
        let mut best = T::from_f64(f64::NEG_INFINITY, bits);
        let mut best_point = center.clone();
        for z in &candidates {
            let z = match self.node_index(z) {
                Some(i) => self.nodes()[i].clone(),
                None => z.clone(),
            };
            let v = spherical_derivative_log(&self.f_scaled_jet(&z, 1))?;
            if v > best {
                best = v;
                best_point = z.to_f64();
            }
        }
        Ok((WideReal::from_ln(best).to_wide_f64(), best_point))
    }

    fn log_quotient(&self, z: &ComplexValue<f64>, l: usize) -> Result<WideReal<f64>, AnalysisError> {
        let z = ComplexValue::<T>::lift(z, self.precision_bits());
        let v = quotient_log(&self.f_scaled_jet(&z, l), l)?;
        Ok(WideReal::from_ln(v).to_wide_f64())
    }
}

/// [`marty_probe_grid`] with [`MARTY_RINGS`] rings of [`MARTY_ANGLES`] points.
pub fn marty_probe<F: ProbeTarget>(
    fs: &[F],
    center: &ComplexValue<f64>,
    radius: f64,
) -> Result<ProbeResult, AnalysisError> {
    marty_probe_grid(fs, center, radius, MARTY_RINGS, MARTY_ANGLES)
}

/// Maximum of the spherical derivative of each member over a polar grid in
/// `|z − center| ≤ radius`, the centre itself, and the nearest node when it
/// lies in the disk.
///
/// Verdict "blowup" when every measurement is at least `n·a·(1 − 10⁻⁶)`
/// (the value `f^#(z_ℓ) = |f′(z_ℓ)| = a·n`), exceeds `2n²`, and the sequence
/// strictly increases.
pub fn marty_probe_grid<F: ProbeTarget>(
    fs: &[F],
    center: &ComplexValue<f64>,
    radius: f64,
    rings: usize,
    angles: usize,
) -> Result<ProbeResult, AnalysisError> {
    if fs.is_empty() {
        return Err(AnalysisError::EmptyInput);
    }
    if !((center.norm() - 1.0).abs() <= CENTER_TOL) {
        return Err(AnalysisError::CenterOffCircle(center.to_string()));
    }
    if !(radius.is_finite() && radius >= 0.0) {
        return Err(AnalysisError::InvalidRadius(radius));
    }
    let mut offsets = vec![ComplexValue::new(0.0, 0.0)];
    if radius > 0.0 {
        for i in 1..=rings {
            let rho = radius * i as f64 / rings as f64;
            for k in 0..angles {
                let theta = std::f64::consts::TAU * k as f64 / angles as f64;
                offsets.push(ComplexValue::from_polar(rho, theta));
            }
        }
    }

    let mut result = ProbeResult {
        probe: "marty".into(),
        n_values: Vec::new(),
        measurements: Vec::new(),
        points: Vec::new(),
        orders: Vec::new(),
        verdict: String::new(),
    };
    let mut blowup = true;
    let mut prev: Option<f64> = None;
    for f in fs {
        let (m, point) = f.max_log_spherical(center, &offsets, radius)?;
        let n = f.order() as f64;
        let ln_m = m.ln();
        let floor = f.ln_scale() + n.ln() + (-MARTY_SLACK).ln_1p();
        blowup &= ln_m >= floor && ln_m > (2.0 * n * n).ln() && prev.is_none_or(|p| ln_m > p);
        prev = Some(ln_m);
        result.n_values.push(f.order());
        result.measurements.push(m);
        result.points.push(point);
        result.orders.push(1);
    }
    result.verdict = if blowup { "blowup" } else { "bounded" }.into();
    Ok(result)
}

/// `|f^{(ℓ)}(z)| / |f(z)|^{ℓ+1}` for every member, point and order, in log
/// space.
///
/// Verdict "decay" when every second-order value is at most `1/n` and, for
/// each point, the first-order values end no higher than they start and at
/// most [`DECAY_CEILING`].
pub fn lemma2_probe<F: ProbeTarget>(
    fs: &[F],
    points: &[ComplexValue<f64>],
    orders: &[u32],
) -> Result<ProbeResult, AnalysisError> {
    if fs.is_empty() || points.is_empty() || orders.is_empty() {
        return Err(AnalysisError::EmptyInput);
    }
    if let Some(&bad) = orders.iter().find(|&&o| !(1..=2).contains(&o)) {
        return Err(AnalysisError::InvalidOrder(bad));
    }
    for z in points {
        let m = z.norm();
        if !((m - 1.0).abs() >= CIRCLE_GAP && m <= OUTER_LIMIT) {
            return Err(AnalysisError::PointTooCloseToCircle(z.to_string()));
        }
    }

    let mut result = ProbeResult {
        probe: "lemma2".into(),
        n_values: Vec::new(),
        measurements: Vec::new(),
        points: Vec::new(),
        orders: Vec::new(),
        verdict: String::new(),
    };
    let mut decay = true;
    let mut first_order: Vec<Vec<f64>> = vec![Vec::new(); points.len()];
    for f in fs {
        let inv_n = -(f.order() as f64).ln();
        for (i, z) in points.iter().enumerate() {
            for &l in orders {
                let v = f.log_quotient(z, l as usize)?;
                if l == 2 {
                    decay &= v.ln() <= inv_n;
                } else {
                    first_order[i].push(v.ln());
                }
                result.n_values.push(f.order());
                result.measurements.push(v);
                result.points.push(z.clone());
                result.orders.push(l);
            }
        }
    }
    for seq in first_order.iter().filter(|s| !s.is_empty()) {
        let (first, last) = (seq[0], seq[seq.len() - 1]);
        decay &= last <= first && last <= DECAY_CEILING.ln();
    }
    result.verdict = if decay { "decay" } else { "no-decay" }.into();
    Ok(result)
}
