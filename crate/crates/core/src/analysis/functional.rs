//! The functionals `|f^{(k)}|/(1 + |f|^{k+1})` and `|f′|/(1 + |f|²)`, on plain
//! jets and on log-scaled ones.

use crate::cpoly::{Jet, Real};
use crate::forge::ScaledJet;

use super::AnalysisError;

fn need(jet_order: usize, k: usize) -> Result<(), AnalysisError> {
    if jet_order < k {
        return Err(AnalysisError::OrderTooLow {
            needed: k,
            found: jet_order,
        });
    }
    Ok(())
}

/// `|f^{(k)}| / (1 + |f|^{k+1})`.
pub fn fk_value<T: Real>(jet: &Jet<T>, k: usize) -> Result<T, AnalysisError> {
    need(jet.order(), k)?;
    let bits = jet.get(0).bits();
    let den = T::one(bits) + jet.get(0).norm().powi(k as u32 + 1);
    Ok(jet.get(k).norm() / den)
}

/// `|f′| / (1 + |f|²)`.
pub fn spherical_derivative<T: Real>(jet: &Jet<T>) -> Result<T, AnalysisError> {
    fk_value(jet, 1)
}

/// `ln(|f^{(k)}| / (1 + |f|^{k+1}))` for a jet held in log-scaled form.
pub fn fk_log<T: Real>(jet: &ScaledJet<T>, k: usize) -> Result<T, AnalysisError> {
    need(jet.order(), k)?;
    let bits = jet.log_scale.bits();
    let lf = jet.log_abs(0) * T::from_f64((k + 1) as f64, bits);
    Ok(jet.log_abs(k) - lf.softplus())
}

/// `ln(|f′| / (1 + |f|²))` for a log-scaled jet.
pub fn spherical_derivative_log<T: Real>(jet: &ScaledJet<T>) -> Result<T, AnalysisError> {
    need(jet.order(), 1)?;
    let bits = jet.log_scale.bits();
    let lf = jet.log_abs(0) * T::from_f64(2.0, bits);
    Ok(jet.log_abs(1) - lf.softplus())
}

/// `ln(|f^{(l)}| / |f|^{l+1})` for a log-scaled jet.
pub fn quotient_log<T: Real>(jet: &ScaledJet<T>, l: usize) -> Result<T, AnalysisError> {
    need(jet.order(), l)?;
    let bits = jet.log_scale.bits();
    Ok(jet.log_abs(l) - jet.log_abs(0) * T::from_f64((l + 1) as f64, bits))
}
