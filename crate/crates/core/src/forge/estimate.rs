//! Grid estimates of `c_n = max |h″/h³|` on the closed disk of radius 2 and of
//! `m_n = min |h|` on the compact set `K_n`, and the resulting scale `a_n`.

use crate::cpoly::{ComplexValue, NewtonPolynomial, Real};
use crate::search::{golden_max, periodic_peaks};

use super::eval::{log_abs_h, ratio_log_abs_unchecked};
use super::wide::WideReal;
use super::ForgeError;

pub const MIN_GRID: u32 = 64;
pub const MAX_GRID: u32 = 1 << 20;
/// Radius of the disk the family lives on.
pub const DISK_RADIUS: f64 = 2.0;
/// Angular tolerance of the golden-section refinement.
pub const ANGLE_TOL: f64 = 1e-8;
/// Grid peaks refined per circle search.
const REFINED_PEAKS: usize = 4;

/// Maximum of `ln|h″/h³|` on the circle `|z| = radius`: `M·max(1, n)`
/// equispaced angles, then golden-section refinement around the best peaks.
/// Returns `(ln max, angle)`.
pub fn circle_max_log_ratio<T: Real>(
    n: u32,
    p: &NewtonPolynomial<T>,
    center: &ComplexValue<T>,
    radius: f64,
    samples: usize,
) -> (T, T) {
    let bits = p.bits();
    let r = T::from_f64(radius, bits);
    let step = T::from_f64(2.0, bits) * T::pi(bits) / T::from_f64(samples as f64, bits);
    let at = |theta: &T| {
        let z = center.clone() + ComplexValue::from_polar(r.clone(), theta.clone());
        ratio_log_abs_unchecked(n, p, &z)
    };
    let values: Vec<T> = (0..samples)
        .map(|k| at(&(step.clone() * T::from_f64(k as f64, bits))))
        .collect();
    let mut best_theta = T::zero(bits);
    let mut best = T::from_f64(f64::NEG_INFINITY, bits);
    for k in periodic_peaks(&values, REFINED_PEAKS) {
        let mid = step.clone() * T::from_f64(k as f64, bits);
        if values[k] > best {
            best = values[k].clone();
            best_theta = mid.clone();
        }
        if !values[k].is_finite() {
            continue;
        }
        let lo = mid.clone() - step.clone();
        let hi = mid + step.clone();
        let (theta, v) = golden_max(at, lo, hi, ANGLE_TOL);
        if v > best {
            best = v;
            best_theta = theta;
        }
    }
    (best, best_theta)
}

/// `ĉ_n`: by the maximum principle the entire function `h″/h³` attains its
/// maximum modulus over the closed disk on the boundary circle `|z| = 2`.
pub fn estimate_c<T: Real>(n: u32, p: &NewtonPolynomial<T>, grid: u32) -> Result<WideReal<T>, ForgeError> {
    if grid < MIN_GRID {
        return Err(ForgeError::GridTooCoarse { grid });
    }
    let samples = grid as usize * n.max(1) as usize;
    let origin = ComplexValue::zero(p.bits());
    let (ln_max, _) = circle_max_log_ratio(n, p, &origin, DISK_RADIUS, samples);
    Ok(WideReal::from_ln(ln_max))
}

/// Radii of the polar grid on `K_n = {|z| ≤ 2 − 1/n, ||z| − 1| ≥ 1/n}`:
/// `count` equispaced radii in `[0, 2 − 1/n]` plus the boundary radii of
/// `K_n`, keeping only those inside it.
pub fn k_region_radii(n: u32, count: usize) -> Vec<f64> {
    let inv = 1.0 / n as f64;
    let outer = DISK_RADIUS - inv;
    let inside = |r: f64| r >= 0.0 && r <= outer && (r - 1.0).abs() >= inv;
    let mut radii: Vec<f64> = (0..count)
        .map(|i| outer * i as f64 / (count.max(2) - 1) as f64)
        .chain([1.0 - inv, 1.0 + inv, outer])
        .filter(|&r| inside(r))
        .collect();
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    radii
}

/// `m̂_n`: half the minimum of `|h_n|` over a polar grid on `K_n`
/// (`M·max(1, n)` angles by `M/8` radii).
pub fn estimate_m<T: Real>(n: u32, p: &NewtonPolynomial<T>, grid: u32) -> Result<WideReal<T>, ForgeError> {
    if grid < MIN_GRID {
        return Err(ForgeError::GridTooCoarse { grid });
    }
    let bits = p.bits();
    let radii = k_region_radii(n, (grid / 8) as usize);
    if radii.is_empty() {
        return Err(ForgeError::EmptyRegion);
    }
    let angles = grid as usize * n.max(1) as usize;
    let step = T::from_f64(2.0, bits) * T::pi(bits) / T::from_f64(angles as f64, bits);
    let mut best = T::from_f64(f64::INFINITY, bits);
    for &r in &radii {
        let rt = T::from_f64(r, bits);
        let count = if r == 0.0 { 1 } else { angles };
        for k in 0..count {
            let z = ComplexValue::from_polar(rt.clone(), step.clone() * T::from_f64(k as f64, bits));
            let v = log_abs_h(n, p, &z);
            if v < best {
                best = v;
            }
        }
    }
    Ok(WideReal::from_ln(best).half())
}

/// `a = max(√(2n·ĉ), 2n/m̂, 1)`.
///
/// With this choice `ĉ/a² ≤ 1/(2n)` and `|f| = a|h| ≥ 4n` wherever
/// `|h| ≥ m̂·2` on the grid of `K_n`.
pub fn choose_a<T: Real>(n: u32, c_hat: &WideReal<T>, m_hat: &WideReal<T>) -> Result<WideReal<T>, ForgeError> {
    if m_hat.is_zero() {
        return Err(ForgeError::NonPositiveM);
    }
    let bits = c_hat.bits();
    let two_n = T::from_f64(2.0 * n as f64, bits);
    if let (Some(c), Some(m)) = (c_hat.to_real(), m_hat.to_real()) {
        let a = (two_n.clone() * c).sqrt().max(two_n.clone() / m).max(T::one(bits));
        if a.is_finite() {
            if let Some(w) = WideReal::from_real(a) {
                if w.to_real().is_some() {
                    return Ok(w);
                }
            }
        }
    }
    let ln_two_n = two_n.ln();
    let half = T::from_f64(0.5, bits);
    let from_c = (ln_two_n.clone() + c_hat.ln()) * half;
    let from_m = ln_two_n - m_hat.ln();
    let ln_a = from_c.max(from_m).max(T::zero(bits));
    // Absorb the rounding of exp/ln so that a² ≥ 2n·ĉ still holds.
    let slack = 1.0 + 16.0 * T::epsilon(bits).to_f64();
    Ok(WideReal::from_ln(ln_a).scale_mantissa(slack))
}
