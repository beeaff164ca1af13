//! Whole-function checks: the differential inequality, the node jets, and
//! the maximum-modulus behaviour of `h″/h³`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cpoly::{ComplexValue, Real};
use crate::forge::{
    circle_max_log_ratio, ratio_log_abs, CounterexampleFunction, ForgeError, WideReal, DEFAULT_SEED,
    DISK_RADIUS, NODE_EXCLUSION, NODE_TOL,
};

use super::functional::fk_value;
use super::grid::random_disk_points;
use super::report::VerificationReport;
use super::AnalysisError;

/// Random points drawn around each node by [`verify_inequality`].
pub const NEAR_NODE_SAMPLES: usize = 1000;
/// Radius of the near-node sampling disks.
pub const NEAR_NODE_RADIUS: f64 = 1e-2;
/// Relative slack of the interior-versus-boundary comparison.
pub const MAX_MODULUS_SLACK: f64 = 1e-6;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Branch {
    Direct,
    Bound,
    NodeBound,
}

/// `ln|f″|/(1 + |f|³)` at an off-node point, falling back to the upper bound
/// `|f″/f³| = |h″/h³|/a²` when the direct form leaves the float range.
fn off_node_log_value<T: Real>(
    f: &CounterexampleFunction<T>,
    z: &ComplexValue<T>,
    node_bounds: &mut [Option<T>],
) -> (T, Branch) {
    if let Ok(jet) = f.f_jet(z, 2) {
        if let Ok(v) = fk_value(&jet, 2) {
            let bits = v.bits();
            let den_finite = (T::one(bits) + jet.get(0).norm().powi(3)).is_finite();
            if v.is_finite() && den_finite {
                return (v.ln(), Branch::Direct);
            }
        }
    }
    let two_ln_a = f.ln_a() * T::from_f64(2.0, f.precision_bits());
    match ratio_log_abs(f.n(), f.p(), z) {
        Ok(r) => (r - two_ln_a, Branch::Bound),
        Err(ForgeError::NearNode { index }) => {
            let slot = &mut node_bounds[index as usize];
            let bound = slot.get_or_insert_with(|| node_circle_bound(f, index as usize)).clone();
            (bound - two_ln_a, Branch::NodeBound)
        }
        Err(e) => unreachable!("ratio_log_abs only fails near nodes: {e}"),
    }
}

/// `ln max |h″/h³|` on the circle `|z − z_ℓ| = ε_node`, which bounds the ratio
/// on the whole small disk since `h″/h³` is entire.
pub fn node_circle_bound<T: Real>(f: &CounterexampleFunction<T>, l: usize) -> T {
    let samples = f.config().grid as usize * f.n().max(1) as usize;
    circle_max_log_ratio(f.n(), f.p(), &f.nodes()[l], NODE_EXCLUSION, samples).0
}

/// [`verify_inequality_seeded`] with the default seed.
pub fn verify_inequality<T: Real>(f: &CounterexampleFunction<T>, samples: usize, tol: f64) -> VerificationReport {
    verify_inequality_seeded(f, samples, tol, DEFAULT_SEED)
}

/// Evaluates `|f″|/(1 + |f|³)` at `samples` uniform points of `|z| < 2`,
/// [`NEAR_NODE_SAMPLES`] points within [`NEAR_NODE_RADIUS`] of each node, and
/// the nodes themselves.
///
/// At a node `f = 0` exactly and `f″ = a·h″`, where `h″` is zero by
/// construction. The computed `h″` is rounding noise of relative size
/// `node_residual`, which `a` amplifies without bound, so a node whose
/// residual is within [`NODE_TOL`] contributes exactly 0; the amplified raw
/// value is kept in the `node_raw_max` metric.
pub fn verify_inequality_seeded<T: Real>(
    f: &CounterexampleFunction<T>,
    samples: usize,
    tol: f64,
    seed: u64,
) -> VerificationReport {
    let bits = f.precision_bits();
    let mut report = VerificationReport::new("inequality");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let origin = ComplexValue::new(0.0, 0.0);
    let mut points = random_disk_points(&mut rng, &origin, DISK_RADIUS, samples);
    for node in f.to_f64_nodes() {
        points.extend(random_disk_points(&mut rng, &node, NEAR_NODE_RADIUS, NEAR_NODE_SAMPLES));
    }

    let neg_inf = T::from_f64(f64::NEG_INFINITY, bits);
    let mut node_bounds: Vec<Option<T>> = vec![None; f.nodes().len()];
    let mut counts = [0usize; 3];
    let mut best = neg_inf.clone();
    let mut best_point = origin;
    for z64 in &points {
        let z = ComplexValue::<T>::lift(z64, bits);
        let (v, branch) = if f.node_index(&z).is_some() {
            // Sampled exactly onto a node; treated like the node pass below.
            (neg_inf.clone(), Branch::Direct)
        } else {
            off_node_log_value(f, &z, &mut node_bounds)
        };
        counts[branch as usize] += 1;
        if v > best {
            best = v;
            best_point = z64.clone();
        }
    }
    let off_node = best.clone();

    let mut node_raw = neg_inf.clone();
    let mut node_max = neg_inf;
    let ln_a = f.ln_a();
    for (l, node) in f.nodes().iter().enumerate() {
        let residual = f.node_residual(l);
        report.node_residuals.push(residual);
        let jet = f.h_scaled_jet(node, 2);
        let raw = ln_a.clone() + jet.log_abs(2);
        if raw > node_raw {
            node_raw = raw.clone();
        }
        let v = if residual <= NODE_TOL {
            T::from_f64(f64::NEG_INFINITY, bits)
        } else {
            raw
        };
        if v > node_max {
            node_max = v.clone();
        }
        if v > best {
            best = v;
            best_point = node.to_f64();
        }
    }

    let max = WideReal::from_ln(best).to_wide_f64();
    let residuals_ok = report.node_residuals.iter().all(|&r| r <= NODE_TOL);
    report.passed = max.ln() <= (1.0 + tol).ln() && residuals_ok;
    report.max_inequality = max;
    report.worst_point = best_point;
    report.set_metric("max_off_node", WideReal::from_ln(off_node).to_wide_f64());
    report.set_metric("max_at_nodes", WideReal::from_ln(node_max).to_wide_f64());
    report.set_metric("node_raw_max", WideReal::from_ln(node_raw).to_wide_f64());
    let count = |k: usize| WideReal::from_real(k as f64).unwrap();
    report.set_metric("points_direct", count(counts[Branch::Direct as usize]));
    report.set_metric("points_bound", count(counts[Branch::Bound as usize]));
    report.set_metric("points_node_bound", count(counts[Branch::NodeBound as usize]));
    report.set_metric("points_nodes", count(f.nodes().len()));
    report.note(&format!(
        "{} random points in |z| < 2, {} per node within {:e}, {} nodes",
        samples,
        NEAR_NODE_SAMPLES,
        NEAR_NODE_RADIUS,
        f.nodes().len()
    ));
    report.note(&format!(
        "node values count as 0 when the node residual is <= {NODE_TOL:e}; overflowed points use |h''/h^3|/a^2"
    ));
    report
}

/// Residual `max(|h″|, |h‴|, |h⁗|)/max(1, |h′|)` at every node.
pub fn verify_node_jets<T: Real>(f: &CounterexampleFunction<T>, tol: f64) -> VerificationReport {
    let mut report = VerificationReport::new("node_jets");
    let mut worst = (f64::NEG_INFINITY, 0usize);
    for l in 0..f.nodes().len() {
        let r = f.node_residual(l);
        if r > worst.0 {
            worst = (r, l);
        }
        report.node_residuals.push(r);
    }
    report.passed = report.node_residuals.iter().all(|&r| r <= tol);
    report.worst_point = f.nodes()[worst.1].to_f64();
    if let Some(w) = WideReal::from_real(worst.0.max(0.0)) {
        report.set_metric("max_residual", w);
    }
    report.note(&format!("tolerance {tol:e}; max_inequality is not evaluated by this check"));
    report
}

/// Radii, in units of `ε_node`, of the inner and outer rings sampled around
/// each node.
const NODE_RINGS: (f64, f64) = (1.5, 3.0);

/// Maximum-modulus test of `h″/h³`, globally and around every node.
///
/// Globally, the maximum over an interior polar grid (plus the node rings)
/// must not exceed the refined maximum on `|z| = 2`. Locally, the maximum on
/// the ring of radius `1.5ε_node` around a node must not exceed the one on the
/// ring of radius `3ε_node`; a pole at the node, left by a missed node
/// condition, breaks this even when the global comparison cannot see it.
///
/// `max_inequality` is the larger of the two quotients; the check passes when
/// it is at most `1 + 10⁻⁶`.
pub fn max_modulus_check<T: Real>(
    f: &CounterexampleFunction<T>,
    resolution: u32,
) -> Result<VerificationReport, AnalysisError> {
    if resolution < 64 {
        return Err(AnalysisError::InvalidResolution(resolution));
    }
    let n = f.n();
    let bits = f.precision_bits();
    let mut report = VerificationReport::new("max_modulus");
    let angles = resolution as usize * n.max(1) as usize;
    let radii = (resolution / 4) as usize;
    let tau = T::from_f64(2.0, bits) * T::pi(bits);
    let neg_inf = T::from_f64(f64::NEG_INFINITY, bits);

    let mut best = neg_inf.clone();
    let mut best_point = ComplexValue::new(0.0, 0.0);
    let mut count = 0usize;
    let mut visit = |z: ComplexValue<T>| -> T {
        match ratio_log_abs(n, f.p(), &z) {
            Ok(v) => {
                count += 1;
                if v > best {
                    best = v.clone();
                    best_point = z.to_f64();
                }
                v
            }
            Err(_) => T::from_f64(f64::NEG_INFINITY, bits),
        }
    };
    visit(ComplexValue::zero(bits));
    for i in 1..radii {
        let r = T::from_f64(DISK_RADIUS * i as f64 / radii as f64, bits);
        for k in 0..angles {
            let theta = tau.clone() * T::from_f64(k as f64 / angles as f64, bits);
            visit(ComplexValue::from_polar(r.clone(), theta));
        }
    }
    let mut local = neg_inf.clone();
    let mut local_point = ComplexValue::new(0.0, 0.0);
    for node in f.nodes() {
        let mut ring = |scale: f64| {
            let rho = T::from_f64(scale * NODE_EXCLUSION, bits);
            (0..resolution).fold(neg_inf.clone(), |acc, k| {
                let theta = tau.clone() * T::from_f64(k as f64 / resolution as f64, bits);
                acc.max(visit(node.clone() + ComplexValue::from_polar(rho.clone(), theta)))
            })
        };
        let inner = ring(NODE_RINGS.0);
        let outer = ring(NODE_RINGS.1);
        if outer.to_f64() > f64::NEG_INFINITY && inner.clone() - outer.clone() > local {
            local = inner - outer;
            local_point = node.to_f64();
        }
    }

    let origin = ComplexValue::zero(bits);
    let (boundary, _) = circle_max_log_ratio(n, f.p(), &origin, DISK_RADIUS, angles);
    let interior = best;
    let global = if boundary.to_f64() == f64::NEG_INFINITY {
        // h″ ≡ 0: the interior can only be -inf as well.
        interior.clone()
    } else {
        interior.clone() - boundary.clone()
    };
    let (worst, worst_point) = if local > global {
        (local.clone(), local_point)
    } else {
        (global.clone(), best_point)
    };
    let quotient = WideReal::from_ln(worst.to_f64());
    report.passed = quotient.ln() <= MAX_MODULUS_SLACK.ln_1p();
    report.max_inequality = quotient;
    report.worst_point = worst_point;
    report.set_metric("interior_max", WideReal::from_ln(interior).to_wide_f64());
    report.set_metric("boundary_max", WideReal::from_ln(boundary).to_wide_f64());
    report.set_metric("global_quotient", WideReal::from_ln(global.to_f64()));
    report.set_metric("node_ring_quotient", WideReal::from_ln(local.to_f64()));
    report.set_metric("interior_points", WideReal::from_real(count as f64).unwrap());
    report.note(&format!(
        "interior grid {radii} radii x {angles} angles; node rings at {}x and {}x {NODE_EXCLUSION:e}",
        NODE_RINGS.0, NODE_RINGS.1
    ));
    report.note("max_inequality = max(interior/boundary, inner ring/outer ring)");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpoly::{hermite_interpolate, HermiteSpec, Jet, NewtonPolynomial};
    use crate::forge::{construct, node_conditions, roots_of_unity, ConstructionConfig};

    type C = ComplexValue<f64>;

    fn build(n: u32) -> CounterexampleFunction<f64> {
        construct(n, &ConstructionConfig::default().with_grid(256)).unwrap()
    }

    /// `p` meeting the node conditions except that `p′(1)` is off by `delta`,
    /// which leaves `h″(1) = 2n·delta` and a pole of `h″/h³` at 1.
    fn p_with_broken_node(n: u32, delta: f64) -> NewtonPolynomial<f64> {
        let nodes = roots_of_unity::<f64>(n, 53);
        let jets = (0..n)
            .map(|l| {
                let c = node_conditions::<f64>(n, l, 53).unwrap();
                let p1 = if l == 0 { c.p1 + C::new(delta, 0.0) } else { c.p1 };
                Jet::new(vec![C::new(0.0, 0.0), p1, c.p2, c.p3])
            })
            .collect();
        hermite_interpolate(&HermiteSpec::new(nodes, jets).unwrap())
    }

    #[test]
    fn trivial_member_has_zero_inequality() {
        let f = build(1);
        let r = verify_inequality(&f, 500, 1e-12);
        assert!(r.passed);
        assert!(r.max_inequality.is_zero());
        assert_eq!(r.node_residuals, vec![0.0]);
        assert!(max_modulus_check(&f, 64).unwrap().passed);
    }

    #[test]
    fn second_member_passes_every_check() {
        let f = build(2);
        let r = verify_inequality(&f, 2000, 1e-12);
        assert!(r.passed, "{r:?}");
        assert!(r.max_inequality.to_f64() <= 0.5 + 1e-12);
        assert!(r.metric("max_at_nodes").unwrap().is_zero());
        assert!(verify_node_jets(&f, 1e-8).passed);
        let m = max_modulus_check(&f, 128).unwrap();
        assert!(m.passed, "{m:?}");
        assert!(m.max_inequality.to_f64() <= 1.0);
    }

    #[test]
    fn large_members_use_the_bound_branch() {
        let f = build(5);
        let r = verify_inequality(&f, 500, 1e-12);
        assert!(r.passed, "{r:?}");
        assert!(r.metric("points_bound").unwrap().to_f64() > 0.0);
        assert!(r.metric("points_node_bound").unwrap().to_f64() > 0.0);
        assert!(r.max_inequality.to_f64() <= 0.2 + 1e-12);
    }

    #[test]
    fn perturbed_coefficient_fails_node_jets() {
        let f = build(2);
        let bad = f.with_p(f.p().map_coeffs(|i, c| if i == 3 { c.clone() + C::new(1e-2, 0.0) } else { c.clone() }));
        let r = verify_node_jets(&bad, 1e-8);
        assert!(!r.passed);
        assert!(r.node_residuals.iter().any(|&x| x > 1e-8));
        assert!(!verify_inequality(&bad, 100, 1e-12).passed);
    }

    #[test]
    fn broken_node_condition_breaks_max_modulus() {
        let f = build(2);
        let bad = f.with_p(p_with_broken_node(2, 0.5));
        let r = max_modulus_check(&bad, 128).unwrap();
        assert!(!r.passed, "{r:?}");
        assert!(r.max_inequality.to_f64() > 1.0);
        assert!(r.worst_point.dist(&C::new(1.0, 0.0)) < 0.01);
    }

    #[test]
    fn max_modulus_needs_resolution() {
        assert_eq!(
            max_modulus_check(&build(1), 63).unwrap_err(),
            AnalysisError::InvalidResolution(63)
        );
    }

    #[test]
    fn seeds_change_samples_not_verdicts() {
        let f = build(3);
        let a = verify_inequality_seeded(&f, 300, 1e-12, 1);
        let b = verify_inequality_seeded(&f, 300, 1e-12, 1);
        let c = verify_inequality_seeded(&f, 300, 1e-12, 2);
        assert_eq!(a, b);
        assert!(a.passed && c.passed);
        assert_ne!(a.worst_point, c.worst_point);
    }
}
