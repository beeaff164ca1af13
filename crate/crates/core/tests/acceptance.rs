//! Acceptance criteria for the family f_1..f_6 at double precision and the
//! default grid. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any fails.

use std::process::ExitCode;
use std::time::Instant;

use qnc_core::analysis::{
    lemma2_probe, marty_probe, max_modulus_check, verify_inequality, verify_node_jets, ProbeTarget,
};
use qnc_core::cpoly::ComplexValue;
use qnc_core::forge::{
    construct, root_of_unity, ConstructionConfig, CounterexampleFunction, WideReal, NODE_TOL,
};
use qnc_core::io::FunctionFile;

type C = ComplexValue<f64>;
type F = CounterexampleFunction<f64>;

const ORDERS: std::ops::RangeInclusive<u32> = 1..=6;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

/// Three significant digits of a magnitude of any size.
fn short(w: &WideReal<f64>) -> String {
    if w.is_zero() {
        return "0".into();
    }
    let l10 = w.ln() / std::f64::consts::LN_10;
    let e = l10.floor();
    format!("{:.2}e{}", 10f64.powf(l10 - e), e)
}

fn family() -> Vec<F> {
    let cfg = ConstructionConfig::default();
    ORDERS.map(|n| construct::<f64>(n, &cfg).expect("construction")).collect()
}

fn node_residuals(fs: &[F]) -> Outcome {
    let mut worst = 0.0f64;
    let mut ok = true;
    for f in fs {
        let r = verify_node_jets(f, 1e-8);
        ok &= r.passed;
        worst = r.node_residuals.iter().copied().fold(worst, f64::max);
    }
    outcome(ok, format!("max residual {worst:.3e} (limit 1e-8)"))
}

fn degree_bound(fs: &[F]) -> Outcome {
    let degrees: Vec<String> = fs.iter().map(|f| f.p().degree().to_string()).collect();
    let ok = fs.iter().all(|f| {
        let bound = (4 * f.n() - 1) as usize;
        f.p().degree() <= bound && f.p().centers().len() == bound
    });
    outcome(ok, format!("degrees [{}] against 4n-1", degrees.join(", ")))
}

fn differential_inequality(fs: &[F]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for f in fs {
        let r = verify_inequality(f, 10_000, 1e-12);
        let off = r.metric("max_off_node").expect("metric").to_f64();
        let strong = off <= 1.0 / f.n() as f64 + 1e-12;
        ok &= r.passed && strong;
        parts.push(format!("n={} {}", f.n(), short(&r.max_inequality)));
    }
    outcome(ok, format!("max |f''|/(1+|f|^3): {}", parts.join(", ")))
}

/// `F_2 = |f″|/(1 + |f|³)` at a node, where `f = 0` exactly, is `|f″|`; it
/// must vanish up to the rounding of the node conditions, measured against
/// `|f′| = a·n`.
fn node_annihilation(fs: &[F]) -> Outcome {
    let mut ok = true;
    let mut worst = 0.0f64;
    for f in fs {
        for z in f.nodes() {
            let jet = f.f_scaled_jet(z, 2);
            let value_is_zero = jet.log_abs(0) == f64::NEG_INFINITY;
            let rel = (jet.log_abs(2) - jet.log_abs(1)).exp();
            ok &= value_is_zero && rel <= NODE_TOL;
            worst = worst.max(rel);
        }
    }
    outcome(ok, format!("f = 0 at every node, max |f''|/(a n) {worst:.3e}"))
}

fn max_modulus(fs: &[F]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for f in fs {
        match max_modulus_check(f, 512) {
            Ok(r) => {
                ok &= r.passed;
                parts.push(format!("n={} {:.4}", f.n(), r.max_inequality.to_f64()));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("n={} error {e}", f.n()));
            }
        }
    }
    outcome(ok, format!("interior/boundary quotient: {}", parts.join(", ")))
}

fn marty(fs: &[F]) -> Outcome {
    let r = match marty_probe(fs, &C::new(1.0, 0.0), 0.1) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("probe error {e}")),
    };
    let mut ok = r.verdict == "blowup";
    let mut worst = 0.0f64;
    let mut prev = f64::NEG_INFINITY;
    for (f, m) in fs.iter().zip(&r.measurements) {
        let n = f.n() as f64;
        let rel = (m.ln() - f.ln_scale() - n.ln()).exp_m1().abs();
        worst = worst.max(rel);
        ok &= rel <= 1e-10 && m.ln() > (2.0 * n * n).ln() && m.ln() > prev;
        prev = m.ln();
    }
    let shown: Vec<String> = r.measurements.iter().map(short).collect();
    outcome(
        ok,
        format!("sup f^# [{}], max relative gap to a n {worst:.1e}, verdict {}", shown.join(", "), r.verdict),
    )
}

fn lemma2(fs: &[F]) -> Outcome {
    let tail = &fs[1..];
    let second = match lemma2_probe(tail, &[C::new(0.0, 0.0)], &[2]) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("probe error {e}")),
    };
    let first = match lemma2_probe(tail, &[C::new(1.5, 0.0)], &[1]) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("probe error {e}")),
    };
    let second_ok = tail
        .iter()
        .zip(&second.measurements)
        .all(|(f, v)| v.ln() <= -(f.n() as f64).ln());
    let logs: Vec<f64> = first.measurements.iter().map(|v| v.ln()).collect();
    let decreasing = logs.windows(2).all(|w| w[1] < w[0]);
    let last_ok = logs.last().is_some_and(|&v| v <= 0.1f64.ln());
    let fmt = |r: &qnc_core::analysis::ProbeResult| {
        r.measurements.iter().map(short).collect::<Vec<_>>().join(", ")
    };
    outcome(
        second_ok && decreasing && last_ok,
        format!("|f''/f^3|(0): [{}]; |f'/f^2|(1.5): [{}]", fmt(&second), fmt(&first)),
    )
}

fn closed_form(fs: &[F]) -> Outcome {
    let mut worst = 0.0f64;
    for f in fs {
        let n = f.n();
        for l in 0..n {
            let z = root_of_unity::<f64>(n, l, 53);
            let want = (C::new(1.0, 0.0) / z.clone()).scale(&(-(n as f64 - 1.0) / 2.0));
            let got = f.p().eval_jet(&z, 1).get(1).clone();
            worst = worst.max(got.dist(&want) / want.norm().max(1.0));
        }
    }
    outcome(worst <= 1e-10, format!("max relative error of p'(z_l) {worst:.2e}"))
}

fn trivial_member(fs: &[F]) -> Outcome {
    let f = &fs[0];
    let mut ok = f.p().is_zero() && f.c_hat().is_zero();
    let a = f.a().to_real().unwrap_or(f64::NAN);
    for z in [C::new(0.0, 0.0), C::new(1.5, -0.5), C::new(-1.2, 0.7)] {
        let jet = f.f_jet(&z, 2).expect("small values");
        let want = (z.clone() - C::new(1.0, 0.0)).scale(&a);
        ok &= jet.get(0).dist(&want) <= 1e-15 * a && jet.get(1).dist(&C::new(a, 0.0)) == 0.0 && jet.get(2).is_zero();
    }
    let ineq = verify_inequality(f, 10_000, 1e-12);
    let nodes = verify_node_jets(f, 1e-8);
    let mm = max_modulus_check(f, 512).map(|r| r.passed).unwrap_or(false);
    let zero = ineq.max_inequality.is_zero();
    ok &= ineq.passed && nodes.passed && mm && zero;
    outcome(ok, format!("a = {a}, p = 0, c = 0, max inequality {}", ineq.max_inequality))
}

fn determinism(fs: &[F]) -> Outcome {
    let cfg = ConstructionConfig::default();
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));
    let mut ok = true;
    for f in fs {
        let again = construct::<f64>(f.n(), &cfg).expect("construction");
        let first = FunctionFile::from_function(f).to_json();
        let second = FunctionFile::from_function(&again).to_json();
        ok &= first == second;
        let path = dir.join(format!("acceptance_f{}.json", f.n()));
        FunctionFile::from_function(f).save(&path).expect("save");
        let loaded = FunctionFile::load(&path).expect("load");
        ok &= loaded.to_json() == first;
        ok &= loaded.to_function::<f64>().ok().as_ref() == Some(f);
    }
    outcome(ok, "repeated construction byte-identical; save/load/save byte-identical; load reproduces the record")
}

fn main() -> ExitCode {
    let start = Instant::now();
    let fs = family();
    let criteria: [(&str, fn(&[F]) -> Outcome); 10] = [
        ("construction residuals", node_residuals),
        ("degree bound", degree_bound),
        ("differential inequality", differential_inequality),
        ("node annihilation", node_annihilation),
        ("max-modulus", max_modulus),
        ("Marty blow-up", marty),
        ("Lemma-2 decay", lemma2),
        ("closed-form p'", closed_form),
        ("trivial member", trivial_member),
        ("determinism and round-trip", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = check(&fs);
        if !r.passed {
            failures += 1;
        }
        println!(
            "criterion {:>2} {:<28} {} ({:.2}s) {}",
            i + 1,
            name,
            if r.passed { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            r.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        criteria.len() - failures,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
