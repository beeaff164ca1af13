//! Precision chosen at run time: double when 53 bits are requested,
//! multiprecision otherwise.

use serde::{Deserialize, Serialize};

use crate::analysis::{
    self, marty_probe, AnalysisError, GridSpec, ProbeTarget, Quantity, VerificationReport,
};
use crate::cpoly::{ComplexValue, Jet, Mp, DOUBLE_BITS};
use crate::forge::{construct, ConstructionConfig, CounterexampleFunction, ForgeError, WideReal, NODE_TOL};
use crate::io::{FunctionFile, IoError};

#[derive(Clone, Debug, PartialEq)]
pub enum AnyFunction {
    Double(CounterexampleFunction<f64>),
    Multi(CounterexampleFunction<Mp>),
}

macro_rules! dispatch {
    ($self:expr, $f:ident => $body:expr) => {
        match $self {
            AnyFunction::Double($f) => $body,
            AnyFunction::Multi($f) => $body,
        }
    };
}

impl AnyFunction {
    pub fn construct(n: u32, config: &ConstructionConfig) -> Result<Self, ForgeError> {
        if config.precision_bits == DOUBLE_BITS {
            construct::<f64>(n, config).map(AnyFunction::Double)
        } else {
            construct::<Mp>(n, config).map(AnyFunction::Multi)
        }
    }

    pub fn from_file(file: &FunctionFile) -> Result<Self, IoError> {
        if file.precision_bits == DOUBLE_BITS {
            file.to_function::<f64>().map(AnyFunction::Double)
        } else {
            file.to_function::<Mp>().map(AnyFunction::Multi)
        }
    }

    pub fn to_file(&self) -> FunctionFile {
        dispatch!(self, f => FunctionFile::from_function(f))
    }

    pub fn n(&self) -> u32 {
        dispatch!(self, f => f.n())
    }

    pub fn precision_bits(&self) -> u32 {
        dispatch!(self, f => f.precision_bits())
    }

    pub fn config(&self) -> ConstructionConfig {
        dispatch!(self, f => *f.config())
    }

    pub fn degree(&self) -> usize {
        dispatch!(self, f => f.p().degree())
    }

    pub fn a(&self) -> WideReal<f64> {
        dispatch!(self, f => f.a().to_wide_f64())
    }

    pub fn c_hat(&self) -> WideReal<f64> {
        dispatch!(self, f => f.c_hat().to_wide_f64())
    }

    pub fn m_hat(&self) -> WideReal<f64> {
        dispatch!(self, f => f.m_hat().to_wide_f64())
    }

    pub fn nodes(&self) -> Vec<ComplexValue<f64>> {
        dispatch!(self, f => f.to_f64_nodes())
    }

    /// Monomial coefficients of `p`, rounded to double.
    pub fn p_monomial(&self) -> Vec<ComplexValue<f64>> {
        dispatch!(self, f => f.p().to_monomial().iter().map(ComplexValue::to_f64).collect())
    }

    /// `p(z)` rounded to double.
    pub fn p_eval(&self, z: &ComplexValue<f64>) -> ComplexValue<f64> {
        dispatch!(self, f => f.p().eval(&ComplexValue::lift(z, f.precision_bits())).to_f64())
    }

    /// Jet of `f` at `z`, rounded to double; `Overflow` when it does not fit.
    pub fn f_jet(&self, z: &ComplexValue<f64>, order: usize) -> Result<Jet<f64>, ForgeError> {
        dispatch!(self, f => {
            let z = ComplexValue::lift(z, f.precision_bits());
            let z = f.node_index(&z).map_or(z, |l| f.nodes()[l].clone());
            let jet = f.f_jet(&z, order)?.to_f64();
            match jet.values().iter().find(|v| !v.is_finite()) {
                Some(v) => Err(ForgeError::Overflow { log_magnitude: v.norm().ln() }),
                None => Ok(jet),
            }
        })
    }

    pub fn node_residual(&self, l: usize) -> f64 {
        dispatch!(self, f => f.node_residual(l))
    }

    pub fn validate(&self) -> Result<(), ForgeError> {
        dispatch!(self, f => f.validate())
    }

    pub fn verify_inequality(&self, samples: usize, tol: f64, seed: u64) -> VerificationReport {
        dispatch!(self, f => analysis::verify_inequality_seeded(f, samples, tol, seed))
    }

    pub fn verify_node_jets(&self, tol: f64) -> VerificationReport {
        dispatch!(self, f => analysis::verify_node_jets(f, tol))
    }

    pub fn max_modulus_check(&self, resolution: u32) -> Result<VerificationReport, AnalysisError> {
        dispatch!(self, f => analysis::max_modulus_check(f, resolution))
    }

    pub fn pointwise_log(&self, what: Quantity, z: &ComplexValue<f64>) -> Option<f64> {
        dispatch!(self, f => analysis::pointwise_log(f, what, z))
    }

    pub fn grid_log_values(&self, what: Quantity, grid: &GridSpec) -> Vec<(ComplexValue<f64>, f64)> {
        dispatch!(self, f => analysis::grid_log_values(f, what, grid))
    }
}

impl ProbeTarget for AnyFunction {
    fn order(&self) -> u32 {
        self.n()
    }

    fn ln_scale(&self) -> f64 {
        dispatch!(self, f => f.ln_scale())
    }

    fn max_log_spherical(
        &self,
        center: &ComplexValue<f64>,
        offsets: &[ComplexValue<f64>],
        radius: f64,
    ) -> Result<(WideReal<f64>, ComplexValue<f64>), AnalysisError> {
        dispatch!(self, f => f.max_log_spherical(center, offsets, radius))
    }

    fn log_quotient(&self, z: &ComplexValue<f64>, l: usize) -> Result<WideReal<f64>, AnalysisError> {
        dispatch!(self, f => f.log_quotient(z, l))
    }
}

/// Settings shared by the full-pipeline runs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepOptions {
    pub construction: ConstructionConfig,
    pub samples: usize,
    pub tol: f64,
    pub resolution: u32,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            construction: ConstructionConfig::default(),
            samples: 10_000,
            tol: 1e-12,
            resolution: 512,
        }
    }
}

/// One member of a sweep. Failed constructions keep `n` and the error.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: u32,
    pub degree: Option<usize>,
    pub c_hat: Option<WideReal<f64>>,
    pub a: Option<WideReal<f64>>,
    pub max_inequality: Option<WideReal<f64>>,
    pub marty_measurement: Option<WideReal<f64>>,
    pub passed: bool,
    pub error: Option<String>,
}

/// Outcome of [`sweep`]: the per-member rows, the Marty sequence over the
/// successfully built members, and the overall verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub marty_verdict: Option<String>,
    pub passed: bool,
}

/// Constructs and verifies each member of `range`, measuring the Marty
/// quantity at centre 1 with radius 0.1.
pub fn sweep(range: std::ops::RangeInclusive<u32>, options: &SweepOptions) -> SweepOutcome {
    let center = ComplexValue::new(1.0, 0.0);
    let mut rows = Vec::new();
    let mut built = Vec::new();
    for n in range {
        let f = match AnyFunction::construct(n, &options.construction) {
            Ok(f) => f,
            Err(e) => {
                rows.push(SweepRow {
                    n,
                    degree: None,
                    c_hat: None,
                    a: None,
                    max_inequality: None,
                    marty_measurement: None,
                    passed: false,
                    error: Some(e.to_string()),
                });
                continue;
            }
        };
        let ineq = f.verify_inequality(options.samples, options.tol, options.construction.seed);
        let nodes = f.verify_node_jets(NODE_TOL);
        let mm = f.max_modulus_check(options.resolution);
        let marty = marty_probe(std::slice::from_ref(&f), &center, 0.1);
        let mut error = None;
        let mm_ok = match &mm {
            Ok(r) => r.passed,
            Err(e) => {
                error = Some(e.to_string());
                false
            }
        };
        rows.push(SweepRow {
            n,
            degree: Some(f.degree()),
            c_hat: Some(f.c_hat()),
            a: Some(f.a()),
            max_inequality: Some(ineq.max_inequality.clone()),
            marty_measurement: marty.as_ref().ok().map(|r| r.measurements[0].clone()),
            passed: ineq.passed && nodes.passed && mm_ok && marty.as_ref().is_ok_and(|r| r.is_positive()),
            error,
        });
        built.push(f);
    }
    let marty_verdict = (!built.is_empty())
        .then(|| marty_probe(&built, &center, 0.1).ok().map(|r| r.verdict))
        .flatten();
    let passed = !rows.is_empty()
        && rows.iter().all(|r| r.passed)
        && marty_verdict.as_deref() == Some("blowup");
    SweepOutcome {
        rows,
        marty_verdict,
        passed,
    }
}
