use serde::{Deserialize, Serialize};

use crate::cpoly::{ComplexValue, Jet, NewtonPolynomial, Real, DOUBLE_BITS};
use crate::cpoly::real::{MAX_BITS, MIN_BITS};

use super::conditions::{build_p, nearest_node, roots_of_unity};
use super::estimate::{choose_a, estimate_c, estimate_m, MAX_GRID, MIN_GRID};
use super::eval::{h_scaled_jet, ScaledJet};
use super::wide::WideReal;
use super::ForgeError;

pub const DEFAULT_GRID: u32 = 1024;
/// Largest order accepted by [`construct`].
pub const MAX_ORDER: u32 = 1 << 16;
pub const DEFAULT_SEED: u64 = 0x5eed_2013;
/// Allowed relative size of `h″, h‴, h⁗` at a node (relative to `max(1, |h′|)`).
pub const NODE_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionConfig {
    pub precision_bits: u32,
    pub grid: u32,
    pub seed: u64,
}

impl Default for ConstructionConfig {
    fn default() -> Self {
        ConstructionConfig {
            precision_bits: DOUBLE_BITS,
            grid: DEFAULT_GRID,
            seed: DEFAULT_SEED,
        }
    }
}

impl ConstructionConfig {
    pub fn with_grid(mut self, grid: u32) -> Self {
        self.grid = grid;
        self
    }

    pub fn with_precision(mut self, bits: u32) -> Self {
        self.precision_bits = bits;
        self
    }
}

/// `f_n = a·(zⁿ − 1)·e^{p_n(z)}` together with the estimates that fixed `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct CounterexampleFunction<T = f64> {
    n: u32,
    p: NewtonPolynomial<T>,
    a: WideReal<T>,
    c_hat: WideReal<T>,
    m_hat: WideReal<T>,
    config: ConstructionConfig,
    nodes: Vec<ComplexValue<T>>,
}

impl<T: Real> CounterexampleFunction<T> {
    /// Assembles a record, checking its shape but not its analytic invariants
    /// (see [`CounterexampleFunction::validate`]).
    pub fn from_parts(
        n: u32,
        p: NewtonPolynomial<T>,
        a: WideReal<T>,
        c_hat: WideReal<T>,
        m_hat: WideReal<T>,
        config: ConstructionConfig,
    ) -> Result<Self, ForgeError> {
        if n == 0 {
            return Err(ForgeError::InvalidOrder);
        }
        check_precision::<T>(config.precision_bits)?;
        if p.bits() != T::zero(config.precision_bits).bits() {
            return Err(ForgeError::InvalidPrecision { bits: p.bits() });
        }
        check_grid(config.grid)?;
        let want = 4 * n as usize - 1;
        if p.centers().len() != want {
            return Err(ForgeError::Invariant(format!(
                "{} interpolation centers, expected 4n - 1 = {want}",
                p.centers().len()
            )));
        }
        if a.is_zero() {
            return Err(ForgeError::Invariant("a must be positive".into()));
        }
        if m_hat.is_zero() {
            return Err(ForgeError::NonPositiveM);
        }
        let nodes = roots_of_unity(n, config.precision_bits);
        Ok(CounterexampleFunction {
            n,
            p,
            a,
            c_hat,
            m_hat,
            config,
            nodes,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> &NewtonPolynomial<T> {
        &self.p
    }

    pub fn a(&self) -> &WideReal<T> {
        &self.a
    }

    pub fn c_hat(&self) -> &WideReal<T> {
        &self.c_hat
    }

    pub fn m_hat(&self) -> &WideReal<T> {
        &self.m_hat
    }

    pub fn config(&self) -> &ConstructionConfig {
        &self.config
    }

    pub fn precision_bits(&self) -> u32 {
        self.config.precision_bits
    }

    pub fn nodes(&self) -> &[ComplexValue<T>] {
        &self.nodes
    }

    pub fn ln_a(&self) -> T {
        self.a.ln()
    }

    /// Index of the node equal to `z`, if any.
    pub fn node_index(&self, z: &ComplexValue<T>) -> Option<usize> {
        let (l, _, _) = nearest_node(self.n, z);
        let l = l as usize;
        (self.nodes[l] == *z).then_some(l)
    }

    /// Replaces the polynomial, keeping every other field. Meant for
    /// mutation tests of the verifiers.
    pub fn with_p(&self, p: NewtonPolynomial<T>) -> Self {
        CounterexampleFunction { p, ..self.clone() }
    }

    /// Log-scaled jet of `h_n`, node-aware.
    pub fn h_scaled_jet(&self, z: &ComplexValue<T>, order: usize) -> ScaledJet<T> {
        let at_node = self.node_index(z).is_some();
        h_scaled_jet(self.n, &self.p, z, order, at_node)
    }

    /// Log-scaled jet of `f_n = a·h_n`; never overflows.
    pub fn f_scaled_jet(&self, z: &ComplexValue<T>, order: usize) -> ScaledJet<T> {
        self.h_scaled_jet(z, order).rescale(self.ln_a())
    }

    /// Jet of `f_n`, or `Overflow` when an entry leaves the float range.
    pub fn f_jet(&self, z: &ComplexValue<T>, order: usize) -> Result<Jet<T>, ForgeError> {
        let h = self.h_scaled_jet(z, order);
        if let Some(a) = self.a.to_real() {
            let re = h.log_scale.to_f64();
            if re.abs() <= a.exp_budget() {
                let factor = ComplexValue::new(h.log_scale.clone(), h.phase.clone()).exp().scale(&a);
                let jet = h.reduced.scale(&factor);
                if jet.values().iter().all(ComplexValue::is_finite) {
                    return Ok(jet);
                }
            }
        }
        h.rescale(self.ln_a()).materialize()
    }

    /// `max(|h″|, |h‴|, |h⁗|) / max(1, |h′|)` at node `l`.
    pub fn node_residual(&self, l: usize) -> f64 {
        let bits = self.precision_bits();
        let h = self.h_scaled_jet(&self.nodes[l], 4);
        let num = (2..=4)
            .map(|j| h.log_abs(j))
            .fold(T::from_f64(f64::NEG_INFINITY, bits), T::max);
        let den = h.log_abs(1).max(T::zero(bits));
        (num - den).exp().to_f64()
    }

    /// Checks the record invariants: degree bound, both lower bounds on `a`,
    /// and the node conditions.
    pub fn validate(&self) -> Result<(), ForgeError> {
        let bits = self.precision_bits();
        let degree = self.p.degree();
        if degree > 4 * self.n as usize - 1 {
            return Err(ForgeError::Invariant(format!("degree {degree} exceeds 4n - 1")));
        }
        let ln_a = self.ln_a().to_f64();
        let ln_two_n = (2.0 * self.n as f64).ln();
        let slack = |x: f64| 1e-12 * x.abs().max(1.0);
        if !self.c_hat.is_zero() {
            let need = 0.5 * (ln_two_n + self.c_hat.ln().to_f64());
            if ln_a < need - slack(need) {
                return Err(ForgeError::Invariant("a < sqrt(2n c_hat)".into()));
            }
        }
        let need = ln_two_n - self.m_hat.ln().to_f64();
        if ln_a < need - slack(need) {
            return Err(ForgeError::Invariant("a < 2n / m_hat".into()));
        }
        for l in 0..self.nodes.len() {
            let r = self.node_residual(l);
            if !(r <= NODE_TOL) {
                return Err(ForgeError::Invariant(format!(
                    "node {l}: residual {r:e} exceeds {NODE_TOL:e} at {bits} bits"
                )));
            }
        }
        Ok(())
    }

    pub fn to_f64_nodes(&self) -> Vec<ComplexValue<f64>> {
        self.nodes.iter().map(ComplexValue::to_f64).collect()
    }
}

pub(crate) fn check_grid(grid: u32) -> Result<(), ForgeError> {
    if grid < MIN_GRID {
        return Err(ForgeError::GridTooCoarse { grid });
    }
    if grid > MAX_GRID {
        return Err(ForgeError::GridTooFine { grid });
    }
    Ok(())
}

pub(crate) fn check_precision<T: Real>(bits: u32) -> Result<(), ForgeError> {
    if !(MIN_BITS..=MAX_BITS).contains(&bits) || T::zero(bits).bits() != bits {
        return Err(ForgeError::InvalidPrecision { bits });
    }
    Ok(())
}

/// Full pipeline: `p_n`, then `ĉ_n`, `m̂_n`, then `a_n`; the assembled record
/// is validated before it is returned.
pub fn construct<T: Real>(n: u32, config: &ConstructionConfig) -> Result<CounterexampleFunction<T>, ForgeError> {
    if n == 0 {
        return Err(ForgeError::InvalidOrder);
    }
    if n > MAX_ORDER {
        return Err(ForgeError::OrderTooLarge { n });
    }
    check_precision::<T>(config.precision_bits)?;
    check_grid(config.grid)?;
    let p = build_p::<T>(n, config.precision_bits)?;
    let c_hat = estimate_c(n, &p, config.grid)?;
    let m_hat = estimate_m(n, &p, config.grid)?;
    let a = choose_a(n, &c_hat, &m_hat)?;
    let f = CounterexampleFunction::from_parts(n, p, a, c_hat, m_hat, *config)?;
    f.validate()?;
    Ok(f)
}
