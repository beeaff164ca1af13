//! Construction of the counterexample family `f_n = a_n(zⁿ − 1)e^{p_n(z)}`.
//!
//! `p_n` is chosen by Hermite interpolation so that `h_n = g_n e^{p_n}` has
//! `h″ = h‴ = h⁗ = 0` at every root of unity of order `n`. Then `h″/h³` is
//! entire, its maximum modulus `c_n` over `|z| ≤ 2` is found on the circle
//! `|z| = 2`, and `a_n` is taken large enough that `c_n/a_n² ≤ 1/(2n)`.

mod conditions;
mod estimate;
mod eval;
mod function;
mod wide;

pub use conditions::{
    build_p, g_jet, g_jet_at_node, nearest_node, node_conditions, root_of_unity, roots_of_unity,
    NodeConditions,
};
pub use estimate::{
    choose_a, circle_max_log_ratio, estimate_c, estimate_m, k_region_radii, DISK_RADIUS, MAX_GRID,
    MIN_GRID,
};
pub use eval::{
    exp_jet, exp_jet_reduced, h_jet, h_scaled_jet, log_abs_h, ratio_log_abs, ScaledJet,
    NODE_EXCLUSION,
};
pub use function::{
    construct, ConstructionConfig, CounterexampleFunction, DEFAULT_GRID, DEFAULT_SEED, MAX_ORDER,
    NODE_TOL,
};
pub use wide::{LogMagnitude, WideReal};
pub(crate) use function::check_precision;

use crate::cpoly::PolyError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ForgeError {
    #[error("n must be >= 1")]
    InvalidOrder,
    #[error("n = {n} exceeds the maximum order 65536")]
    OrderTooLarge { n: u32 },
    #[error("node index {index} out of range for n = {n}")]
    IndexOutOfRange { index: u32, n: u32 },
    #[error("magnitude e^{log_magnitude} overflows the float range")]
    Overflow { log_magnitude: f64 },
    #[error("point lies within the exclusion radius of node {index}")]
    NearNode { index: u32 },
    #[error("m_hat must be positive")]
    NonPositiveM,
    #[error("sampling region is empty")]
    EmptyRegion,
    #[error("grid resolution {grid} below the minimum of 64")]
    GridTooCoarse { grid: u32 },
    #[error("grid resolution {grid} above the maximum of 1048576")]
    GridTooFine { grid: u32 },
    #[error("unsupported precision of {bits} bits")]
    InvalidPrecision { bits: u32 },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("internal interpolation error: {0}")]
    Internal(PolyError),
}
