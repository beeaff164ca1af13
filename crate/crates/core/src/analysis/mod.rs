//! Numerical verification of the claimed properties of the family: the
//! differential inequality, the node multiplicities, maximum-modulus
//! behaviour of `h″/h³`, Marty blow-up on the unit circle, and decay of
//! `f^{(ℓ)}/f^{ℓ+1}` away from it.

mod functional;
mod grid;
mod pointwise;
mod probe;
mod report;
mod verify;

pub use functional::{fk_log, fk_value, quotient_log, spherical_derivative, spherical_derivative_log};
pub use grid::{random_disk_points, GridSpec, Region};
pub use pointwise::{grid_log_values, pointwise_log, Quantity};
pub use probe::{
    lemma2_probe, marty_probe, marty_probe_grid, ProbeTarget, CENTER_TOL, CIRCLE_GAP, DECAY_CEILING, MARTY_ANGLES,
    MARTY_RINGS, MARTY_SLACK, OUTER_LIMIT,
};
pub use report::{complex_pair, ProbeResult, VerificationReport};
pub use verify::{
    max_modulus_check, node_circle_bound, verify_inequality, verify_inequality_seeded, verify_node_jets,
    MAX_MODULUS_SLACK, NEAR_NODE_RADIUS, NEAR_NODE_SAMPLES,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalysisError {
    #[error("jet of order {found} is too short; order {needed} required")]
    OrderTooLow { needed: usize, found: usize },
    #[error("center {0} is not on the unit circle")]
    CenterOffCircle(String),
    #[error("point {0} is too close to the unit circle or outside |z| <= 1.9")]
    PointTooCloseToCircle(String),
    #[error("derivative order {0} not supported; use 1 or 2")]
    InvalidOrder(u32),
    #[error("radius {0} must be finite and nonnegative")]
    InvalidRadius(f64),
    #[error("invalid region {0:?}; expected disk:R, circle:R or annulus:R1:R2 with 0 < R1 < R2")]
    InvalidRegion(String),
    #[error("invalid resolution {0}")]
    InvalidResolution(u32),
    #[error("unknown quantity {0:?}; expected ratio, fk or sphder")]
    UnknownQuantity(String),
    #[error("no functions, points or orders given")]
    EmptyInput,
}
