//! Complex polynomial core: scalars, jets, Newton-form polynomials and
//! Hermite interpolation.

mod complex;
mod hermite;
mod jet;
mod newton;
pub mod real;

pub use complex::{ComplexValue, ParseComplexError};
pub use hermite::{hermite_interpolate, HermiteSpec, DUPLICATE_NODE_TOL};
pub use jet::Jet;
pub(crate) use jet::binom;
pub use newton::{eval_monomial, NewtonPolynomial};
pub use real::{Mp, Real, DOUBLE_BITS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("nodes {first} and {second} coincide")]
    DuplicateNodes { first: usize, second: usize },
    #[error("{nodes} nodes but {jets} jets")]
    JetCountMismatch { nodes: usize, jets: usize },
    #[error("jets must share one order: expected {expected}, found {found}")]
    MixedJetOrders { expected: usize, found: usize },
    #[error("interpolation needs at least one node")]
    Empty,
    #[error("{coeffs} coefficients for {centers} centers (need centers + 1)")]
    ShapeMismatch { centers: usize, coeffs: usize },
    #[error("non-finite polynomial data")]
    NonFinite,
}
