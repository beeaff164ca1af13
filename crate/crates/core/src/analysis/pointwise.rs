//! Single-point evaluation of the plotted quantities.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cpoly::{ComplexValue, Real};
use crate::forge::{ratio_log_abs, CounterexampleFunction};

use super::functional::{fk_log, spherical_derivative_log};
use super::grid::GridSpec;
use super::AnalysisError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    /// `|h″/h³|`, undefined within `ε_node` of a node.
    Ratio,
    /// `|f″|/(1 + |f|³)`.
    Fk,
    /// `|f′|/(1 + |f|²)`.
    Sphder,
}

impl FromStr for Quantity {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ratio" => Ok(Quantity::Ratio),
            "fk" => Ok(Quantity::Fk),
            "sphder" => Ok(Quantity::Sphder),
            _ => Err(AnalysisError::UnknownQuantity(s.to_string())),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::Ratio => "ratio",
            Quantity::Fk => "fk",
            Quantity::Sphder => "sphder",
        })
    }
}

/// Natural log of `what` at `z`; `None` where the quantity is excluded.
pub fn pointwise_log<T: Real>(f: &CounterexampleFunction<T>, what: Quantity, z: &ComplexValue<f64>) -> Option<f64> {
    let z = ComplexValue::<T>::lift(z, f.precision_bits());
    let z = match f.node_index(&z) {
        Some(l) => f.nodes()[l].clone(),
        None => z,
    };
    let v = match what {
        Quantity::Ratio => ratio_log_abs(f.n(), f.p(), &z).ok()?,
        Quantity::Fk => fk_log(&f.f_scaled_jet(&z, 2), 2).ok()?,
        Quantity::Sphder => spherical_derivative_log(&f.f_scaled_jet(&z, 1)).ok()?,
    };
    Some(v.to_f64())
}

/// `(z, ln value)` over the grid, skipping excluded points.
pub fn grid_log_values<T: Real>(
    f: &CounterexampleFunction<T>,
    what: Quantity,
    grid: &GridSpec,
) -> Vec<(ComplexValue<f64>, f64)> {
    grid.points()
        .into_iter()
        .filter_map(|z| pointwise_log(f, what, &z).map(|v| (z, v)))
        .collect()
}
