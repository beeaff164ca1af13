//! Construction and numerical verification of the holomorphic family
//! `f_n(z) = a_n(zⁿ − 1)e^{p_n(z)}` on the disk `|z| < 2`.
//!
//! * [`cpoly`]: complex scalars at configurable precision, jets, Newton-form
//!   polynomials and Hermite interpolation.
//! * [`forge`]: the polynomials `p_n`, the estimates `ĉ_n`, `m̂_n` and the
//!   scale `a_n`.
//! * [`analysis`]: verifiers and probes for the properties of the family.
//! * [`io`] and [`dynamic`]: JSON files and run-time precision selection.

pub mod analysis;
pub mod cpoly;
pub mod dynamic;
pub mod forge;
pub mod io;
pub mod search;
