//! Sample grids over disks, circles and annuli centred at the origin.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cpoly::ComplexValue;
use crate::forge::DEFAULT_SEED;

use super::AnalysisError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Region {
    Disk { r: f64 },
    Circle { r: f64 },
    Annulus { r1: f64, r2: f64 },
}

impl Region {
    pub fn contains(&self, z: &ComplexValue<f64>) -> bool {
        let m = z.norm();
        match *self {
            Region::Disk { r } => m <= r,
            Region::Circle { r } => (m - r).abs() <= 1e-12 * r,
            Region::Annulus { r1, r2 } => m >= r1 && m <= r2,
        }
    }

    fn validate(&self) -> Result<(), AnalysisError> {
        let ok = |r: f64| r.is_finite() && r > 0.0;
        let good = match *self {
            Region::Disk { r } | Region::Circle { r } => ok(r),
            Region::Annulus { r1, r2 } => ok(r1) && ok(r2) && r1 < r2,
        };
        if good {
            Ok(())
        } else {
            Err(AnalysisError::InvalidRegion(self.to_string()))
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Disk { r } => write!(f, "disk:{r}"),
            Region::Circle { r } => write!(f, "circle:{r}"),
            Region::Annulus { r1, r2 } => write!(f, "annulus:{r1}:{r2}"),
        }
    }
}

impl FromStr for Region {
    type Err = AnalysisError;

    /// `disk:R`, `circle:R` or `annulus:R1:R2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AnalysisError::InvalidRegion(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.parse::<f64>().map_err(|_| bad());
        let region = match parts.as_slice() {
            ["disk", r] => Region::Disk { r: num(r)? },
            ["circle", r] => Region::Circle { r: num(r)? },
            ["annulus", r1, r2] => Region::Annulus {
                r1: num(r1)?,
                r2: num(r2)?,
            },
            _ => return Err(bad()),
        };
        region.validate().map_err(|_| bad())?;
        Ok(region)
    }
}

/// A deterministic grid over a [`Region`].
///
/// Circles get `resolution` equispaced points starting at angle 0. Disks and
/// annuli get the points of a `resolution × resolution` Cartesian lattice over
/// the bounding square (cell centres) that fall inside the region.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub region: Region,
    pub resolution: u32,
    pub seed: u64,
}

impl GridSpec {
    pub fn new(region: Region, resolution: u32) -> Result<Self, AnalysisError> {
        region.validate()?;
        if resolution == 0 {
            return Err(AnalysisError::InvalidResolution(resolution));
        }
        Ok(GridSpec {
            region,
            resolution,
            seed: DEFAULT_SEED,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn points(&self) -> Vec<ComplexValue<f64>> {
        let m = self.resolution as usize;
        match self.region {
            Region::Circle { r } => (0..m)
                .map(|k| ComplexValue::from_polar(r, std::f64::consts::TAU * k as f64 / m as f64))
                .collect(),
            Region::Disk { r } | Region::Annulus { r2: r, .. } => {
                let cell = 2.0 * r / m as f64;
                let mut out = Vec::new();
                for j in 0..m {
                    let im = -r + cell * (j as f64 + 0.5);
                    for i in 0..m {
                        let z = ComplexValue::new(-r + cell * (i as f64 + 0.5), im);
                        if self.region.contains(&z) {
                            out.push(z);
                        }
                    }
                }
                out
            }
        }
    }

    /// `count` points drawn uniformly (by area, or by arc length on a
    /// circle) from the region, reproducibly from `seed`.
    pub fn random_points(&self, count: usize) -> Vec<ComplexValue<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let (r_lo, r_hi) = match self.region {
            Region::Disk { r } => (0.0, r),
            Region::Circle { r } => (r, r),
            Region::Annulus { r1, r2 } => (r1, r2),
        };
        (0..count)
            .map(|_| {
                let u: f64 = rng.random();
                let rho = (r_lo * r_lo + u * (r_hi * r_hi - r_lo * r_lo)).sqrt();
                let theta = std::f64::consts::TAU * rng.random::<f64>();
                ComplexValue::from_polar(rho, theta)
            })
            .collect()
    }
}

/// `count` points uniform in the disk `|z − center| ≤ radius`.
pub fn random_disk_points(
    rng: &mut impl Rng,
    center: &ComplexValue<f64>,
    radius: f64,
    count: usize,
) -> Vec<ComplexValue<f64>> {
    (0..count)
        .map(|_| {
            let rho = radius * rng.random::<f64>().sqrt();
            let theta = std::f64::consts::TAU * rng.random::<f64>();
            center.clone() + ComplexValue::from_polar(rho, theta)
        })
        .collect()
}
