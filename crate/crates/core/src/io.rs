//! JSON persistence of constructed functions and of verification reports.
//!
//! Every real is stored as a decimal string that parses back to the same
//! value at the recorded precision, so files written at extended precision
//! survive a round trip unchanged.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::{ProbeResult, VerificationReport};
use crate::cpoly::{ComplexValue, NewtonPolynomial, Real};
use crate::forge::{ConstructionConfig, CounterexampleFunction, ForgeError, WideReal};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed function file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema_version {0} (expected {SCHEMA_VERSION})")]
    Schema(u32),
    #[error("field {field}: cannot parse {value:?} at {bits} bits")]
    BadNumber { field: String, value: String, bits: u32 },
    #[error("inconsistent function record: {0}")]
    Record(#[from] ForgeError),
    #[error("inconsistent polynomial: {0}")]
    Polynomial(#[from] crate::cpoly::PolyError),
}

/// Grid and seed of the construction; the precision is stored at top level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StoredConfig {
    pub grid: u32,
    pub seed: u64,
}

/// On-disk form of a [`CounterexampleFunction`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    pub schema_version: u32,
    pub n: u32,
    pub precision_bits: u32,
    pub p_centers: Vec<[String; 2]>,
    pub p_coeffs: Vec<[String; 2]>,
    pub a: String,
    pub c_hat: String,
    pub m_hat: String,
    pub construction_config: StoredConfig,
}

fn pair<T: Real>(z: &ComplexValue<T>) -> [String; 2] {
    [z.re.to_decimal(), z.im.to_decimal()]
}

impl FunctionFile {
    pub fn from_function<T: Real>(f: &CounterexampleFunction<T>) -> Self {
        FunctionFile {
            schema_version: SCHEMA_VERSION,
            n: f.n(),
            precision_bits: f.precision_bits(),
            p_centers: f.p().centers().iter().map(pair).collect(),
            p_coeffs: f.p().coeffs().iter().map(pair).collect(),
            a: f.a().to_decimal(),
            c_hat: f.c_hat().to_decimal(),
            m_hat: f.m_hat().to_decimal(),
            construction_config: StoredConfig {
                grid: f.config().grid,
                seed: f.config().seed,
            },
        }
    }

    /// Rebuilds the function at the stored precision. Shape is checked; the
    /// analytic invariants are left to the verifiers.
    pub fn to_function<T: Real>(&self) -> Result<CounterexampleFunction<T>, IoError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(IoError::Schema(self.schema_version));
        }
        let bits = self.precision_bits;
        crate::forge::check_precision::<T>(bits)?;
        let real = |field: &str, s: &str| {
            T::parse_decimal(s, bits).ok_or_else(|| IoError::BadNumber {
                field: field.to_string(),
                value: s.to_string(),
                bits,
            })
        };
        let complex = |field: &str, v: &[[String; 2]]| -> Result<Vec<ComplexValue<T>>, IoError> {
            v.iter()
                .map(|[re, im]| Ok(ComplexValue::new(real(field, re)?, real(field, im)?)))
                .collect()
        };
        let wide = |field: &str, s: &str| {
            WideReal::<T>::parse(s, bits).ok_or_else(|| IoError::BadNumber {
                field: field.to_string(),
                value: s.to_string(),
                bits,
            })
        };
        let p = NewtonPolynomial::new(complex("p_centers", &self.p_centers)?, complex("p_coeffs", &self.p_coeffs)?)?;
        let config = ConstructionConfig {
            precision_bits: bits,
            grid: self.construction_config.grid,
            seed: self.construction_config.seed,
        };
        Ok(CounterexampleFunction::from_parts(
            self.n,
            p,
            wide("a", &self.a)?,
            wide("c_hat", &self.c_hat)?,
            wide("m_hat", &self.m_hat)?,
            config,
        )?)
    }

    /// Pretty JSON with a trailing newline; deterministic for a given record.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("function file serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), IoError> {
        fs::write(path, self.to_json()).map_err(|source| IoError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self, IoError> {
        let text = fs::read_to_string(path).map_err(|source| IoError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReportBody {
    Verification(Vec<VerificationReport>),
    Probe(ProbeResult),
    Sweep(crate::dynamic::SweepOutcome),
}

/// Report written to stdout by the command-line tool.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub command: String,
    pub inputs: Vec<String>,
    pub passed: bool,
    pub report: ReportBody,
    pub timestamp: String,
}
