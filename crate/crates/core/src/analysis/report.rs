use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cpoly::ComplexValue;
use crate::forge::WideReal;

/// `[re, im]` as decimal strings.
pub mod complex_pair {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::cpoly::{ComplexValue, Real};

    pub fn serialize<S: Serializer>(z: &ComplexValue<f64>, s: S) -> Result<S::Ok, S::Error> {
        [z.re.to_decimal(), z.im.to_decimal()].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ComplexValue<f64>, D::Error> {
        let [re, im] = <[String; 2]>::deserialize(d)?;
        let parse = |t: &str| {
            f64::parse_decimal(t, 53).ok_or_else(|| serde::de::Error::custom(format!("bad real {t:?}")))
        };
        Ok(ComplexValue::new(parse(&re)?, parse(&im)?))
    }

    pub mod list {
        use super::*;

        #[derive(Serialize, Deserialize)]
        struct Pair(#[serde(with = "super")] ComplexValue<f64>);

        pub fn serialize<S: Serializer>(v: &[ComplexValue<f64>], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|z| Pair(z.clone())))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<ComplexValue<f64>>, D::Error> {
            Ok(Vec::<Pair>::deserialize(d)?.into_iter().map(|p| p.0).collect())
        }
    }
}

/// Outcome of one verification pass.
///
/// `passed` holds exactly when `max_inequality ≤ 1 + tolerance` and every
/// node residual is within its tolerance. Magnitudes are kept as
/// [`WideReal`] since several of them exceed the double range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub passed: bool,
    pub max_inequality: WideReal<f64>,
    #[serde(with = "complex_pair")]
    pub worst_point: ComplexValue<f64>,
    pub node_residuals: Vec<f64>,
    pub notes: String,
    pub metrics: BTreeMap<String, WideReal<f64>>,
}

impl VerificationReport {
    pub(crate) fn new(check: &str) -> Self {
        VerificationReport {
            check: check.to_string(),
            passed: false,
            max_inequality: WideReal::zero(53),
            worst_point: ComplexValue::new(0.0, 0.0),
            node_residuals: Vec::new(),
            notes: String::new(),
            metrics: BTreeMap::new(),
        }
    }

    pub fn metric(&self, key: &str) -> Option<&WideReal<f64>> {
        self.metrics.get(key)
    }

    pub(crate) fn set_metric(&mut self, key: &str, v: WideReal<f64>) {
        self.metrics.insert(key.to_string(), v);
    }

    pub(crate) fn note(&mut self, line: &str) {
        if !self.notes.is_empty() {
            self.notes.push('\n');
        }
        self.notes.push_str(line);
    }
}

/// Sequence data from a probe over several family members.
///
/// Entry `i` measures member `n_values[i]` at `points[i]` with derivative
/// order `orders[i]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub probe: String,
    pub n_values: Vec<u32>,
    pub measurements: Vec<WideReal<f64>>,
    #[serde(with = "complex_pair::list")]
    pub points: Vec<ComplexValue<f64>>,
    pub orders: Vec<u32>,
    pub verdict: String,
}

impl ProbeResult {
    pub fn is_positive(&self) -> bool {
        matches!(self.verdict.as_str(), "blowup" | "decay")
    }
}
