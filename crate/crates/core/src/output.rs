//! Machine-readable records emitted by the command-line tool.
//!
//! Every float is written with 17 significant digits so that parsing the
//! output recovers the exact binary64 value. Non-finite values become
//! `null`. The JSON shape is described by `schema/output-record.schema.json`.

use std::fmt;

use serde::de::Deserializer;
use serde::ser::{Error as _, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::distributions::{DistributionKind, McEstimate};
use crate::routes::{ComparisonReport, RouteId, RouteResult};

/// Schema shipped alongside the crate.
pub const SCHEMA: &str = include_str!("../schema/output-record.schema.json");

/// Fixed CSV header for `table --format csv`.
pub const CSV_HEADER: &str = "s,route,value,abs_error,converged";

/// Tool version stamped into every record.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A float that serialises with 17 significant digits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct F17(pub f64);

impl F17 {
    /// `d.dddddddddddddddde±x`, or `None` for non-finite input.
    pub fn digits(self) -> Option<String> {
        self.0.is_finite().then(|| format!("{:.16e}", self.0))
    }
}

impl fmt::Display for F17 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.digits() {
            Some(d) => f.write_str(&d),
            None => write!(f, "{}", self.0),
        }
    }
}

impl From<f64> for F17 {
    fn from(x: f64) -> Self {
        F17(x)
    }
}

impl Serialize for F17 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.digits() {
            Some(d) => RawValue::from_string(d).map_err(S::Error::custom)?.serialize(serializer),
            None => serializer.serialize_none(),
        }
    }
}

impl<'de> Deserialize<'de> for F17 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(F17(Option::<f64>::deserialize(deserializer)?.unwrap_or(f64::NAN)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Eval,
    Compare,
    Bernoulli,
    Mc,
    Table,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteRecord {
    pub route: RouteId,
    pub value: F17,
    pub abs_error: F17,
    pub evaluations: usize,
    pub converged: bool,
    pub notes: String,
}

impl From<&RouteResult> for RouteRecord {
    fn from(r: &RouteResult) -> Self {
        RouteRecord {
            route: r.route,
            value: F17(r.result.value),
            abs_error: F17(r.result.abs_error),
            evaluations: r.result.evaluations,
            converged: r.result.converged,
            notes: r.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRecord {
    pub max_pairwise_gap: F17,
    pub tolerance: F17,
    pub allowance: F17,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BernoulliRecord {
    pub n: usize,
    /// `numerator/denominator`, or an integer when the denominator is 1.
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McRecord {
    pub distribution: DistributionKind,
    pub order: u32,
    pub mean: F17,
    pub stderr: F17,
    pub n_samples: usize,
    pub seed: u64,
    pub rng: String,
    pub target: F17,
    pub z_score: F17,
    pub pass: bool,
}

impl McRecord {
    pub fn new(distribution: DistributionKind, estimate: &McEstimate, target: f64, rng: &str, z_limit: f64) -> Self {
        let z = estimate.z_score(target);
        McRecord {
            distribution,
            order: estimate.order,
            mean: F17(estimate.mean),
            stderr: F17(estimate.stderr),
            n_samples: estimate.n_samples,
            seed: estimate.seed,
            rng: rng.to_string(),
            target: F17(target),
            z_score: F17(z),
            pass: z.abs() <= z_limit,
        }
    }
}

/// One line of output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: Command,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<F17>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<F17>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub routes: Vec<RouteRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bernoulli: Option<Vec<BernoulliRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mc: Option<McRecord>,
}

impl OutputRecord {
    pub fn new(command: Command) -> Self {
        OutputRecord {
            command,
            version: VERSION.to_string(),
            s: None,
            tol: None,
            routes: Vec::new(),
            comparison: None,
            bernoulli: None,
            mc: None,
        }
    }

    pub fn from_comparison(report: &ComparisonReport) -> Self {
        OutputRecord {
            s: Some(F17(report.argument)),
            tol: Some(F17(report.tolerance)),
            routes: report.results.iter().map(RouteRecord::from).collect(),
            comparison: Some(ComparisonRecord {
                max_pairwise_gap: F17(report.max_pairwise_gap),
                tolerance: F17(report.tolerance),
                allowance: F17(report.allowance()),
                pass: report.pass,
            }),
            ..OutputRecord::new(Command::Compare)
        }
    }

    /// Single-line JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records contain only serialisable data")
    }
}

/// CSV rows (without header) for one evaluated argument.
pub fn csv_rows(s: f64, routes: &[RouteRecord]) -> Vec<String> {
    routes
        .iter()
        .map(|r| format!("{},{},{},{},{}", F17(s), r.route, r.value, r.abs_error, r.converged))
        .collect()
}
