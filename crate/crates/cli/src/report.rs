//! Report envelopes (JSON) and density tables (CSV).

use std::fmt::Write as _;

use serde::Serialize;
use twistlab_core::census::DensityCurve;
use twistlab_core::IntPoly;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL: &str = "twistlab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Default, Clone, Serialize)]
pub struct Bounds {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime_bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height_bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub heights: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
}

/// Everything needed to rerun a command and compare outputs.
#[derive(Debug, Serialize)]
pub struct Report<T> {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: Option<u64>,
    pub bounds: Bounds,
    pub coefficients: Option<IntPoly>,
    pub polynomial: Option<String>,
    pub result: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &'static str, poly: Option<&IntPoly>, bounds: Bounds, seed: Option<u64>, result: T) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            tool: TOOL,
            version: VERSION,
            command,
            seed,
            bounds,
            coefficients: poly.cloned(),
            polynomial: poly.map(ToString::to_string),
            result,
        }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }
}

/// `H,samples,success,failure,inconclusive,stderr`, preceded by a comment
/// line recording the run parameters.
pub fn density_csv(curve: &DensityCurve) -> String {
    let mut out = format!(
        "# {TOOL} {VERSION} schema={SCHEMA_VERSION} kind={} N={} n={} samples={} seed={}\n",
        curve.kind.as_str(),
        curve.degree, curve.n, curve.samples, curve.seed
    );
    out.push_str("H,samples,success,failure,inconclusive,stderr\n");
    for p in &curve.points {
        let _ = writeln!(
            out,
            "{},{},{:.6},{:.6},{:.6},{:.6}",
            p.h, p.samples, p.success_fraction, p.failure_fraction, p.inconclusive_fraction, p.stderr
        );
    }
    out
}
