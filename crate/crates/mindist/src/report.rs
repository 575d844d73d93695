//! The JSON record of one distance estimate.

use mindist_core::bounds::BoundReport;
use mindist_core::codebook::CodeParams;
use mindist_core::evolve::GaConfig;
use mindist_core::mim::MimConfig;
use mindist_core::{BitWord, Family, LinearCode, Method};
use serde::{Deserialize, Serialize};

/// Bumped whenever a field is added, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

/// The schema shipped with the crate.
pub const SCHEMA: &str = include_str!("../schema/estimate.schema.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeIdentity {
    /// How the code was named on the command line.
    pub source: String,
    pub label: String,
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub params: CodeParams,
    pub design_distance: Option<usize>,
}

impl CodeIdentity {
    pub fn of(code: &LinearCode, source: &str) -> Self {
        CodeIdentity {
            source: source.to_string(),
            label: code.label(),
            family: code.family(),
            n: code.n(),
            k: code.k(),
            params: code.params().clone(),
            design_distance: code.design_distance(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigSnapshot {
    Exact { budget: usize, workers: usize },
    Ga(GaConfig),
    Mim { config: MimConfig, workers: usize },
}

/// A lighter codeword found during a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub weight: usize,
    pub codeword: BitWord,
    pub elapsed_seconds: f64,
    pub trial: usize,
    pub amplitude: f64,
    pub nb_error: usize,
    pub decodes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceEstimate {
    pub schema_version: u32,
    pub code: CodeIdentity,
    pub method: Method,
    pub d: usize,
    /// Absent only when MIM never decoded a nonzero codeword.
    pub witness: Option<BitWord>,
    pub config: ConfigSnapshot,
    pub rng_seed: u64,
    pub wall_time_seconds: f64,
    pub bound_report: BoundReport,
    /// MIM improvements in discovery order.
    #[serde(default)]
    pub witnesses: Vec<WitnessRecord>,
    /// GA best fitness per evaluated population.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generation_best: Option<Vec<usize>>,
    /// Exhaustive sweep size.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumerated: Option<u64>,
}

impl DistanceEstimate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("estimate serializes") + "\n"
    }

    /// Witness re-encodes as a codeword of weight `d`.
    pub fn witness_valid(&self, code: &LinearCode) -> bool {
        self.witness.as_ref().is_some_and(|w| w.weight() == self.d && w.weight() > 0 && code.contains(w))
    }
}
