//! The result document printed with `--json`. See `docs/result-schema.json`.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Debug, Default)]
pub struct ResultDocument {
    pub schema_version: u32,
    pub command: CommandEcho,
    /// `ok`, `not_summable`, `verification_failed` or `error`
    pub status: &'static str,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<RowOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_check: Option<SigmaCheckOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tower: Option<TowerOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<DepthOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bench: Option<Vec<BenchRowOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorOut>,
    pub timing_ms: f64,
}

#[derive(Serialize, Debug, Default)]
pub struct CommandEcho {
    pub name: String,
    pub argv: Vec<String>,
}

#[derive(Serialize, Debug)]
pub struct PairOut {
    pub input: String,
    pub g: String,
    pub r: String,
    pub summable: bool,
}

#[derive(Serialize, Debug)]
pub struct RowOut {
    pub coeffs: Vec<String>,
    pub certificate: String,
}

#[derive(Serialize, Debug)]
pub struct SigmaCheckOut {
    pub level: usize,
    pub is_sigma_monomial: bool,
    pub g: String,
    pub r: String,
}

#[derive(Serialize, Debug)]
pub struct TowerOut {
    pub constants: Vec<String>,
    pub generators: Vec<GeneratorOut>,
    /// TOML text of the rebuilt tower
    pub file: String,
}

#[derive(Serialize, Debug)]
pub struct GeneratorOut {
    /// name in the input tower
    pub source: String,
    /// name in the rebuilt tower
    pub name: String,
    pub delta: String,
    /// image of the source generator
    pub image: String,
}

#[derive(Serialize, Debug)]
pub struct DepthOut {
    pub image: String,
    pub g: String,
    pub r: String,
    pub depth_before: usize,
    pub depth_after: usize,
}

#[derive(Serialize, Debug)]
pub struct VerificationOut {
    pub from: i64,
    pub to: i64,
    pub start: i64,
    pub checked: usize,
    pub poles: Vec<i64>,
    pub failures: Vec<FailureOut>,
    pub passed: bool,
}

#[derive(Serialize, Debug)]
pub struct FailureOut {
    pub k: i64,
    pub residual: String,
}

#[derive(Serialize, Debug)]
pub struct BenchRowOut {
    pub degree: usize,
    pub trials: usize,
    pub mean_ms: f64,
    pub median_ms: f64,
    pub all_summable: bool,
}

#[derive(Serialize, Debug)]
pub struct ErrorOut {
    pub kind: &'static str,
    pub message: String,
}
