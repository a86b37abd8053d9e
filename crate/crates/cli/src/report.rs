//! The JSON report emitted under `--json`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::commands::LawRecord;
use crate::formats::InputDigest;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub result: Value,
    pub laws: Vec<LawRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
