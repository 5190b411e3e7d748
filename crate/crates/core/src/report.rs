// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

//! Machine-readable run reports.
//!
//! Reports are rendered through `serde_json::Value`, whose maps keep keys
//! sorted, and floats use the shortest representation that round-trips.
//! Parsing a rendered report and rendering it again gives the same bytes.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct ToolVersion {
    pub schema: u32,
    pub tool: String,
}

impl Default for ToolVersion {
    fn default() -> Self {
        Self {
            schema: SCHEMA_VERSION,
            tool: format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub version: ToolVersion,
    pub command: String,
    pub config: Value,
    pub result: Value,
    pub timing: Timing,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunReport {
    pub fn new(command: &str, config: impl Serialize, result: impl Serialize, wall_seconds: f64) -> Self {
        Self {
            version: ToolVersion::default(),
            command: command.into(),
            config: to_value(&config),
            result: to_value(&result),
            timing: Timing { wall_seconds },
            seed: None,
        }
    }

    pub fn render(&self) -> String {
        canonical_json(self)
    }
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical_json(value: &impl Serialize) -> String {
    let mut out = serde_json::to_string_pretty(&to_value(value)).expect("value renders");
    out.push('\n');
    out
}
