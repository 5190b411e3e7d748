// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON model configuration and its validation.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ToleranceConfig;
use crate::model::{AccessorSpec, ControlModel, CouplingTensor, SystemSpec};
use crate::operators::{Grade, PauliWord};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub system: SystemConfig,
    pub accessor: AccessorConfig,
    #[serde(default)]
    pub coupling: Vec<CouplingEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<TolerancesConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub dim: usize,
    pub energies: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AccessorConfig {
    pub qubits: usize,
    pub frequencies: Vec<f64>,
    #[serde(default)]
    pub chain_couplings: Vec<f64>,
}

/// Word kept as raw text so validation can name the entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingEntry {
    pub word: String,
    pub j: usize,
    pub k: i8,
    pub g: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolerancesConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub independence: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hermiticity: Option<f64>,
}

fn config_err(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Config {
        path: path.into(),
        message: message.into(),
    }
}

impl ModelConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let path = if path == "." { "config".to_string() } else { path };
            config_err(path, e.into_inner().to_string())
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(path.display().to_string(), e.to_string()))?;
        Self::from_json_str(&text)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn tolerance_config(&self) -> Result<ToleranceConfig> {
        let mut tol = ToleranceConfig::default();
        if let Some(t) = self.tolerances {
            if let Some(v) = t.independence {
                tol.independence = v;
            }
            if let Some(v) = t.verify {
                tol.verify = v;
            }
            if let Some(v) = t.hermiticity {
                tol.hermiticity = v;
            }
        }
        tol.validate()
            .map_err(|e| config_err("tolerances", e.to_string()))?;
        Ok(tol)
    }

    /// Copy with every optional tolerance filled in.
    pub fn resolved(&self) -> Result<Self> {
        let tol = self.tolerance_config()?;
        let mut out = self.clone();
        out.tolerances = Some(TolerancesConfig {
            independence: Some(tol.independence),
            verify: Some(tol.verify),
            hermiticity: Some(tol.hermiticity),
        });
        Ok(out)
    }

    pub fn coupling_tensor(&self) -> Result<CouplingTensor> {
        let (n, m) = (self.system.dim, self.accessor.qubits);
        let mut tensor = CouplingTensor::new(n, m);
        let mut seen = BTreeSet::new();
        for (idx, entry) in self.coupling.iter().enumerate() {
            let at = |field: &str| format!("coupling[{idx}].{field}");
            if entry.word.contains(['i', 'I']) {
                return Err(config_err(at("word"), "contains 'i'"));
            }
            let word: PauliWord = entry
                .word
                .parse()
                .map_err(|e: Error| config_err(at("word"), e.to_string()))?;
            if word.len() != m {
                return Err(config_err(
                    at("word"),
                    format!("has length {} but accessor has {m} qubits", word.len()),
                ));
            }
            if entry.j == 0 || entry.j >= n {
                return Err(config_err(at("j"), format!("must lie in 1..={}", n - 1)));
            }
            let k = Grade::try_from(entry.k).map_err(|_| config_err(at("k"), "must be -1, 0 or 1"))?;
            if !entry.g.is_finite() {
                return Err(config_err(at("g"), "must be finite"));
            }
            if !seen.insert((word.clone(), entry.j, entry.k)) {
                return Err(config_err(at("word"), "duplicate (word, j, k) entry"));
            }
            tensor
                .set(word, entry.j, k, entry.g)
                .map_err(|e| config_err(format!("coupling[{idx}]"), e.to_string()))?;
        }
        Ok(tensor)
    }

    /// Validates every field and builds the model.
    pub fn build(&self) -> Result<(ControlModel, ToleranceConfig)> {
        let sys = &self.system;
        if sys.dim < 2 {
            return Err(config_err("system.dim", "must be at least 2"));
        }
        if sys.energies.len() != sys.dim {
            return Err(config_err(
                "system.energies",
                format!("expected {} values, got {}", sys.dim, sys.energies.len()),
            ));
        }
        if let Some(i) = sys.energies.iter().position(|e| !e.is_finite()) {
            return Err(config_err(format!("system.energies[{i}]"), "must be finite"));
        }
        let acc = &self.accessor;
        if acc.qubits == 0 {
            return Err(config_err("accessor.qubits", "must be at least 1"));
        }
        if acc.qubits > 6 {
            return Err(config_err("accessor.qubits", "at most 6 qubits are supported"));
        }
        if acc.frequencies.len() != acc.qubits {
            return Err(config_err(
                "accessor.frequencies",
                format!("expected {} values, got {}", acc.qubits, acc.frequencies.len()),
            ));
        }
        if let Some(i) = acc.frequencies.iter().position(|e| !e.is_finite()) {
            return Err(config_err(format!("accessor.frequencies[{i}]"), "must be finite"));
        }
        if acc.chain_couplings.len() != acc.qubits - 1 {
            return Err(config_err(
                "accessor.chain_couplings",
                format!("expected {} values, got {}", acc.qubits - 1, acc.chain_couplings.len()),
            ));
        }
        for (i, &c) in acc.chain_couplings.iter().enumerate() {
            if !c.is_finite() {
                return Err(config_err(format!("accessor.chain_couplings[{i}]"), "must be finite"));
            }
            if c == 0.0 {
                return Err(config_err(format!("accessor.chain_couplings[{i}]"), "zero chain coupling"));
            }
        }
        let tol = self.tolerance_config()?;
        let tensor = self.coupling_tensor()?;
        let model = ControlModel::new(
            SystemSpec::new(sys.energies.clone())?,
            AccessorSpec::new(acc.frequencies.clone(), acc.chain_couplings.clone())?,
            tensor,
        )?;
        Ok((model, tol))
    }
}
