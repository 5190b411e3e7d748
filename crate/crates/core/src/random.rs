// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded random model instances.

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::config::{AccessorConfig, CouplingEntry, ModelConfig, SystemConfig};
use crate::operators::{chevalley_labels, coupling_words};

/// Chain couplings closer to zero than this are redrawn.
const MIN_CHAIN_COUPLING: f64 = 0.05;

/// Grid used by the CLI: four decimal places.
pub const DECIMAL_GRID: f64 = 1e4;

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Uniform draw from [−1, 1] rounded to multiples of 1/`steps`.
pub fn quantized_uniform(rng: &mut SplitMix64, steps: f64) -> f64 {
    let x: f64 = rng.random_range(-1.0..=1.0);
    let q = (x * steps).round() / steps;
    // normalize −0.0
    q + 0.0
}

/// A model with every coefficient drawn uniformly from [−1, 1]: energies,
/// frequencies, chain couplings and all 3^M·3(N−1) coupling slots.
pub fn random_config(n: usize, m: usize, seed: u64, steps: f64) -> ModelConfig {
    let mut rng = rng(seed);
    let energies = (0..n).map(|_| quantized_uniform(&mut rng, steps)).collect();
    let frequencies = (0..m).map(|_| quantized_uniform(&mut rng, steps)).collect();
    let chain_couplings = (1..m)
        .map(|_| loop {
            let c = quantized_uniform(&mut rng, steps);
            if c.abs() >= MIN_CHAIN_COUPLING {
                break c;
            }
        })
        .collect();
    let labels = chevalley_labels(n);
    let mut coupling = Vec::with_capacity(labels.len() * 3usize.pow(m as u32));
    for word in coupling_words(m) {
        for label in &labels {
            coupling.push(CouplingEntry {
                word: word.to_string(),
                j: label.j,
                k: label.k.value(),
                g: quantized_uniform(&mut rng, steps),
            });
        }
    }
    ModelConfig {
        system: SystemConfig { dim: n, energies },
        accessor: AccessorConfig {
            qubits: m,
            frequencies,
            chain_couplings,
        },
        coupling,
        tolerances: None,
    }
}
