// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use std::path::PathBuf;

use accessor_control::closure::{generate_closure, ClosureOptions};
use accessor_control::config::ModelConfig;
use accessor_control::linalg::{ComplexMatrix, ToleranceConfig};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_xoshiro::SplitMix64;

pub fn example(name: &str) -> ModelConfig {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(format!("{name}.json"));
    ModelConfig::from_path(&path).expect("example config parses")
}

pub fn example_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(format!("{name}.json"))
}

pub fn serial() -> ClosureOptions {
    ClosureOptions { cap: None, workers: Some(1) }
}

pub fn dimension(gens: &[ComplexMatrix]) -> usize {
    generate_closure(gens, &ToleranceConfig::default(), &serial()).unwrap().1.dimension
}

/// Haar-like unitary from the QR factor of a complex Gaussian-ish matrix.
pub fn random_unitary(rng: &mut SplitMix64, d: usize) -> ComplexMatrix {
    let a = DMatrix::from_fn(d, d, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let q = a.qr().q();
    ComplexMatrix::from_row_major((0..d * d).map(|k| q[(k / d, k % d)]).collect())
}

pub fn conjugate(u: &ComplexMatrix, g: &ComplexMatrix) -> ComplexMatrix {
    u.matmul(g).matmul(&u.adjoint())
}

pub fn random_skew(rng: &mut SplitMix64, d: usize) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(d);
    for r in 0..d {
        for c in r..d {
            let v = if r == c {
                Complex64::new(rng.random_range(-1.0..1.0), 0.0)
            } else {
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            };
            h[(r, c)] = v;
            h[(c, r)] = v.conj();
        }
    }
    accessor_control::linalg::project_traceless(&h).scaled_complex(accessor_control::linalg::I)
}
