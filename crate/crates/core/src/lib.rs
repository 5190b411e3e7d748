// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

//! Controllability analysis for an N-level system driven through an M-qubit
//! XY accessor chain.

pub mod cli;
pub mod closure;
pub mod config;
pub mod decoupling;
pub mod error;
pub mod linalg;
pub mod model;
pub mod operators;
pub mod oracle;
pub mod par;
pub mod random;
pub mod report;

pub use error::{Error, Result};
