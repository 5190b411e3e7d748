// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not skew-Hermitian (relative deviation {deviation:.3e})")]
    NotSkewHermitian { deviation: f64 },
    #[error("matrix is not traceless (|tr| = {trace:.3e})")]
    NotTraceless { trace: f64 },
    #[error("zero candidate cannot be inserted")]
    ZeroCandidate,
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("index ({i}, {j}) out of range for dimension {n}")]
    IndexOutOfRange { n: usize, i: usize, j: usize },
    #[error("system dimension must be at least 2, got {0}")]
    SystemTooSmall(usize),
    #[error("accessor must have at least one qubit")]
    EmptyAccessor,
    #[error("invalid Pauli word {word:?}: {reason}")]
    InvalidWord { word: String, reason: String },
    #[error("zero chain coupling at link {0}")]
    ZeroChainCoupling(usize),
    #[error("{path}: {message}")]
    Config { path: String, message: String },
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("site {site} out of range for {m} accessor qubits")]
    SiteOutOfRange { site: usize, m: usize },
    #[error("cascade must cover every site exactly once: {0}")]
    InvalidCascade(String),
    #[error("coupling rank {rank} < {required}")]
    Infeasible { rank: usize, required: usize },
    #[error("residual {residual:.3e} exceeds tolerance {tolerance:.1e} for {context}")]
    ResidualTooLarge {
        context: String,
        residual: f64,
        tolerance: f64,
    },
    #[error("coupling rank with the absorbed chain term {rank} < {required} unknowns")]
    AbsorbedTerm { rank: usize, required: usize },
    #[error("operators do not share one accessor word: {0}")]
    WordMismatch(String),
    #[error("closure reached {found} of {expected} for {context}")]
    IncompleteClosure {
        context: String,
        found: usize,
        expected: usize,
    },
    #[error("coefficient {value} at {path} is not an exact short rational")]
    IrrationalCoefficient { path: String, value: f64 },
    #[error("ambient mismatch: ({0}, {1}) vs ({2}, {3})")]
    AmbientMismatch(usize, usize, usize, usize),
    #[error("exact oracle limited to dimension {limit}, got {dim}")]
    OracleTooLarge { dim: usize, limit: usize },
    #[error("audit failed: {0}")]
    Audit(String),
}
