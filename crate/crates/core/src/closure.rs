// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

//! Dynamical Lie algebra by breadth-first commutator closure.
//!
//! Each round commutes the newest elements (the frontier) with every element
//! of lower index. Candidates are computed in parallel against a snapshot of
//! the basis and inserted serially in (frontier index, basis index) order, so
//! the basis is bit-identical for any worker count.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{project_traceless, ComplexMatrix, Insertion, OrthonormalBasis, ToleranceConfig};
use crate::model::{check_size_condition, coupling_rank_check, ControlModel, RankReport, SizeCondition};
use crate::par::Executor;

/// Pairs evaluated per parallel batch before serial insertion.
const CHUNK: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Index into the generator list.
    Seed(usize),
    /// Commutator of two earlier basis elements.
    Commutator(usize, usize),
}

#[derive(Debug, Clone)]
pub struct LieBasis {
    basis: OrthonormalBasis,
    provenance: Vec<Provenance>,
}

impl LieBasis {
    pub fn ambient_dim(&self) -> usize {
        self.basis.ambient_dim()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        self.basis.elements()
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn orthonormal(&self) -> &OrthonormalBasis {
        &self.basis
    }

    /// Membership test: relative residual against the span below `tol.verify`.
    pub fn contains(&self, element: &ComplexMatrix, tol: &ToleranceConfig) -> Result<(bool, f64)> {
        let residual = self.basis.residual(element)?;
        Ok((residual < tol.verify, residual))
    }

    /// Largest relative residual of [e_i, e_j] against the span over the
    /// given index pairs.
    pub fn bracket_defect(&self, pairs: &[(usize, usize)]) -> f64 {
        pairs
            .iter()
            .map(|&(i, j)| {
                let c = self.elements()[i].bracket(&self.elements()[j]);
                self.basis.residual(&c).unwrap_or(f64::INFINITY)
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Controllable,
    NotControllable,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClosureOptions {
    /// Stop once the basis reaches this size (defaults to d²−1).
    pub cap: Option<usize>,
    /// Worker threads; `None` uses every available core.
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conditions {
    pub size: SizeCondition,
    pub rank: RankReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub dimension: usize,
    pub target: usize,
    pub verdict: Verdict,
    pub rounds: usize,
    pub commutators_evaluated: u64,
    /// Basis size after seeding and after each round.
    pub growth: Vec<usize>,
    pub cap: usize,
    pub workers: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub conditions: Option<Conditions>,
    #[serde(skip)]
    pub wall_time: Duration,
}

pub fn generate_closure(
    generators: &[ComplexMatrix],
    tol: &ToleranceConfig,
    options: &ClosureOptions,
) -> Result<(LieBasis, ClosureReport)> {
    let start = Instant::now();
    tol.validate()?;
    let first = generators.first().ok_or(Error::EmptyGenerators)?;
    let d = first.dim();
    let target = d * d - 1;
    let cap = options.cap.unwrap_or(target).min(target);
    let executor = Executor::new(options.workers);

    let mut basis = OrthonormalBasis::new(d);
    let mut provenance = Vec::new();
    for (idx, g) in generators.iter().enumerate() {
        if g.dim() != d {
            return Err(Error::DimensionMismatch { left: d, right: g.dim() });
        }
        let deviation = g.skew_hermitian_deviation();
        if deviation > tol.hermiticity {
            return Err(Error::NotSkewHermitian { deviation });
        }
        let g = project_traceless(g);
        if g.norm() == 0.0 || basis.len() >= cap {
            continue;
        }
        if let Insertion::Accepted { .. } = basis.insert(&g, tol)? {
            provenance.push(Provenance::Seed(idx));
        }
    }

    let mut growth = vec![basis.len()];
    let mut rounds = 0;
    let mut evaluated = 0u64;
    let mut frontier_start = 0;
    while frontier_start < basis.len() && basis.len() < cap {
        rounds += 1;
        let snap = basis.len();
        let pairs: Vec<(usize, usize)> = (frontier_start..snap)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .collect();
        'round: for chunk in pairs.chunks(CHUNK) {
            let frozen = &basis;
            let candidates = executor.map(chunk, |&(i, j)| {
                let mut c = frozen.get(i).bracket(frozen.get(j));
                let norm = c.norm();
                if norm <= tol.independence {
                    return None;
                }
                c.scale_in_place(1.0 / norm);
                frozen.reduce_range(&mut c, 0..snap);
                Some(c)
            });
            evaluated += chunk.len() as u64;
            for (&(i, j), candidate) in chunk.iter().zip(candidates) {
                let Some(mut v) = candidate else { continue };
                basis.reduce_range(&mut v, snap..basis.len());
                if basis.push_reduced(v, tol).accepted() {
                    provenance.push(Provenance::Commutator(i, j));
                    if basis.len() >= cap {
                        break 'round;
                    }
                }
            }
        }
        growth.push(basis.len());
        frontier_start = snap;
    }

    let dimension = basis.len();
    let report = ClosureReport {
        dimension,
        target,
        verdict: if dimension == target {
            Verdict::Controllable
        } else {
            Verdict::NotControllable
        },
        rounds,
        commutators_evaluated: evaluated,
        growth,
        cap,
        workers: executor.workers(),
        conditions: None,
        wall_time: start.elapsed(),
    };
    Ok((LieBasis { basis, provenance }, report))
}

/// Closure of i·traceless(H₀) and the controls, with the feasibility
/// conditions attached.
pub fn controllability_verdict(
    model: &ControlModel,
    tol: &ToleranceConfig,
    options: &ClosureOptions,
) -> Result<(LieBasis, ClosureReport)> {
    let (basis, mut report) = generate_closure(&model.skew_generators(), tol, options)?;
    report.conditions = Some(Conditions {
        size: check_size_condition(model.n(), model.m()),
        rank: coupling_rank_check(model.coupling()),
    });
    Ok((basis, report))
}
