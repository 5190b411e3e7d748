// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

//! Linear inversion of the coupling matrix on certified nomials.
//!
//! Every certificate is first rotated to the reference word x…x, so row w
//! reads R_w = Σ_l g_{w,l} E_l (+ a_w F) with E_l = i s_l ⊗ P_ref and, where a
//! chain coupling shares the word, F = i 1 ⊗ P_ref. The unknowns follow from
//! the pseudo-inverse of the coefficient matrix.

use nalgebra::DMatrix;
use serde::Serialize;

use super::certificate::{execute, track_word, ChainContext, Decoupling, Step};
use super::selection::Controls;
use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix, ToleranceConfig, I};
use crate::model::{coupling_rank_check, CouplingTensor, RANK_TOLERANCE};
use crate::operators::{chevalley, chevalley_labels, ChevalleyLabel, PauliLetter, PauliWord};

/// Commutator steps that turn the letters of `from` into those of `to`,
/// followed by the exact rescale. Identity letters must match.
pub fn rotation_steps(from: &PauliWord, to: &PauliWord) -> Result<Vec<Step>> {
    if from.len() != to.len() {
        return Err(Error::WordMismatch(format!("{from} vs {to}")));
    }
    let mut steps = Vec::new();
    for site in 1..=from.len() {
        let (a, b) = (from.letter(site), to.letter(site));
        if a == b {
            continue;
        }
        if a == PauliLetter::I || b == PauliLetter::I {
            return Err(Error::WordMismatch(format!("cannot rotate {from} into {to}")));
        }
        steps.push(Step::Commute {
            letter: a.third(b),
            site,
        });
    }
    let (factor, out) = track_word(from, &steps).expect("distinct letters rotate");
    debug_assert_eq!(&out, to);
    steps.push(Step::Scale(1.0 / factor));
    Ok(steps)
}

/// Rotates an element supported on `from` to `to`.
pub fn rotate(element: &ComplexMatrix, from: &PauliWord, to: &PauliWord, controls: &Controls) -> Result<ComplexMatrix> {
    let mut chain = vec![Step::Drift];
    chain.extend(rotation_steps(from, to)?);
    execute(
        &chain,
        &ChainContext {
            base: element,
            controls,
            certified: &Default::default(),
        },
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct RecoveredElement {
    pub label: String,
    #[serde(skip)]
    pub element: ComplexMatrix,
    /// Relative distance to the directly built i s ⊗ P_ref.
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub reference_word: PauliWord,
    pub rows: usize,
    pub unknowns: usize,
    pub rank: usize,
    pub required: usize,
    pub absorbed_words: Vec<PauliWord>,
    pub condition_number: f64,
    pub lsq_residual: f64,
    pub max_recovery_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SystemComponents {
    pub reference: PauliWord,
    /// i s_l ⊗ P_ref in coupling-column order.
    pub elements: Vec<(ChevalleyLabel, RecoveredElement)>,
    /// i 1 ⊗ P_ref when a chain coupling rode along with a certificate.
    pub absorbed: Option<RecoveredElement>,
    pub report: SolveReport,
}

impl SystemComponents {
    pub fn get(&self, label: ChevalleyLabel) -> Option<&ComplexMatrix> {
        self.elements.iter().find(|(l, _)| *l == label).map(|(_, e)| &e.element)
    }
}

fn singular_rank(values: &[f64]) -> usize {
    let max = values.iter().cloned().fold(0.0, f64::max);
    values.iter().filter(|&&s| s > max * RANK_TOLERANCE && s > 0.0).count()
}

pub fn solve_system_components(
    decoupling: &Decoupling,
    coupling: &CouplingTensor,
    tol: &ToleranceConfig,
) -> Result<SystemComponents> {
    let (n, m) = (coupling.n(), coupling.m());
    let rank_report = coupling_rank_check(coupling);
    if !rank_report.feasible {
        return Err(Error::Infeasible {
            rank: rank_report.rank,
            required: rank_report.required,
        });
    }
    let reference = PauliWord::uniform(m, PauliLetter::X);
    let labels = chevalley_labels(n);
    let absorbed_words: Vec<PauliWord> = decoupling
        .certificates
        .iter()
        .filter(|c| c.absorbed_identity != 0.0)
        .map(|c| c.word.clone())
        .collect();
    let unknowns = labels.len() + usize::from(!absorbed_words.is_empty());
    let rows = decoupling.certificates.len();

    let coefficients = DMatrix::from_fn(rows, unknowns, |r, c| {
        let cert = &decoupling.certificates[r];
        if c < labels.len() {
            coupling.get(&cert.word, labels[c])
        } else {
            cert.absorbed_identity
        }
    });
    let svd = coefficients.clone().svd(true, true);
    let sv: Vec<f64> = svd.singular_values.iter().cloned().collect();
    let rank = singular_rank(&sv);
    if rank < unknowns {
        return Err(Error::AbsorbedTerm { rank, required: unknowns });
    }
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    let pinv = svd
        .pseudo_inverse(smax * RANK_TOLERANCE)
        .map_err(|e| Error::Audit(e.to_string()))?;

    let rotated = decoupling
        .certificates
        .iter()
        .map(|c| rotate(&c.produced, &c.word, &reference, &decoupling.controls))
        .collect::<Result<Vec<_>>>()?;

    let dim = decoupling.controls.dim();
    let solved: Vec<ComplexMatrix> = (0..unknowns)
        .map(|u| {
            let mut acc = ComplexMatrix::zeros(dim);
            for (r, rot) in rotated.iter().enumerate() {
                let w = pinv[(u, r)];
                if w != 0.0 {
                    acc.axpy(w, rot);
                }
            }
            acc
        })
        .collect();

    let (mut num, mut den) = (0.0, 0.0);
    for (r, rot) in rotated.iter().enumerate() {
        let mut fit = ComplexMatrix::zeros(dim);
        for (u, s) in solved.iter().enumerate() {
            fit.axpy(coefficients[(r, u)], s);
        }
        num += (&fit - rot).norm_sqr();
        den += rot.norm_sqr();
    }
    let lsq_residual = if den > 0.0 { (num / den).sqrt() } else { 0.0 };

    let chev = chevalley(n)?;
    let p_ref = reference.matrix();
    let recovered = |label: String, element: ComplexMatrix, direct: ComplexMatrix| RecoveredElement {
        residual: element.relative_distance(&direct),
        label,
        element,
    };
    let elements: Vec<(ChevalleyLabel, RecoveredElement)> = labels
        .iter()
        .zip(&solved)
        .map(|(&l, e)| {
            let direct = kron(chev.get(l), &p_ref).scaled_complex(I);
            (l, recovered(l.to_string(), e.clone(), direct))
        })
        .collect();
    let absorbed = (!absorbed_words.is_empty()).then(|| {
        let direct = kron(&ComplexMatrix::identity(n), &p_ref).scaled_complex(I);
        recovered("1".into(), solved[labels.len()].clone(), direct)
    });
    let max_recovery_residual = elements
        .iter()
        .map(|(_, e)| e.residual)
        .chain(absorbed.iter().map(|e| e.residual))
        .fold(0.0, f64::max);
    if max_recovery_residual > tol.verify {
        return Err(Error::ResidualTooLarge {
            context: "system component solve".into(),
            residual: max_recovery_residual,
            tolerance: tol.verify,
        });
    }
    Ok(SystemComponents {
        reference: reference.clone(),
        elements,
        absorbed,
        report: SolveReport {
            reference_word: reference,
            rows,
            unknowns,
            rank,
            required: unknowns,
            absorbed_words,
            condition_number: if smin > 0.0 { smax / smin } else { f64::INFINITY },
            lsq_residual,
            max_recovery_residual,
        },
    })
}
