// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

//! Replayable chains that isolate one coupling term (nomial) from the drift.
//!
//! Words are processed in layers of increasing z-count. A layer starts from
//! the drift minus the free accessor part minus every certificate of lower
//! layers. For a word w the chain then commutes with σ_x at each z site of w
//! and with σ_z at every other site, which kills every surviving term whose
//! letters do not fit w. Selection operators at the x/y sites pick w's
//! letters, a second σ_x commutator restores the z sites, and a final rescale
//! fixes the accumulated ±2 factors.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::selection::{letter_ad, letter_select, nomial_project, Controls, SelectionVariant};
use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix, ToleranceConfig, I};
use crate::model::ControlModel;
use crate::operators::{chevalley, words_with_z_count, PauliLetter, PauliWord};
use crate::par::Executor;

/// One elementary operation on the running element.
#[derive(Debug, Clone, PartialEq)]
pub enum Step {
    /// Start from i·H₀.
    Drift,
    /// Subtract coeff · i·1⊗σ_letter^site.
    SubControl { letter: PauliLetter, site: usize, coeff: f64 },
    /// Subtract the produced element of an earlier certificate.
    SubCertificate(PauliWord),
    /// Replace the element e by [i·1⊗σ_letter^site, e].
    Commute { letter: PauliLetter, site: usize },
    Select { variant: SelectionVariant, site: usize },
    Scale(f64),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Drift => write!(f, "drift"),
            Step::SubControl { letter, site, coeff } => write!(f, "sub(ctrl:{}@{site}*{coeff})", letter.as_char()),
            Step::SubCertificate(w) => write!(f, "sub(cert:{w})"),
            Step::Commute { letter, site } => write!(f, "comm(ctrl:{}@{site})", letter.as_char()),
            Step::Select { variant, site } => write!(f, "sel({variant}@{site})"),
            Step::Scale(s) => write!(f, "scale({s})"),
        }
    }
}

impl Serialize for Step {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Everything a chain may refer to.
pub struct ChainContext<'a> {
    pub base: &'a ComplexMatrix,
    pub controls: &'a Controls,
    pub certified: &'a BTreeMap<PauliWord, ComplexMatrix>,
}

/// Runs `steps` in order. The same function builds and replays certificates.
pub fn execute(steps: &[Step], ctx: &ChainContext<'_>) -> Result<ComplexMatrix> {
    let mut e = ComplexMatrix::zeros(ctx.controls.dim());
    for step in steps {
        match step {
            Step::Drift => e = ctx.base.clone(),
            Step::SubControl { letter, site, coeff } => e.axpy(-coeff, ctx.controls.get(*letter, *site)?),
            Step::SubCertificate(w) => {
                let cert = ctx
                    .certified
                    .get(w)
                    .ok_or_else(|| Error::WordMismatch(format!("no certificate for {w}")))?;
                e -= cert;
            }
            Step::Commute { letter, site } => e = ctx.controls.commute(*letter, *site, &e)?,
            Step::Select { variant, site } => e = ctx.controls.select(*variant, *site, &e)?,
            Step::Scale(s) => e.scale_in_place(*s),
        }
    }
    Ok(e)
}

/// Factor picked up by a single Pauli word along `steps` (ignoring
/// subtractions), or None when the word is annihilated.
pub fn track_word(word: &PauliWord, steps: &[Step]) -> Option<(f64, PauliWord)> {
    let mut factor = 1.0;
    let mut w = word.clone();
    for step in steps {
        let (f, letter, site) = match step {
            Step::Commute { letter, site } => {
                let (f, out) = letter_ad(*letter, w.letter(*site))?;
                (f, out, *site)
            }
            Step::Select { variant, site } => {
                let (f, out) = letter_select(*variant, w.letter(*site))?;
                (f, out, *site)
            }
            Step::Scale(s) => {
                factor *= s;
                continue;
            }
            _ => continue,
        };
        factor *= f;
        w = w.with_letter(site, letter);
    }
    Some((factor, w))
}

#[derive(Debug, Clone, Serialize)]
pub struct DecouplingCertificate {
    pub word: PauliWord,
    /// Number of z letters in the word.
    pub layer: usize,
    /// The Hermitian system factor Σ g s_j^k claimed by the certificate.
    #[serde(skip)]
    pub system_part: ComplexMatrix,
    /// Chain couplings whose word equals this one; they ride along as an
    /// identity system factor.
    pub absorbed_identity: f64,
    pub chain: Vec<Step>,
    #[serde(skip)]
    pub produced: ComplexMatrix,
    pub scale: f64,
    /// Scale predicted from the single-letter rules.
    pub nominal_scale: f64,
    pub residual: f64,
    /// Largest relative weight of the produced element on any other word.
    pub leakage: f64,
}

impl DecouplingCertificate {
    /// i·(system_part + absorbed·1) ⊗ P_word
    pub fn target(&self) -> ComplexMatrix {
        let mut sys = self.system_part.clone();
        if self.absorbed_identity != 0.0 {
            sys.axpy(self.absorbed_identity, &ComplexMatrix::identity(sys.dim()));
        }
        kron(&sys, &self.word.matrix()).scaled_complex(I)
    }

    pub fn chain_strings(&self) -> Vec<String> {
        self.chain.iter().map(|s| s.to_string()).collect()
    }
}

/// The certificates together with what is needed to replay them.
#[derive(Debug, Clone)]
pub struct Decoupling {
    pub base: ComplexMatrix,
    pub controls: Controls,
    pub certificates: Vec<DecouplingCertificate>,
    pub layer_sizes: Vec<usize>,
}

impl Decoupling {
    pub fn produced_map(&self) -> BTreeMap<PauliWord, ComplexMatrix> {
        self.certificates
            .iter()
            .map(|c| (c.word.clone(), c.produced.clone()))
            .collect()
    }

    pub fn get(&self, word: &PauliWord) -> Option<&DecouplingCertificate> {
        self.certificates.iter().find(|c| &c.word == word)
    }

    /// Re-executes a certificate chain from the drift.
    pub fn replay(&self, cert: &DecouplingCertificate) -> Result<ComplexMatrix> {
        let certified = self.produced_map();
        execute(
            &cert.chain,
            &ChainContext {
                base: &self.base,
                controls: &self.controls,
                certified: &certified,
            },
        )
    }

    pub fn max_residual(&self) -> f64 {
        self.certificates.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// Chain prefix for a layer: drift, free accessor removal, lower layers.
fn layer_prefix(model: &ControlModel, lower: &[PauliWord]) -> Vec<Step> {
    let mut steps = vec![Step::Drift];
    for (idx, &omega) in model.accessor().frequencies().iter().enumerate() {
        if omega != 0.0 {
            steps.push(Step::SubControl {
                letter: PauliLetter::Z,
                site: idx + 1,
                coeff: omega,
            });
        }
    }
    steps.extend(lower.iter().cloned().map(Step::SubCertificate));
    steps
}

/// Steps after the prefix that isolate `word`, without the final scale.
pub fn isolation_steps(word: &PauliWord) -> Vec<Step> {
    let sites = 1..=word.len();
    let mut steps = Vec::new();
    for site in sites.clone() {
        let letter = if word.letter(site) == PauliLetter::Z {
            PauliLetter::X
        } else {
            PauliLetter::Z
        };
        steps.push(Step::Commute { letter, site });
    }
    for site in sites.clone() {
        if let Some(variant) = SelectionVariant::producing(word.letter(site)) {
            steps.push(Step::Select { variant, site });
        }
    }
    for site in sites {
        if word.letter(site) == PauliLetter::Z {
            steps.push(Step::Commute {
                letter: PauliLetter::X,
                site,
            });
        }
    }
    steps
}

/// Extracts every nomial of the interaction Hamiltonian without judging
/// the residuals.
pub fn decouple_interaction_unchecked(model: &ControlModel, workers: Option<usize>) -> Result<Decoupling> {
    let (n, m) = (model.n(), model.m());
    let controls = Controls::new(n, m);
    let base = model.drift().scaled_complex(I);
    let base_norm = base.norm().max(f64::MIN_POSITIVE);
    let chev = chevalley(n)?;
    let executor = Executor::new(workers);
    let chain_terms = model.accessor().chain_terms();

    let mut certified: BTreeMap<PauliWord, ComplexMatrix> = BTreeMap::new();
    let mut lower: Vec<PauliWord> = Vec::new();
    let mut certificates = Vec::new();
    let mut layer_sizes = Vec::new();
    for layer in 0..=m {
        let words = words_with_z_count(m, layer);
        layer_sizes.push(words.len());
        let prefix = layer_prefix(model, &lower);
        let ctx = ChainContext {
            base: &base,
            controls: &controls,
            certified: &certified,
        };
        let results = executor.map(&words, |word| -> Result<DecouplingCertificate> {
            let mut chain = prefix.clone();
            let suffix = isolation_steps(word);
            let (factor, out_word) = track_word(word, &suffix).expect("isolation keeps its own word");
            debug_assert_eq!(&out_word, word);
            chain.extend(suffix);
            let raw = execute(&chain, &ctx)?;

            let system_part = model.coupling().system_part(word, &chev);
            let absorbed_identity: f64 = chain_terms.iter().filter(|(w, _)| w == word).map(|(_, c)| c).sum();
            let mut cert = DecouplingCertificate {
                word: word.clone(),
                layer,
                system_part,
                absorbed_identity,
                chain: Vec::new(),
                produced: ComplexMatrix::zeros(0),
                scale: 0.0,
                nominal_scale: 1.0 / factor,
                residual: 0.0,
                leakage: 0.0,
            };
            let target = cert.target();
            let (t_norm, p_norm2) = (target.norm(), raw.norm_sqr());
            let scale = if t_norm > 0.0 && p_norm2 > 0.0 {
                raw.hs_dot(&target) / p_norm2
            } else {
                cert.nominal_scale
            };
            chain.push(Step::Scale(scale));
            let mut produced = raw;
            produced.scale_in_place(scale);
            let reference = if t_norm > 0.0 { t_norm } else { base_norm };
            cert.residual = (&produced - &target).norm() / reference;
            cert.leakage = word_leakage(&produced, word, n, m) / reference;
            cert.chain = chain;
            cert.scale = scale;
            cert.produced = produced;
            Ok(cert)
        });
        for cert in results {
            let cert = cert?;
            certified.insert(cert.word.clone(), cert.produced.clone());
            certificates.push(cert);
        }
        lower.extend(words);
    }
    Ok(Decoupling {
        base,
        controls,
        certificates,
        layer_sizes,
    })
}

/// Largest Frobenius weight of `element` on words other than `word`.
pub fn word_leakage(element: &ComplexMatrix, word: &PauliWord, n: usize, m: usize) -> f64 {
    let scale = ((1usize << m) as f64).sqrt();
    (0..1usize << (2 * m))
        .map(|idx| PauliWord::from_index(m, idx))
        .filter(|w| w != word)
        .map(|w| nomial_project(element, &w, n).norm() * scale)
        .fold(0.0, f64::max)
}

/// Extracts every nomial and fails on the first residual above
/// `tol.verify`.
pub fn decouple_interaction(model: &ControlModel, tol: &ToleranceConfig, workers: Option<usize>) -> Result<Decoupling> {
    let run = decouple_interaction_unchecked(model, workers)?;
    if let Some(bad) = run.certificates.iter().find(|c| c.residual > tol.verify) {
        return Err(Error::ResidualTooLarge {
            context: format!("certificate {} ({})", bad.word, bad.chain_strings().join(" ")),
            residual: bad.residual,
            tolerance: tol.verify,
        });
    }
    Ok(run)
}
