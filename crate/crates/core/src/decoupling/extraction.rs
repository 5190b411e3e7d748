// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

//! Operator families built from the solved system components.

use serde::Serialize;

use super::certificate::Decoupling;
use super::selection::{accessor_factor, nomial_project};
use super::solve::SystemComponents;
use crate::closure::{generate_closure, ClosureOptions};
use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix, OrthonormalBasis, ToleranceConfig, I};
use crate::model::ControlModel;
use crate::operators::{cartan_su_basis, chevalley, nonidentity_words, ChevalleyLabel, Grade, PauliLetter, PauliWord};

/// A derived operator, its fitted scale against the direct construction,
/// and the relative distance left after scaling.
#[derive(Debug, Clone, Serialize)]
pub struct DerivedElement {
    pub label: String,
    #[serde(skip)]
    pub element: ComplexMatrix,
    pub scale: f64,
    pub residual: f64,
}

/// Least-squares real scale s with s·produced ≈ target.
pub fn fit_scale(produced: &ComplexMatrix, target: &ComplexMatrix) -> (f64, f64) {
    let p2 = produced.norm_sqr();
    if p2 == 0.0 {
        return (0.0, if target.norm() > 0.0 { 1.0 } else { 0.0 });
    }
    let s = produced.hs_dot(target) / p2;
    let fitted = produced.scaled(s);
    (s, fitted.relative_distance(target))
}

fn derive(label: String, produced: ComplexMatrix, target: &ComplexMatrix) -> DerivedElement {
    let (scale, residual) = fit_scale(&produced, target);
    DerivedElement {
        label,
        element: produced.scaled(scale),
        scale,
        residual,
    }
}

fn closure_of(gens: &[ComplexMatrix], tol: &ToleranceConfig, workers: Option<usize>, context: &str) -> Result<OrthonormalBasis> {
    let target = gens[0].dim().pow(2) - 1;
    let (basis, report) = generate_closure(gens, tol, &ClosureOptions { cap: None, workers })?;
    if report.dimension != target {
        return Err(Error::IncompleteClosure {
            context: context.into(),
            found: report.dimension,
            expected: target,
        });
    }
    Ok(basis.orthonormal().clone())
}

fn worst<'a>(items: impl IntoIterator<Item = &'a DerivedElement>) -> f64 {
    items.into_iter().map(|e| e.residual).fold(0.0, f64::max)
}

#[derive(Debug, Clone, Serialize)]
pub struct SystemExtraction {
    /// i h_j ⊗ 1, i x_j ⊗ 1, i y_j ⊗ 1 from the reference-word components.
    pub simple: Vec<DerivedElement>,
    pub closure_dim: usize,
    pub max_residual: f64,
    pub max_membership_residual: f64,
    /// i C ⊗ 1 for every Cartan basis element C.
    #[serde(skip)]
    pub family: Vec<ComplexMatrix>,
}

impl SystemExtraction {
    pub fn simple_factor(&self, n: usize, m: usize) -> Vec<ComplexMatrix> {
        let ident = PauliWord::identity(m);
        self.simple.iter().map(|e| nomial_project(&e.element, &ident, n)).collect()
    }

    fn find(&self, label: &str) -> &ComplexMatrix {
        &self.simple.iter().find(|e| e.label == label).expect("label present").element
    }
}

pub fn extract_system_operators(
    components: &SystemComponents,
    n: usize,
    m: usize,
    tol: &ToleranceConfig,
    workers: Option<usize>,
) -> Result<SystemExtraction> {
    for (label, rec) in &components.elements {
        let leak = super::certificate::word_leakage(&rec.element, &components.reference, n, m);
        if leak > tol.verify * rec.element.norm().max(1.0) {
            return Err(Error::WordMismatch(format!("component {label} leaks {leak:.3e} off {}", components.reference)));
        }
    }
    let chev = chevalley(n)?;
    let ident = ComplexMatrix::identity(1 << m);
    let direct = |t: &ComplexMatrix| kron(t, &ident).scaled_complex(I);
    let mut simple = Vec::with_capacity(3 * (n - 1));
    for j in 1..n {
        let get = |k| components.get(ChevalleyLabel { j, k }).expect("solved label");
        let (h, x, y) = (get(Grade::Zero), get(Grade::Plus), get(Grade::Minus));
        let pairs = [
            ("h", x.bracket(y), &chev.h[j - 1]),
            ("y", h.bracket(x), &chev.y[j - 1]),
            ("x", y.bracket(h), &chev.x[j - 1]),
        ];
        for (name, bracket, t) in pairs {
            simple.push(derive(format!("{name}{j}"), bracket.scaled(-0.5), &direct(t)));
        }
    }
    let factors: Vec<ComplexMatrix> = simple.iter().map(|e| nomial_project(&e.element, &PauliWord::identity(m), n)).collect();
    let basis = closure_of(&factors, tol, workers, "system block")?;
    let mut max_membership_residual: f64 = 0.0;
    let mut family = Vec::with_capacity(n * n - 1);
    for c in cartan_su_basis(n)? {
        let ic = c.scaled_complex(I);
        max_membership_residual = max_membership_residual.max(basis.residual(&ic)?);
        family.push(direct(&c));
    }
    Ok(SystemExtraction {
        max_residual: worst(&simple),
        simple,
        closure_dim: basis.len(),
        max_membership_residual,
        family,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PeeledTerm {
    pub link: usize,
    pub coefficient: f64,
    pub fitted: f64,
    pub relative_error: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AccessorExtraction {
    /// What is left after peeling every chain term, relative to the drift.
    pub remainder: f64,
    pub chain: Vec<PeeledTerm>,
    pub closure_dim: usize,
    pub target: usize,
    pub max_membership_residual: f64,
    /// i 1 ⊗ P for every non-identity word P.
    #[serde(skip)]
    pub family: Vec<(PauliWord, ComplexMatrix)>,
}

/// Removes the system Hamiltonian, the free accessor terms and every
/// certified nomial from the drift, leaving i 1 ⊗ H_A^I.
pub fn accessor_interaction(
    model: &ControlModel,
    decoupling: &Decoupling,
    system: &SystemExtraction,
    components: &SystemComponents,
) -> Result<ComplexMatrix> {
    let (n, m) = (model.n(), model.m());
    let mut rest = decoupling.base.clone();
    for (j, eps) in model.system().partial_sums().into_iter().enumerate() {
        rest.axpy(-eps, system.find(&format!("h{}", j + 1)));
    }
    for (idx, &omega) in model.accessor().frequencies().iter().enumerate() {
        rest.axpy(-omega, decoupling.controls.get(PauliLetter::Z, idx + 1)?);
    }
    for cert in &decoupling.certificates {
        rest -= &cert.produced;
        if cert.absorbed_identity != 0.0 {
            let f = components.absorbed.as_ref().ok_or_else(|| Error::Audit("absorbed term not solved".into()))?;
            let rotated = super::solve::rotate(&f.element, &components.reference, &cert.word, &decoupling.controls)?;
            rest.axpy(cert.absorbed_identity, &rotated);
        }
    }
    debug_assert_eq!(rest.dim(), n << m);
    Ok(rest)
}

pub fn extract_accessor_operators(
    model: &ControlModel,
    decoupling: &Decoupling,
    system: &SystemExtraction,
    components: &SystemComponents,
    tol: &ToleranceConfig,
    workers: Option<usize>,
) -> Result<AccessorExtraction> {
    let (n, m) = (model.n(), model.m());
    let controls = &decoupling.controls;
    let mut rest = accessor_interaction(model, decoupling, system, components)?;
    let start = decoupling.base.norm();
    let ident_n = ComplexMatrix::identity(n);
    let mut chain = Vec::new();
    let mut gens = Vec::new();
    for site in 1..=m {
        gens.push(accessor_factor(controls.get(PauliLetter::X, site)?, n));
        gens.push(accessor_factor(controls.get(PauliLetter::Y, site)?, n));
    }
    for (idx, (word, c)) in model.accessor().chain_terms().into_iter().enumerate() {
        let cy = controls.get(PauliLetter::Y, idx + 1)?;
        let doubled = rest.bracket(cy).bracket(cy);
        let direct = kron(&ident_n, &word.matrix()).scaled_complex(I);
        let (fitted, residual) = fit_scale(&direct, &doubled);
        let expected = -4.0 * c;
        let term = doubled.scaled(1.0 / fitted);
        rest.axpy(-c, &term);
        gens.push(accessor_factor(&term, n));
        chain.push(PeeledTerm {
            link: idx + 1,
            coefficient: c,
            fitted,
            relative_error: (fitted - expected).abs() / expected.abs(),
            residual,
        });
    }
    let remainder = if start > 0.0 { rest.norm() / start } else { rest.norm() };
    let basis = closure_of(&gens, tol, workers, "accessor block")?;
    let mut max_membership_residual: f64 = 0.0;
    let mut family = Vec::new();
    for word in nonidentity_words(m) {
        let p = word.matrix();
        max_membership_residual = max_membership_residual.max(basis.residual(&p.scaled_complex(I))?);
        family.push((word, kron(&ident_n, &p).scaled_complex(I)));
    }
    Ok(AccessorExtraction {
        remainder,
        chain,
        closure_dim: basis.len(),
        target: (1usize << (2 * m)) - 1,
        max_membership_residual,
        family,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CoupledExtraction {
    pub words: usize,
    pub transports: usize,
    pub max_transport_residual: f64,
    /// Smallest block dimension reached over all words.
    pub min_block_dim: usize,
    pub max_membership_residual: f64,
    /// i C ⊗ P for every Cartan element C and non-identity word P.
    #[serde(skip)]
    pub family: Vec<ComplexMatrix>,
}

/// Accessor words that carry `from` to `to` by successive commutators:
/// each intermediate step anticommutes with the word it acts on.
pub fn transport_path(from: &PauliWord, to: &PauliWord) -> Option<Vec<PauliWord>> {
    let step = |a: &PauliWord, b: &PauliWord| {
        let (_, q) = a.mul(b);
        (!a.commutes_with(&q)).then_some(q)
    };
    if from == to {
        return Some(Vec::new());
    }
    if let Some(q) = step(from, to) {
        return Some(vec![q]);
    }
    let m = from.len();
    nonidentity_words(m).into_iter().find_map(|u| {
        if &u == from || &u == to {
            return None;
        }
        Some(vec![step(from, &u)?, step(&u, to)?])
    })
}

pub fn extract_coupled_operators(
    components: &SystemComponents,
    system: &SystemExtraction,
    n: usize,
    m: usize,
    tol: &ToleranceConfig,
) -> Result<CoupledExtraction> {
    let chev = chevalley(n)?;
    let ident_n = ComplexMatrix::identity(n);
    let ad_factors = system.simple_factor(n, m);
    let cartan: Vec<ComplexMatrix> = cartan_su_basis(n)?.into_iter().map(|c| c.scaled_complex(I)).collect();
    let words = nonidentity_words(m);
    let reference = &components.reference;
    let mut out = CoupledExtraction {
        words: words.len(),
        transports: 0,
        max_transport_residual: 0.0,
        min_block_dim: usize::MAX,
        max_membership_residual: 0.0,
        family: Vec::with_capacity((n * n - 1) * words.len()),
    };
    for word in &words {
        let path = transport_path(reference, word).ok_or_else(|| Error::WordMismatch(format!("no path from {reference} to {word}")))?;
        let p_word = word.matrix();
        let mut block = OrthonormalBasis::new(n);
        let mut queue = Vec::new();
        for (label, rec) in &components.elements {
            let mut e = rec.element.clone();
            for q in &path {
                let iq = kron(&ident_n, &q.matrix()).scaled_complex(I);
                e = iq.bracket(&e);
            }
            let direct = kron(chev.get(*label), &p_word).scaled_complex(I);
            let (scale, residual) = fit_scale(&e, &direct);
            out.transports += 1;
            out.max_transport_residual = out.max_transport_residual.max(residual);
            let factor = nomial_project(&e.scaled(scale), word, n);
            if block.insert(&factor, tol)?.accepted() {
                queue.push(factor);
            }
        }
        while let Some(v) = queue.pop() {
            for t in &ad_factors {
                let c = t.bracket(&v);
                if c.norm() <= tol.independence {
                    continue;
                }
                if block.insert(&c, tol)?.accepted() {
                    queue.push(c);
                }
            }
        }
        out.min_block_dim = out.min_block_dim.min(block.len());
        for c in &cartan {
            out.max_membership_residual = out.max_membership_residual.max(block.residual(c)?);
            out.family.push(kron(c, &p_word));
        }
    }
    if out.min_block_dim != n * n - 1 {
        return Err(Error::IncompleteClosure {
            context: "coupled block".into(),
            found: out.min_block_dim,
            expected: n * n - 1,
        });
    }
    Ok(out)
}
