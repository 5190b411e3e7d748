// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

//! The indirect-control model: an N-level system coupled to an M-qubit XY
//! chain, with classical fields acting on the chain only.
//!
//! The drift is `H₀ = H_S ⊗ 1 + 1 ⊗ H_A + H_I` and the controls are
//! `i·1⊗σ_x^j`, `i·1⊗σ_y^j` for every accessor site `j`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron, project_traceless, ComplexMatrix, I};
use crate::operators::{
    chevalley, chevalley_labels, coupling_words, ChevalleyLabel, ChevalleySet, Grade, PauliLetter,
    PauliWord,
};

/// System energies; stored raw, used after a shift to zero trace.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    raw: Vec<f64>,
}

impl SystemSpec {
    pub fn new(energies: Vec<f64>) -> Result<Self> {
        if energies.len() < 2 {
            return Err(Error::SystemTooSmall(energies.len()));
        }
        Ok(Self { raw: energies })
    }

    pub fn n(&self) -> usize {
        self.raw.len()
    }

    pub fn raw_energies(&self) -> &[f64] {
        &self.raw
    }

    pub fn mean(&self) -> f64 {
        self.raw.iter().sum::<f64>() / self.raw.len() as f64
    }

    /// Energies shifted by their mean.
    pub fn energies(&self) -> Vec<f64> {
        let mean = self.mean();
        self.raw.iter().map(|e| e - mean).collect()
    }

    /// ε_i = E₁ + … + E_i over the shifted energies, i = 1..N−1.
    pub fn partial_sums(&self) -> Vec<f64> {
        self.energies()
            .iter()
            .take(self.n() - 1)
            .scan(0.0, |acc, e| {
                *acc += e;
                Some(*acc)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccessorSpec {
    frequencies: Vec<f64>,
    chain_couplings: Vec<f64>,
}

impl AccessorSpec {
    pub fn new(frequencies: Vec<f64>, chain_couplings: Vec<f64>) -> Result<Self> {
        if frequencies.is_empty() {
            return Err(Error::EmptyAccessor);
        }
        if chain_couplings.len() + 1 != frequencies.len() {
            return Err(Error::DimensionMismatch {
                left: frequencies.len() - 1,
                right: chain_couplings.len(),
            });
        }
        if let Some(link) = chain_couplings.iter().position(|&c| c == 0.0) {
            return Err(Error::ZeroChainCoupling(link + 1));
        }
        Ok(Self {
            frequencies,
            chain_couplings,
        })
    }

    pub fn m(&self) -> usize {
        self.frequencies.len()
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn chain_couplings(&self) -> &[f64] {
        &self.chain_couplings
    }

    /// The nearest-neighbour words x_j x_{j+1} paired with their couplings.
    pub fn chain_terms(&self) -> Vec<(PauliWord, f64)> {
        let m = self.m();
        self.chain_couplings
            .iter()
            .enumerate()
            .map(|(idx, &c)| {
                let w = PauliWord::single(m, idx + 1, PauliLetter::X).with_letter(idx + 2, PauliLetter::X);
                (w, c)
            })
            .collect()
    }
}

/// Sparse coefficients g for s_j^k ⊗ (word), words over {X, Y, Z} only.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingTensor {
    n: usize,
    m: usize,
    entries: BTreeMap<(PauliWord, ChevalleyLabel), f64>,
}

impl CouplingTensor {
    pub fn new(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Sets one coefficient, replacing any previous value.
    pub fn set(&mut self, word: PauliWord, j: usize, k: Grade, g: f64) -> Result<()> {
        if word.len() != self.m {
            return Err(Error::InvalidWord {
                word: word.to_string(),
                reason: format!("length {} but accessor has {} qubits", word.len(), self.m),
            });
        }
        if word.contains_identity_letter() {
            return Err(Error::InvalidWord {
                word: word.to_string(),
                reason: "word contains 'i'".into(),
            });
        }
        if j == 0 || j >= self.n {
            return Err(Error::IndexOutOfRange { n: self.n, i: j, j });
        }
        if !g.is_finite() {
            return Err(Error::Config {
                path: format!("coupling {word} j={j}"),
                message: "coefficient must be finite".into(),
            });
        }
        self.entries.insert((word, ChevalleyLabel { j, k }), g);
        Ok(())
    }

    pub fn get(&self, word: &PauliWord, label: ChevalleyLabel) -> f64 {
        self.entries.get(&(word.clone(), label)).copied().unwrap_or(0.0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&PauliWord, ChevalleyLabel, f64)> {
        self.entries.iter().map(|((w, l), g)| (w, *l, *g))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The 3^M × 3(N−1) coefficient matrix: rows in lexicographic word order,
    /// columns h_1..h_{N−1}, x_1..x_{N−1}, y_1..y_{N−1}.
    pub fn coefficient_rows(&self) -> Vec<Vec<f64>> {
        let labels = chevalley_labels(self.n);
        coupling_words(self.m)
            .iter()
            .map(|w| labels.iter().map(|&l| self.get(w, l)).collect())
            .collect()
    }

    /// Σ_{j,k} g_w^{j(k)} s_j^k, the system factor of the nomial on `word`.
    pub fn system_part(&self, word: &PauliWord, chev: &ChevalleySet) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.n);
        for label in chevalley_labels(self.n) {
            let g = self.get(word, label);
            if g != 0.0 {
                out.axpy(g, chev.get(label));
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct SystemHamiltonian {
    pub matrix: ComplexMatrix,
    /// Amount subtracted from every raw energy.
    pub mean_shift: f64,
    /// Largest entrywise gap between Σ E_i e_ii and Σ ε_i h_i.
    pub form_deviation: f64,
}

pub fn build_system_hamiltonian(spec: &SystemSpec) -> Result<SystemHamiltonian> {
    let n = spec.n();
    let diagonal = ComplexMatrix::from_diag(&spec.energies());
    let chev = chevalley(n)?;
    let mut cartan_form = ComplexMatrix::zeros(n);
    for (h, eps) in chev.h.iter().zip(spec.partial_sums()) {
        cartan_form.axpy(eps, h);
    }
    Ok(SystemHamiltonian {
        form_deviation: diagonal.max_abs_diff(&cartan_form),
        matrix: diagonal,
        mean_shift: spec.mean(),
    })
}

#[derive(Debug, Clone)]
pub struct AccessorHamiltonian {
    /// Σ ω_i σ_z^i
    pub free: ComplexMatrix,
    /// Σ c_i σ_x^i σ_x^{i+1}
    pub chain: ComplexMatrix,
    pub total: ComplexMatrix,
}

pub fn build_accessor_hamiltonian(spec: &AccessorSpec) -> Result<AccessorHamiltonian> {
    if let Some(link) = spec.chain_couplings.iter().position(|&c| c == 0.0) {
        return Err(Error::ZeroChainCoupling(link + 1));
    }
    let m = spec.m();
    let dim = 1usize << m;
    let mut free = ComplexMatrix::zeros(dim);
    for (site, &omega) in spec.frequencies.iter().enumerate() {
        free.axpy(omega, &PauliWord::single(m, site + 1, PauliLetter::Z).matrix());
    }
    let mut chain = ComplexMatrix::zeros(dim);
    for (word, c) in spec.chain_terms() {
        chain.axpy(c, &word.matrix());
    }
    let total = &free + &chain;
    Ok(AccessorHamiltonian { free, chain, total })
}

pub fn build_interaction_hamiltonian(coupling: &CouplingTensor) -> Result<ComplexMatrix> {
    let chev = chevalley(coupling.n)?;
    let dim = coupling.n << coupling.m;
    let mut out = ComplexMatrix::zeros(dim);
    let mut words: Vec<&PauliWord> = coupling.entries.keys().map(|(w, _)| w).collect();
    words.dedup();
    for word in words {
        let system = coupling.system_part(word, &chev);
        out += &kron(&system, &word.matrix());
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct ControlGenerator {
    pub letter: PauliLetter,
    pub site: usize,
    /// i·1_N ⊗ σ_letter^site
    pub matrix: ComplexMatrix,
}

/// `i·1⊗σ_x^j, i·1⊗σ_y^j` for j = 1..M; x before y, sites ascending.
pub fn control_generators(n: usize, m: usize) -> Vec<ControlGenerator> {
    let id = ComplexMatrix::identity(n);
    (1..=m)
        .flat_map(|site| [PauliLetter::X, PauliLetter::Y].map(|l| (site, l)))
        .map(|(site, letter)| ControlGenerator {
            letter,
            site,
            matrix: kron(&id, &PauliWord::single(m, site, letter).matrix()).scaled_complex(I),
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ControlModel {
    system: SystemSpec,
    accessor: AccessorSpec,
    coupling: CouplingTensor,
    system_hamiltonian: SystemHamiltonian,
    accessor_hamiltonian: AccessorHamiltonian,
    interaction: ComplexMatrix,
    drift: ComplexMatrix,
    controls: Vec<ControlGenerator>,
    warnings: Vec<String>,
}

impl ControlModel {
    pub fn new(system: SystemSpec, accessor: AccessorSpec, coupling: CouplingTensor) -> Result<Self> {
        let (n, m) = (system.n(), accessor.m());
        if coupling.n != n || coupling.m != m {
            return Err(Error::Config {
                path: "coupling".into(),
                message: format!(
                    "tensor built for (N={}, M={}) but model is (N={n}, M={m})",
                    coupling.n, coupling.m
                ),
            });
        }
        let system_hamiltonian = build_system_hamiltonian(&system)?;
        let accessor_hamiltonian = build_accessor_hamiltonian(&accessor)?;
        let interaction = build_interaction_hamiltonian(&coupling)?;
        let mut warnings = Vec::new();
        if system_hamiltonian.mean_shift.abs() > 0.0 {
            warnings.push(format!(
                "system energies shifted by {} to make H_S traceless",
                -system_hamiltonian.mean_shift
            ));
        }
        let drift = assemble_drift(&system_hamiltonian.matrix, &accessor_hamiltonian.total, &interaction);
        Ok(Self {
            controls: control_generators(n, m),
            system,
            accessor,
            coupling,
            system_hamiltonian,
            accessor_hamiltonian,
            interaction,
            drift,
            warnings,
        })
    }

    pub fn n(&self) -> usize {
        self.system.n()
    }

    pub fn m(&self) -> usize {
        self.accessor.m()
    }

    /// Total Hilbert-space dimension 2^M·N.
    pub fn dim(&self) -> usize {
        self.n() << self.m()
    }

    pub fn system(&self) -> &SystemSpec {
        &self.system
    }

    pub fn accessor(&self) -> &AccessorSpec {
        &self.accessor
    }

    pub fn coupling(&self) -> &CouplingTensor {
        &self.coupling
    }

    pub fn system_hamiltonian(&self) -> &SystemHamiltonian {
        &self.system_hamiltonian
    }

    pub fn accessor_hamiltonian(&self) -> &AccessorHamiltonian {
        &self.accessor_hamiltonian
    }

    pub fn interaction(&self) -> &ComplexMatrix {
        &self.interaction
    }

    pub fn drift(&self) -> &ComplexMatrix {
        &self.drift
    }

    pub fn controls(&self) -> &[ControlGenerator] {
        &self.controls
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// i·traceless(H₀) followed by the control generators.
    pub fn skew_generators(&self) -> Vec<ComplexMatrix> {
        let mut out = vec![project_traceless(&self.drift).scaled_complex(I)];
        out.extend(self.controls.iter().map(|c| c.matrix.clone()));
        out
    }
}

/// H_S ⊗ 1 + 1 ⊗ H_A + H_I
pub fn assemble_drift(system: &ComplexMatrix, accessor: &ComplexMatrix, interaction: &ComplexMatrix) -> ComplexMatrix {
    let mut drift = kron(system, &ComplexMatrix::identity(accessor.dim()));
    drift += &kron(&ComplexMatrix::identity(system.dim()), accessor);
    drift += interaction;
    drift
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeCondition {
    pub n: usize,
    pub m: usize,
    /// 3^M ≥ 3(N−1)
    pub holds: bool,
    /// 3^M − 3(N−1)
    pub margin: i128,
    /// 2^M ≥ 2(N−1), the bound of the scheme with a system excitation field.
    pub prior_holds: bool,
    pub prior_margin: i128,
}

impl SizeCondition {
    pub fn reason(&self) -> String {
        let lhs = pow_i128(3, self.m);
        let rhs = 3 * (self.n as i128 - 1);
        if self.holds {
            format!("{lhs} >= {rhs}")
        } else {
            format!("{lhs} < {rhs}")
        }
    }
}

fn pow_i128(base: i128, exp: usize) -> i128 {
    (0..exp).fold(1i128, |acc, _| acc.saturating_mul(base))
}

pub fn check_size_condition(n: usize, m: usize) -> SizeCondition {
    let margin = pow_i128(3, m) - 3 * (n as i128 - 1);
    let prior_margin = pow_i128(2, m) - 2 * (n as i128 - 1);
    SizeCondition {
        n,
        m,
        holds: margin >= 0,
        margin,
        prior_holds: prior_margin >= 0,
        prior_margin,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    pub rank: usize,
    pub required: usize,
    pub feasible: bool,
    /// Rows (words) of a nonsingular 3(N−1)-square submatrix, when feasible.
    pub subset: Option<Vec<PauliWord>>,
    pub determinant: Option<f64>,
}

/// Relative threshold below which a normalized row residual counts as zero.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Greedy row selection by pivoted modified Gram–Schmidt on unit-normalized
/// rows (column-pivoted QR of the transpose). Returns the pivot rows in the
/// order they were chosen.
pub fn pivoted_row_rank(rows: &[Vec<f64>], tol: f64) -> Vec<usize> {
    let mut work: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 0.0 {
                r.iter().map(|x| x / norm).collect()
            } else {
                r.clone()
            }
        })
        .collect();
    let mut used = vec![false; rows.len()];
    let mut pivots = Vec::new();
    loop {
        let best = work
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, r)| (i, r.iter().map(|x| x * x).sum::<f64>().sqrt()))
            .fold(None, |best: Option<(usize, f64)>, (i, norm)| match best {
                Some((_, b)) if b >= norm => best,
                _ => Some((i, norm)),
            });
        let Some((pivot, norm)) = best else { break };
        if norm <= tol {
            break;
        }
        used[pivot] = true;
        pivots.push(pivot);
        let q: Vec<f64> = work[pivot].iter().map(|x| x / norm).collect();
        for (i, row) in work.iter_mut().enumerate() {
            if used[i] {
                continue;
            }
            let c: f64 = row.iter().zip(&q).map(|(a, b)| a * b).sum();
            for (a, b) in row.iter_mut().zip(&q) {
                *a -= c * b;
            }
        }
    }
    pivots
}

pub fn coupling_rank_check(coupling: &CouplingTensor) -> RankReport {
    let rows = coupling.coefficient_rows();
    let required = 3 * (coupling.n - 1);
    let pivots = pivoted_row_rank(&rows, RANK_TOLERANCE);
    let rank = pivots.len();
    let feasible = rank == required;
    let (subset, determinant) = if feasible {
        let mut chosen = pivots.clone();
        chosen.sort_unstable();
        let words = coupling_words(coupling.m);
        let square = DMatrix::from_fn(required, required, |r, c| rows[chosen[r]][c]);
        (
            Some(chosen.iter().map(|&i| words[i].clone()).collect()),
            Some(square.determinant()),
        )
    } else {
        (None, None)
    };
    RankReport {
        rank,
        required,
        feasible,
        subset,
        determinant,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    fn diag_two_level() -> CouplingTensor {
        let mut t = CouplingTensor::new(2, 1);
        t.set(word("x"), 1, Grade::Plus, 1.0).unwrap();
        t.set(word("y"), 1, Grade::Minus, 1.0).unwrap();
        t.set(word("z"), 1, Grade::Zero, 1.0).unwrap();
        t
    }

    #[test]
    fn system_hamiltonian_forms() {
        let h = build_system_hamiltonian(&SystemSpec::new(vec![1.0, -1.0]).unwrap()).unwrap();
        assert_eq!(h.matrix, ComplexMatrix::from_diag(&[1.0, -1.0]));

        let h3 = build_system_hamiltonian(&SystemSpec::new(vec![1.0, 0.0, -1.0]).unwrap()).unwrap();
        assert_eq!(h3.matrix, ComplexMatrix::from_diag(&[1.0, 0.0, -1.0]));
        assert!(h3.form_deviation < 1e-15);

        let shifted = SystemSpec::new(vec![3.0, 1.0]).unwrap();
        let h = build_system_hamiltonian(&shifted).unwrap();
        assert_eq!(h.matrix, ComplexMatrix::from_diag(&[1.0, -1.0]));
        assert_eq!(h.mean_shift, 2.0);
        let model = ControlModel::new(shifted, AccessorSpec::new(vec![1.0], vec![]).unwrap(), CouplingTensor::new(2, 1)).unwrap();
        assert_eq!(model.warnings().len(), 1);
        assert_eq!(SystemSpec::new(vec![1.0]).unwrap_err(), Error::SystemTooSmall(1));
    }

    #[test]
    fn accessor_hamiltonian_assembly() {
        let one = build_accessor_hamiltonian(&AccessorSpec::new(vec![1.0], vec![]).unwrap()).unwrap();
        assert_eq!(one.free, PauliLetter::Z.matrix());
        assert_eq!(one.chain, ComplexMatrix::zeros(2));

        let two = build_accessor_hamiltonian(&AccessorSpec::new(vec![1.0, 2.0], vec![0.5]).unwrap()).unwrap();
        let id = ComplexMatrix::identity(2);
        let z = PauliLetter::Z.matrix();
        let x = PauliLetter::X.matrix();
        let mut expected = kron(&z, &id);
        expected.axpy(2.0, &kron(&id, &z));
        expected.axpy(0.5, &kron(&x, &x));
        assert!(two.total.max_abs_diff(&expected) < 1e-15);

        let err = AccessorSpec::new(vec![1.0, 2.0], vec![0.0]).unwrap_err();
        assert_eq!(err.to_string(), "zero chain coupling at link 1");
    }

    #[test]
    fn interaction_hamiltonian_examples() {
        let mut single = CouplingTensor::new(2, 1);
        single.set(word("x"), 1, Grade::Plus, 1.0).unwrap();
        let xx = kron(&PauliLetter::X.matrix(), &PauliLetter::X.matrix());
        assert_eq!(build_interaction_hamiltonian(&single).unwrap(), xx);

        assert_eq!(build_interaction_hamiltonian(&CouplingTensor::new(2, 1)).unwrap(), ComplexMatrix::zeros(4));

        let h = build_interaction_hamiltonian(&diag_two_level()).unwrap();
        let mut expected = ComplexMatrix::zeros(4);
        for l in PauliLetter::XYZ {
            expected += &kron(&l.matrix(), &l.matrix());
        }
        assert!(h.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn tensor_rejects_identity_letters() {
        let mut t = CouplingTensor::new(3, 2);
        let err = t.set(word("iz"), 1, Grade::Zero, 1.0).unwrap_err();
        assert!(err.to_string().contains("word contains 'i'"));
        assert!(t.set(word("x"), 1, Grade::Zero, 1.0).is_err());
        assert!(t.set(word("xx"), 3, Grade::Zero, 1.0).is_err());
    }

    #[test]
    fn drift_matches_two_level_display() {
        // ω_S σz⊗1 + ω_A 1⊗σz + Σ g σ_α⊗σ_β with g_xx = g_yy = g_zz = 1
        let (ws, wa) = (1.0, 2.0);
        let model = ControlModel::new(
            SystemSpec::new(vec![ws, -ws]).unwrap(),
            AccessorSpec::new(vec![wa], vec![]).unwrap(),
            diag_two_level(),
        )
        .unwrap();
        let id = ComplexMatrix::identity(2);
        let mut expected = kron(&PauliLetter::Z.matrix(), &id).scaled(ws);
        expected.axpy(wa, &kron(&id, &PauliLetter::Z.matrix()));
        for l in PauliLetter::XYZ {
            expected += &kron(&l.matrix(), &l.matrix());
        }
        assert!(model.drift().max_abs_diff(&expected) < 1e-15);
        assert!(model.drift().is_hermitian(1e-15));
        assert!(model.drift().is_traceless(1e-15));
    }

    #[test]
    fn zero_model_drift_is_system_only() {
        let model = ControlModel::new(
            SystemSpec::new(vec![0.5, -0.5]).unwrap(),
            AccessorSpec::new(vec![0.0, 0.0], vec![1e-3]).unwrap(),
            CouplingTensor::new(2, 2),
        )
        .unwrap();
        let mut expected = kron(&ComplexMatrix::from_diag(&[0.5, -0.5]), &ComplexMatrix::identity(4));
        expected.axpy(1e-3, &kron(&ComplexMatrix::identity(2), &word("xx").matrix()));
        assert!(model.drift().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn controls_are_ordered_and_skew() {
        assert_eq!(control_generators(2, 1).len(), 2);
        let gens = control_generators(3, 3);
        assert_eq!(gens.len(), 6);
        assert_eq!((gens[0].letter, gens[0].site), (PauliLetter::X, 1));
        assert_eq!((gens[1].letter, gens[1].site), (PauliLetter::Y, 1));
        assert_eq!((gens[5].letter, gens[5].site), (PauliLetter::Y, 3));
        for g in &gens {
            assert!(g.matrix.is_skew_hermitian(1e-15));
            assert!(g.matrix.is_traceless(1e-15));
        }
    }

    #[test]
    fn size_condition_examples() {
        let c = check_size_condition(2, 1);
        assert!(c.holds);
        assert_eq!(c.margin, 0);
        let c = check_size_condition(3, 1);
        assert!(!c.holds);
        assert_eq!(c.reason(), "3 < 6");
        let c = check_size_condition(4, 2);
        assert!(c.holds);
        assert_eq!(c.margin, 0);
        assert!(!check_size_condition(5, 2).holds);
        // 2^M ≥ 2(N−1)
        assert!(!check_size_condition(4, 2).prior_holds);
        assert!(check_size_condition(2, 1).prior_holds);
    }

    #[test]
    fn rank_check_examples() {
        let report = coupling_rank_check(&diag_two_level());
        assert!(report.feasible);
        assert!((report.determinant.unwrap().abs() - 1.0).abs() < 1e-14);

        let empty = coupling_rank_check(&CouplingTensor::new(3, 2));
        assert_eq!(empty.rank, 0);
        assert!(!empty.feasible);
        assert!(empty.subset.is_none());

        // rows (yx, yy, yz, zx, zy, zz) against columns (1(0), 2(0), 1(1), 2(1), 1(−1), 2(−1))
        let mut t = CouplingTensor::new(3, 2);
        let cols = [(1, Grade::Zero), (2, Grade::Zero), (1, Grade::Plus), (2, Grade::Plus), (1, Grade::Minus), (2, Grade::Minus)];
        for (w, (j, k)) in ["yx", "yy", "yz", "zx", "zy", "zz"].iter().zip(cols) {
            t.set(word(w), j, k, 1.0).unwrap();
        }
        let report = coupling_rank_check(&t);
        assert!(report.feasible);
        assert_eq!(report.determinant, Some(1.0));
        let subset: Vec<String> = report.subset.unwrap().iter().map(|w| w.to_string()).collect();
        assert_eq!(subset, vec!["yx", "yy", "yz", "zx", "zy", "zz"]);
    }
}
