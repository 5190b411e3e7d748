// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact-arithmetic closure over the tensor basis {A_a ⊗ P_w}, where A_0 is
//! the identity, A_1.. is the Cartan basis of su(N) and P_w runs over all
//! Pauli words. Dimensions come from fraction-free integer elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::closure::{generate_closure, ClosureOptions};
use crate::config::ModelConfig;
use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix, ToleranceConfig, I};
use crate::operators::{cartan_su_basis, PauliLetter, PauliWord};

/// Default ceiling on the ambient dimension 2^M·N.
pub const DEFAULT_DIM_LIMIT: usize = 16;

/// Significant digits accepted when reading a float as a decimal rational.
const MAX_SIGNIFICANT_DIGITS: usize = 12;

type Key = (usize, usize);
type Coeff = Ratio<i64>;

/// Basis of u(N): identity first, then the Cartan basis of su(N).
fn system_basis(n: usize) -> Result<Vec<ComplexMatrix>> {
    let mut out = vec![ComplexMatrix::identity(n)];
    out.extend(cartan_su_basis(n)?);
    Ok(out)
}

/// Index of h_j in [`system_basis`].
pub fn cartan_h_index(n: usize, j: usize) -> usize {
    1 + n * (n - 1) + (j - 1)
}

/// Index of x_j (`antisymmetric = false`) or y_j in [`system_basis`].
pub fn cartan_pair_index(n: usize, j: usize, k: usize, antisymmetric: bool) -> usize {
    // pairs (a, b), a < b, in lexicographic order
    let before: usize = (1..j).map(|a| n - a).sum();
    1 + 2 * (before + (k - j - 1)) + usize::from(antisymmetric)
}

fn exact_entry(z: num_complex::Complex64) -> (i64, i64) {
    let (re, im) = (z.re.round(), z.im.round());
    debug_assert!((z.re - re).abs() < 1e-12 && (z.im - im).abs() < 1e-12);
    (re as i64, im as i64)
}

/// Expansion of a Gaussian-integer matrix over the u(N) basis, as
/// (real, imaginary) coefficient pairs.
fn decompose(p: &ComplexMatrix) -> Vec<(Coeff, Coeff)> {
    let n = p.dim();
    let mut out = vec![(Coeff::zero(), Coeff::zero()); n * n];
    let half = Coeff::new(1, 2);
    for j in 1..=n {
        for k in j + 1..=n {
            let (ar, ai) = exact_entry(p[(j - 1, k - 1)]);
            let (br, bi) = exact_entry(p[(k - 1, j - 1)]);
            // p_jk = α − iβ, p_kj = α + iβ
            out[cartan_pair_index(n, j, k, false)] = (half * (ar + br), half * (ai + bi));
            out[cartan_pair_index(n, j, k, true)] = (half * (bi - ai), half * (ar - br));
        }
    }
    let diag: Vec<(i64, i64)> = (0..n).map(|i| exact_entry(p[(i, i)])).collect();
    let nn = n as i64;
    let mean = (
        Coeff::new(diag.iter().map(|d| d.0).sum(), nn),
        Coeff::new(diag.iter().map(|d| d.1).sum(), nn),
    );
    out[0] = mean;
    let (mut er, mut ei) = (Coeff::zero(), Coeff::zero());
    for (j, d) in diag.iter().take(n - 1).enumerate() {
        er += Coeff::from(d.0) - mean.0;
        ei += Coeff::from(d.1) - mean.1;
        out[cartan_h_index(n, j + 1)] = (er, ei);
    }
    out
}

/// Structure constants of u(N) in the basis of [`system_basis`]:
/// [A_a, A_b] = i Σ f_abc A_c and {A_a, A_b} = Σ d_abc A_c.
#[derive(Debug, Clone)]
pub struct SystemTable {
    n: usize,
    f: Vec<Vec<(usize, Coeff)>>,
    d: Vec<Vec<(usize, Coeff)>>,
}

impl SystemTable {
    pub fn new(n: usize) -> Result<Self> {
        let basis = system_basis(n)?;
        let size = basis.len();
        let mut f = Vec::with_capacity(size * size);
        let mut d = Vec::with_capacity(size * size);
        for a in &basis {
            for b in &basis {
                let ab = a.matmul(b);
                let ba = b.matmul(a);
                let comm = decompose(&(&ab - &ba));
                let anti = decompose(&(&ab + &ba));
                f.push(
                    comm.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.1.is_zero())
                        .map(|(idx, c)| {
                            debug_assert!(c.0.is_zero());
                            (idx, c.1)
                        })
                        .collect(),
                );
                d.push(
                    anti.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.0.is_zero())
                        .map(|(idx, c)| {
                            debug_assert!(c.1.is_zero());
                            (idx, c.0)
                        })
                        .collect(),
                );
            }
        }
        Ok(Self { n, f, d })
    }

    pub fn size(&self) -> usize {
        self.n * self.n
    }

    pub fn f(&self, a: usize, b: usize) -> &[(usize, Coeff)] {
        &self.f[a * self.size() + b]
    }

    pub fn d(&self, a: usize, b: usize) -> &[(usize, Coeff)] {
        &self.d[a * self.size() + b]
    }
}

/// Commutators of basis tensors A_a ⊗ P_w, factorized into the u(N) table
/// and the Pauli product rule.
#[derive(Debug, Clone)]
pub struct StructureTable {
    n: usize,
    m: usize,
    system: SystemTable,
}

impl StructureTable {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        Ok(Self {
            n,
            m,
            system: SystemTable::new(n)?,
        })
    }

    pub fn ambient(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    /// [A_a⊗P_w, A_b⊗P_v] = i Σ r · A_c⊗P_u, returned as ((c, u), r).
    pub fn bracket(&self, (a, w): Key, (b, v): Key) -> Vec<(Key, Coeff)> {
        let (phase, u) = PauliWord::from_index(self.m, w).mul(&PauliWord::from_index(self.m, v));
        let u = u.index();
        // P_w P_v = i^k P_u and P_v P_w = i^{−k} P_u
        let (table, sign) = match phase {
            0 => (self.system.f(a, b), 1),
            2 => (self.system.f(a, b), -1),
            1 => (self.system.d(a, b), 1),
            _ => (self.system.d(a, b), -1),
        };
        table.iter().map(|&(c, r)| ((c, u), r * sign)).collect()
    }
}

/// i^phase · Σ c · A_a⊗P_w with rational c; phase is 0 (Hermitian) or 1
/// (anti-Hermitian).
#[derive(Debug, Clone, PartialEq)]
pub struct ExactOperator {
    n: usize,
    m: usize,
    phase: u8,
    terms: BTreeMap<Key, BigRational>,
}

impl ExactOperator {
    /// The zero operator of the given phase.
    pub fn zero(n: usize, m: usize, phase: u8) -> Self {
        Self {
            n,
            m,
            phase: phase % 2,
            terms: BTreeMap::new(),
        }
    }

    pub fn ambient(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn is_anti_hermitian(&self) -> bool {
        self.phase == 1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Key, BigRational> {
        &self.terms
    }

    pub fn add_term(&mut self, system_index: usize, word: &PauliWord, c: BigRational) {
        self.add_key((system_index, word.index()), c);
    }

    fn add_key(&mut self, key: Key, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        let mut out = Self::zero(self.n, self.m, self.phase);
        if !factor.is_zero() {
            out.terms = self.terms.iter().map(|(k, c)| (*k, c * factor)).collect();
        }
        out
    }

    /// Drops the A_0 ⊗ identity component.
    pub fn traceless(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&(0, 0));
        out
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let basis = system_basis(self.n)?;
        let dim = self.n << self.m;
        let mut out = ComplexMatrix::zeros(dim);
        for (&(a, w), c) in &self.terms {
            let c = num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN);
            out.axpy(c, &kron(&basis[a], &PauliWord::from_index(self.m, w).matrix()));
        }
        Ok(if self.phase == 1 { out.scaled_complex(I) } else { out })
    }
}

pub fn exact_commutator(table: &StructureTable, a: &ExactOperator, b: &ExactOperator) -> Result<ExactOperator> {
    if a.ambient() != b.ambient() || a.ambient() != table.ambient() {
        return Err(Error::AmbientMismatch(a.n, a.m, b.n, b.m));
    }
    // [i^p X, i^q Y] = i^{p+q+1} Σ r …
    let exponent = (a.phase + b.phase + 1) % 4;
    let (phase, sign) = if exponent >= 2 { (exponent - 2, -1) } else { (exponent, 1) };
    let mut acc: BTreeMap<Key, BigRational> = BTreeMap::new();
    for (&ka, ca) in &a.terms {
        for (&kb, cb) in &b.terms {
            let product = ca * cb;
            for (kc, r) in table.bracket(ka, kb) {
                let r = BigRational::new(BigInt::from(*r.numer() * sign), BigInt::from(*r.denom()));
                *acc.entry(kc).or_insert_with(BigRational::zero) += &product * r;
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
    Ok(ExactOperator {
        n: a.n,
        m: a.m,
        phase,
        terms: acc,
    })
}

/// Echelon form over the integers: primitive rows keyed by leading index.
#[derive(Debug, Clone, Default)]
struct Echelon {
    rows: BTreeMap<Key, BTreeMap<Key, BigInt>>,
}

fn primitive(mut row: BTreeMap<Key, BigInt>) -> BTreeMap<Key, BigInt> {
    let content = row.values().fold(BigInt::zero(), |g, c| g.gcd(c));
    let lead_negative = row.values().next().is_some_and(|c| c.is_negative());
    if !content.is_zero() && (!content.is_one() || lead_negative) {
        let content = if lead_negative { -content } else { content };
        for c in row.values_mut() {
            *c /= &content;
        }
    }
    row
}

fn to_integer_row(op: &ExactOperator) -> BTreeMap<Key, BigInt> {
    let lcm = op.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    op.terms
        .iter()
        .map(|(k, c)| (*k, (c * BigRational::from(lcm.clone())).to_integer()))
        .collect()
}

impl Echelon {
    fn len(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row`; returns the primitive residual if it is independent.
    fn insert(&mut self, mut row: BTreeMap<Key, BigInt>) -> Option<BTreeMap<Key, BigInt>> {
        loop {
            let (&lead, lead_coeff) = row.iter().next()?;
            let Some(pivot_row) = self.rows.get(&lead) else {
                let row = primitive(row);
                self.rows.insert(lead, row.clone());
                return Some(row);
            };
            let lead_coeff = lead_coeff.clone();
            let pivot_coeff = &pivot_row[&lead];
            // row ← p·row − c·pivot
            for c in row.values_mut() {
                *c *= pivot_coeff;
            }
            for (k, c) in pivot_row {
                let e = row.entry(*k).or_insert_with(BigInt::zero);
                *e -= &lead_coeff * c;
            }
            row.retain(|_, c| !c.is_zero());
            row = primitive(row);
        }
    }
}

/// Exact dimension of the Lie algebra generated by `generators`
/// (identity components dropped), capped at `cap` when given.
pub fn exact_closure_dim(generators: &[ExactOperator], cap: Option<usize>) -> Result<usize> {
    exact_closure_dim_limited(generators, cap, DEFAULT_DIM_LIMIT)
}

pub fn exact_closure_dim_limited(generators: &[ExactOperator], cap: Option<usize>, dim_limit: usize) -> Result<usize> {
    let first = generators.first().ok_or(Error::EmptyGenerators)?;
    let (n, m) = first.ambient();
    let dim = n << m;
    if dim > dim_limit {
        return Err(Error::OracleTooLarge { dim, limit: dim_limit });
    }
    let cap = cap.unwrap_or(dim * dim - 1).min(dim * dim - 1);
    let table = StructureTable::new(n, m)?;
    let mut echelon = Echelon::default();
    let mut elements: Vec<ExactOperator> = Vec::new();
    let as_element = |row: BTreeMap<Key, BigInt>| ExactOperator {
        n,
        m,
        phase: 1,
        terms: row.into_iter().map(|(k, c)| (k, BigRational::from(c))).collect(),
    };
    for g in generators {
        if g.ambient() != (n, m) {
            return Err(Error::AmbientMismatch(n, m, g.n, g.m));
        }
        if !g.is_anti_hermitian() {
            return Err(Error::NotSkewHermitian { deviation: 1.0 });
        }
        if elements.len() >= cap {
            break;
        }
        if let Some(row) = echelon.insert(to_integer_row(&g.traceless())) {
            elements.push(as_element(row));
        }
    }
    let mut frontier = 0;
    while frontier < elements.len() && elements.len() < cap {
        let snap = elements.len();
        for i in frontier..snap {
            for j in 0..i {
                let c = exact_commutator(&table, &elements[i], &elements[j])?;
                if let Some(row) = echelon.insert(to_integer_row(&c)) {
                    elements.push(as_element(row));
                    if elements.len() >= cap {
                        return Ok(echelon.len());
                    }
                }
            }
        }
        frontier = snap;
    }
    Ok(echelon.len())
}

/// Reads a float as the decimal rational its shortest representation names.
pub fn parse_rational(path: &str, value: f64) -> Result<BigRational> {
    let irrational = || Error::IrrationalCoefficient {
        path: path.to_string(),
        value,
    };
    if !value.is_finite() {
        return Err(irrational());
    }
    let text = format!("{value}");
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.as_str()),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    let all: String = format!("{int_part}{frac_part}");
    let significant = all.trim_start_matches('0').trim_end_matches('0').len();
    if significant > MAX_SIGNIFICANT_DIGITS {
        return Err(irrational());
    }
    let numer: BigInt = all.parse().map_err(|_| irrational())?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = BigRational::new(numer, denom);
    Ok(if negative { -r } else { r })
}

/// Anti-Hermitian generators i·traceless(H₀), i·1⊗σ_x^j, i·1⊗σ_y^j with
/// the config values read as exact rationals.
pub fn exact_generators(cfg: &ModelConfig) -> Result<Vec<ExactOperator>> {
    cfg.build()?;
    let (n, m) = (cfg.system.dim, cfg.accessor.qubits);
    let mut drift = ExactOperator::zero(n, m, 1);
    let id = PauliWord::identity(m);

    let energies = cfg
        .system
        .energies
        .iter()
        .enumerate()
        .map(|(i, &e)| parse_rational(&format!("system.energies[{i}]"), e))
        .collect::<Result<Vec<_>>>()?;
    let mean = energies.iter().fold(BigRational::zero(), |a, e| a + e) / BigRational::from(BigInt::from(n));
    let mut eps = BigRational::zero();
    for (j, e) in energies.iter().take(n - 1).enumerate() {
        eps += e - &mean;
        drift.add_term(cartan_h_index(n, j + 1), &id, eps.clone());
    }
    for (i, &w) in cfg.accessor.frequencies.iter().enumerate() {
        let w = parse_rational(&format!("accessor.frequencies[{i}]"), w)?;
        drift.add_term(0, &PauliWord::single(m, i + 1, PauliLetter::Z), w);
    }
    for (i, &c) in cfg.accessor.chain_couplings.iter().enumerate() {
        let c = parse_rational(&format!("accessor.chain_couplings[{i}]"), c)?;
        let word = PauliWord::single(m, i + 1, PauliLetter::X).with_letter(i + 2, PauliLetter::X);
        drift.add_term(0, &word, c);
    }
    for (idx, entry) in cfg.coupling.iter().enumerate() {
        let g = parse_rational(&format!("coupling[{idx}].g"), entry.g)?;
        let word: PauliWord = entry.word.parse()?;
        let a = match entry.k {
            0 => cartan_h_index(n, entry.j),
            1 => cartan_pair_index(n, entry.j, entry.j + 1, false),
            _ => cartan_pair_index(n, entry.j, entry.j + 1, true),
        };
        drift.add_term(a, &word, g);
    }
    let mut out = vec![drift.traceless()];
    for site in 1..=m {
        for letter in [PauliLetter::X, PauliLetter::Y] {
            let mut c = ExactOperator::zero(n, m, 1);
            c.add_term(0, &PauliWord::single(m, site, letter), BigRational::one());
            out.push(c);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub numeric: usize,
    pub exact: usize,
    pub agree: bool,
}

/// Runs the floating-point and exact engines on the same model.
pub fn agreement_check(cfg: &ModelConfig, tol: &ToleranceConfig, options: &ClosureOptions) -> Result<AgreementReport> {
    let exact_gens = exact_generators(cfg)?;
    let (model, _) = cfg.build()?;
    let (_, report) = generate_closure(&model.skew_generators(), tol, options)?;
    let exact = exact_closure_dim(&exact_gens, options.cap)?;
    Ok(AgreementReport {
        numeric: report.dimension,
        exact,
        agree: exact == report.dimension,
    })
}
