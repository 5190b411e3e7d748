// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

//! Named operators: Pauli letters and words over the accessor, the Chevalley
//! generators of su(N), and the full Cartan basis of su(N).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub const XYZ: [PauliLetter; 3] = [PauliLetter::X, PauliLetter::Y, PauliLetter::Z];
    pub const ALL: [PauliLetter; 4] = [PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z];

    pub fn matrix(self) -> ComplexMatrix {
        let o = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            PauliLetter::I => ComplexMatrix::identity(2),
            PauliLetter::X => ComplexMatrix::from_rows(&[&[o, one], &[one, o]]),
            PauliLetter::Y => ComplexMatrix::from_rows(&[&[o, -i], &[i, o]]),
            PauliLetter::Z => ComplexMatrix::from_diag(&[1.0, -1.0]),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'i',
            PauliLetter::X => 'x',
            PauliLetter::Y => 'y',
            PauliLetter::Z => 'z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_lowercase() {
            'i' => Some(PauliLetter::I),
            'x' => Some(PauliLetter::X),
            'y' => Some(PauliLetter::Y),
            'z' => Some(PauliLetter::Z),
            _ => None,
        }
    }

    /// `self · other = i^phase · letter`, phase taken mod 4.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> (u8, Self) {
        use PauliLetter::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (X, X) | (Y, Y) | (Z, Z) => (0, I),
            (X, Y) => (1, Z),
            (Y, X) => (3, Z),
            (Y, Z) => (1, X),
            (Z, Y) => (3, X),
            (Z, X) => (1, Y),
            (X, Z) => (3, Y),
        }
    }

    /// Index in I, X, Y, Z order.
    pub fn index(self) -> usize {
        self as usize
    }

    /// The letter that is neither `self` nor `other` (both must be distinct
    /// non-identity letters).
    pub fn third(self, other: Self) -> Self {
        use PauliLetter::*;
        match (self, other) {
            (X, Y) | (Y, X) => Z,
            (Y, Z) | (Z, Y) => X,
            (Z, X) | (X, Z) => Y,
            _ => panic!("third letter needs two distinct non-identity letters"),
        }
    }
}

/// Levi-Civita symbol on non-identity letters.
pub fn levi_civita(a: PauliLetter, b: PauliLetter, c: PauliLetter) -> f64 {
    use PauliLetter::*;
    match (a, b, c) {
        (X, Y, Z) | (Y, Z, X) | (Z, X, Y) => 1.0,
        (X, Z, Y) | (Z, Y, X) | (Y, X, Z) => -1.0,
        _ => 0.0,
    }
}

/// A tensor product of Pauli letters; site 1 is the leftmost factor.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliWord(Vec<PauliLetter>);

impl PauliWord {
    pub fn new(letters: Vec<PauliLetter>) -> Self {
        Self(letters)
    }

    pub fn identity(m: usize) -> Self {
        Self(vec![PauliLetter::I; m])
    }

    /// Word with `letter` on the 1-based `site` and identity elsewhere.
    pub fn single(m: usize, site: usize, letter: PauliLetter) -> Self {
        let mut w = Self::identity(m);
        w.0[site - 1] = letter;
        w
    }

    pub fn uniform(m: usize, letter: PauliLetter) -> Self {
        Self(vec![letter; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[PauliLetter] {
        &self.0
    }

    /// Letter at the 1-based `site`.
    pub fn letter(&self, site: usize) -> PauliLetter {
        self.0[site - 1]
    }

    pub fn with_letter(&self, site: usize, letter: PauliLetter) -> Self {
        let mut w = self.clone();
        w.0[site - 1] = letter;
        w
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&l| l == PauliLetter::I)
    }

    pub fn contains_identity_letter(&self) -> bool {
        self.0.contains(&PauliLetter::I)
    }

    pub fn count(&self, letter: PauliLetter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    /// Base-4 index with site 1 most significant, letters ordered I, X, Y, Z.
    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, l| acc * 4 + l.index())
    }

    pub fn from_index(m: usize, mut index: usize) -> Self {
        let mut letters = vec![PauliLetter::I; m];
        for slot in letters.iter_mut().rev() {
            *slot = PauliLetter::ALL[index % 4];
            index /= 4;
        }
        Self(letters)
    }

    /// `self · other = i^phase · word`, phase mod 4.
    pub fn mul(&self, other: &Self) -> (u8, Self) {
        assert_eq!(self.len(), other.len());
        let mut phase = 0u8;
        let letters = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| {
                let (p, l) = a.mul(b);
                phase = (phase + p) % 4;
                l
            })
            .collect();
        (phase, Self(letters))
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        let anti = self
            .0
            .iter()
            .zip(&other.0)
            .filter(|(&a, &b)| a != PauliLetter::I && b != PauliLetter::I && a != b)
            .count();
        anti % 2 == 0
    }

    pub fn matrix(&self) -> ComplexMatrix {
        pauli_word_matrix(self)
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::InvalidWord {
                word: s.to_string(),
                reason: "empty word".into(),
            });
        }
        s.chars()
            .map(|c| {
                PauliLetter::from_char(c).ok_or_else(|| Error::InvalidWord {
                    word: s.to_string(),
                    reason: format!("unknown letter '{c}'"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl Serialize for PauliWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Grade `k` of the Chevalley generator s_j^k: `Plus` ↦ x_j, `Zero` ↦ h_j,
/// `Minus` ↦ y_j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Grade {
    Zero,
    Plus,
    Minus,
}

impl Grade {
    /// Column order used by coupling matrices: all h, then all x, then all y.
    pub const ORDER: [Grade; 3] = [Grade::Zero, Grade::Plus, Grade::Minus];

    pub fn value(self) -> i8 {
        match self {
            Grade::Zero => 0,
            Grade::Plus => 1,
            Grade::Minus => -1,
        }
    }
}

impl From<Grade> for i8 {
    fn from(g: Grade) -> i8 {
        g.value()
    }
}

impl TryFrom<i8> for Grade {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            0 => Ok(Grade::Zero),
            1 => Ok(Grade::Plus),
            -1 => Ok(Grade::Minus),
            other => Err(format!("grade must be -1, 0 or 1, got {other}")),
        }
    }
}

/// Label of one Chevalley generator s_j^k (j is 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChevalleyLabel {
    pub j: usize,
    pub k: Grade,
}

impl fmt::Display for ChevalleyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.k {
            Grade::Zero => "h",
            Grade::Plus => "x",
            Grade::Minus => "y",
        };
        write!(f, "{name}{}", self.j)
    }
}

/// All 3(N−1) labels in coupling-matrix column order.
pub fn chevalley_labels(n: usize) -> Vec<ChevalleyLabel> {
    Grade::ORDER
        .iter()
        .flat_map(|&k| (1..n).map(move |j| ChevalleyLabel { j, k }))
        .collect()
}

/// e_ij with 1-based indices.
pub fn unit_matrix(n: usize, i: usize, j: usize) -> Result<ComplexMatrix> {
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::IndexOutOfRange { n, i, j });
    }
    let mut m = ComplexMatrix::zeros(n);
    m[(i - 1, j - 1)] = Complex64::new(1.0, 0.0);
    Ok(m)
}

#[derive(Debug, Clone)]
pub struct ChevalleySet {
    pub n: usize,
    pub h: Vec<ComplexMatrix>,
    pub x: Vec<ComplexMatrix>,
    pub y: Vec<ComplexMatrix>,
}

impl ChevalleySet {
    /// s_j^k for 1-based `j`.
    pub fn s(&self, j: usize, k: Grade) -> &ComplexMatrix {
        match k {
            Grade::Plus => &self.x[j - 1],
            Grade::Zero => &self.h[j - 1],
            Grade::Minus => &self.y[j - 1],
        }
    }

    pub fn get(&self, label: ChevalleyLabel) -> &ComplexMatrix {
        self.s(label.j, label.k)
    }

    pub fn len(&self) -> usize {
        3 * (self.n - 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// h_j = e_jj − e_{j+1,j+1}, x_j = e_{j,j+1} + e_{j+1,j}, y_j = i(e_{j+1,j} − e_{j,j+1}).
/// The sign of y_j makes chevalley(2) exactly (σ_z, σ_x, σ_y).
pub fn chevalley(n: usize) -> Result<ChevalleySet> {
    if n < 2 {
        return Err(Error::SystemTooSmall(n));
    }
    let i = Complex64::new(0.0, 1.0);
    let mut set = ChevalleySet {
        n,
        h: Vec::with_capacity(n - 1),
        x: Vec::with_capacity(n - 1),
        y: Vec::with_capacity(n - 1),
    };
    for j in 1..n {
        let e_jj = unit_matrix(n, j, j)?;
        let e_kk = unit_matrix(n, j + 1, j + 1)?;
        let e_jk = unit_matrix(n, j, j + 1)?;
        let e_kj = unit_matrix(n, j + 1, j)?;
        set.h.push(&e_jj - &e_kk);
        set.x.push(&e_jk + &e_kj);
        set.y.push((&e_kj - &e_jk).scaled_complex(i));
    }
    Ok(set)
}

/// Hermitian traceless basis of su(N): for each j < k the pair
/// e_jk + e_kj, i(e_kj − e_jk) in lexicographic order, then h_1 … h_{N−1}.
pub fn cartan_su_basis(n: usize) -> Result<Vec<ComplexMatrix>> {
    if n < 2 {
        return Err(Error::SystemTooSmall(n));
    }
    let i = Complex64::new(0.0, 1.0);
    let mut out = Vec::with_capacity(n * n - 1);
    for j in 1..=n {
        for k in j + 1..=n {
            let e_jk = unit_matrix(n, j, k)?;
            let e_kj = unit_matrix(n, k, j)?;
            out.push(&e_jk + &e_kj);
            out.push((&e_kj - &e_jk).scaled_complex(i));
        }
    }
    out.extend(chevalley(n)?.h);
    Ok(out)
}

pub fn pauli_word_matrix(word: &PauliWord) -> ComplexMatrix {
    word.letters()
        .iter()
        .fold(ComplexMatrix::identity(1), |acc, l| kron(&acc, &l.matrix()))
}

/// Words of length `m` over `alphabet`, lexicographic in I < X < Y < Z.
pub fn enumerate_words(m: usize, alphabet: &[PauliLetter]) -> Vec<PauliWord> {
    let mut letters: Vec<PauliLetter> = alphabet.to_vec();
    letters.sort();
    letters.dedup();
    if letters.is_empty() {
        return Vec::new();
    }
    let mut words = vec![Vec::new()];
    for _ in 0..m {
        words = words
            .into_iter()
            .flat_map(|w: Vec<PauliLetter>| {
                letters.iter().map(move |&l| {
                    let mut next = w.clone();
                    next.push(l);
                    next
                })
            })
            .collect();
    }
    words.into_iter().map(PauliWord::new).collect()
}

/// The 3^M coupling words over {X, Y, Z}.
pub fn coupling_words(m: usize) -> Vec<PauliWord> {
    enumerate_words(m, &PauliLetter::XYZ)
}

/// Coupling words with exactly `z` letters Z, in lexicographic order.
pub fn words_with_z_count(m: usize, z: usize) -> Vec<PauliWord> {
    coupling_words(m)
        .into_iter()
        .filter(|w| w.count(PauliLetter::Z) == z)
        .collect()
}

/// All 4^M − 1 non-identity words.
pub fn nonidentity_words(m: usize) -> Vec<PauliWord> {
    enumerate_words(m, &PauliLetter::ALL)
        .into_iter()
        .filter(|w| !w.is_identity())
        .collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, hs_inner, OrthonormalBasis, ToleranceConfig, I};

    #[test]
    fn unit_matrices() {
        let e12 = unit_matrix(2, 1, 2).unwrap();
        assert_eq!(e12[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(e12.norm_sqr(), 1.0);
        assert_eq!(unit_matrix(3, 3, 3).unwrap(), ComplexMatrix::from_diag(&[0., 0., 1.]));
        let sum = &unit_matrix(2, 1, 1).unwrap() + &unit_matrix(2, 2, 2).unwrap();
        assert_eq!(sum, ComplexMatrix::identity(2));
        assert!(matches!(unit_matrix(2, 0, 1), Err(Error::IndexOutOfRange { .. })));
        assert!(unit_matrix(2, 1, 3).is_err());
    }

    #[test]
    fn chevalley_two_is_pauli() {
        let set = chevalley(2).unwrap();
        assert_eq!(set.h[0], PauliLetter::Z.matrix());
        assert_eq!(set.x[0], PauliLetter::X.matrix());
        assert_eq!(set.y[0], PauliLetter::Y.matrix());
        assert_eq!(set.s(1, Grade::Plus), &set.x[0]);
        assert_eq!(set.s(1, Grade::Minus), &set.y[0]);
    }

    #[test]
    fn chevalley_three_and_four() {
        let set = chevalley(3).unwrap();
        let x1 = &set.x[0];
        assert_eq!(x1[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(x1[(1, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(x1.norm_sqr(), 2.0);
        assert_eq!(chevalley(4).unwrap().len(), 9);
        assert_eq!(chevalley(1).unwrap_err(), Error::SystemTooSmall(1));
    }

    #[test]
    fn chevalley_triples_close_on_their_block() {
        for n in 2..=6 {
            let set = chevalley(n).unwrap();
            for j in 0..n - 1 {
                assert!(set.h[j].is_hermitian(1e-15) && set.h[j].is_traceless(1e-15));
                assert!(set.x[j].is_hermitian(1e-15) && set.y[j].is_hermitian(1e-15));
                let xy = commutator(&set.x[j], &set.y[j]).unwrap();
                assert!(xy.max_abs_diff(&set.h[j].scaled_complex(Complex64::new(0.0, 2.0))) < 1e-15);
            }
        }
    }

    #[test]
    fn cartan_basis_counts_and_orthogonality() {
        let b2 = cartan_su_basis(2).unwrap();
        assert_eq!(b2, vec![PauliLetter::X.matrix(), PauliLetter::Y.matrix(), PauliLetter::Z.matrix()]);
        for n in 2..=5 {
            let basis = cartan_su_basis(n).unwrap();
            assert_eq!(basis.len(), n * n - 1);
            // off-diagonal elements are orthogonal to everything; the h_i overlap
            let off = n * (n - 1);
            for (a, ma) in basis.iter().enumerate().take(off) {
                for mb in basis.iter().skip(a + 1) {
                    assert!(hs_inner(ma, mb).unwrap().abs() < 1e-15);
                }
            }
            let tol = ToleranceConfig::default();
            let mut ob = OrthonormalBasis::new(n);
            for m in &basis {
                ob.insert(&m.scaled_complex(I), &tol).unwrap();
            }
            assert_eq!(ob.len(), n * n - 1);
        }
    }

    #[test]
    fn word_matrices() {
        let xz: PauliWord = "xz".parse().unwrap();
        assert_eq!(xz.matrix(), kron(&PauliLetter::X.matrix(), &PauliLetter::Z.matrix()));
        assert_eq!(pauli_word_matrix(&"ii".parse().unwrap()), ComplexMatrix::identity(4));
        let x: PauliWord = "x".parse().unwrap();
        let y: PauliWord = "y".parse().unwrap();
        let z: PauliWord = "z".parse().unwrap();
        assert_eq!(&x.matrix() * &y.matrix(), z.matrix().scaled_complex(I));
        assert!("xq".parse::<PauliWord>().is_err());
        assert_eq!(xz.to_string(), "xz");
    }

    #[test]
    fn word_products_match_matrices() {
        for a in enumerate_words(2, &PauliLetter::ALL) {
            for b in enumerate_words(2, &PauliLetter::ALL) {
                let (phase, w) = a.mul(&b);
                let expected = w.matrix().scaled_complex(I.powu(phase as u32));
                assert!((&a.matrix() * &b.matrix()).max_abs_diff(&expected) < 1e-15);
                let commute = (&a.matrix() * &b.matrix()).max_abs_diff(&(&b.matrix() * &a.matrix())) < 1e-15;
                assert_eq!(a.commutes_with(&b), commute);
            }
        }
    }

    #[test]
    fn word_enumeration_counts() {
        assert_eq!(coupling_words(2).len(), 9);
        assert_eq!(words_with_z_count(2, 1).len(), 4);
        let xy: Vec<String> = enumerate_words(1, &[PauliLetter::Y, PauliLetter::X])
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(xy, vec!["x", "y"]);
        assert_eq!(coupling_words(2)[0].to_string(), "xx");
        assert_eq!(coupling_words(2)[8].to_string(), "zz");
        for m in 1..=4usize {
            for z in 0..=m {
                let expected = binomial(m as u64, z as u64) * 2u64.pow((m - z) as u32);
                assert_eq!(words_with_z_count(m, z).len() as u64, expected);
            }
        }
    }

    #[test]
    fn binomial_sum_is_three_to_the_m() {
        for m in 1..=6u64 {
            let total: u64 = (0..=m).map(|n| binomial(m, n) * 2u64.pow((m - n) as u32)).sum();
            assert_eq!(total, 3u64.pow(m as u32));
        }
    }

    #[test]
    fn words_form_orthogonal_complete_basis() {
        let m = 2;
        let words = enumerate_words(m, &PauliLetter::ALL);
        assert_eq!(words.len(), 16);
        for (a, wa) in words.iter().enumerate() {
            let ma = wa.matrix();
            assert!(ma.is_hermitian(1e-15));
            assert_eq!(wa.is_identity(), !ma.is_traceless(1e-15));
            for (b, wb) in words.iter().enumerate() {
                let ip = hs_inner(&ma, &wb.matrix()).unwrap();
                let expected = if a == b { 4.0 } else { 0.0 };
                assert_eq!(ip, expected);
            }
        }
    }

    #[test]
    fn word_index_roundtrip() {
        for w in enumerate_words(3, &PauliLetter::ALL) {
            assert_eq!(PauliWord::from_index(3, w.index()), w);
        }
    }
}
