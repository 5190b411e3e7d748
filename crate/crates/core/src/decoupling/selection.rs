// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

//! Site-local adjoint actions of the accessor controls: commutators,
//! selection operators, σ-cascades and word projections.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix, I};
use crate::operators::{levi_civita, PauliLetter, PauliWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelectionVariant {
    /// ¼[iσ_x, [iσ_y, ·]]: keeps σ_x and turns it into σ_y.
    Xy,
    /// ¼[iσ_y, [iσ_x, ·]]: keeps σ_y and turns it into σ_x.
    Yx,
}

impl SelectionVariant {
    /// The variant whose output letter is `letter`.
    pub fn producing(letter: PauliLetter) -> Option<Self> {
        match letter {
            PauliLetter::Y => Some(Self::Xy),
            PauliLetter::X => Some(Self::Yx),
            _ => None,
        }
    }

    /// (outer, inner) control letters.
    pub fn letters(self) -> (PauliLetter, PauliLetter) {
        match self {
            Self::Xy => (PauliLetter::X, PauliLetter::Y),
            Self::Yx => (PauliLetter::Y, PauliLetter::X),
        }
    }
}

impl fmt::Display for SelectionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Xy => "xy",
            Self::Yx => "yx",
        })
    }
}

/// Cached i·1_N⊗σ^j for every site and letter. The z controls are derived
/// as −½[i·1⊗σ_x^j, i·1⊗σ_y^j].
#[derive(Debug, Clone)]
pub struct Controls {
    n: usize,
    m: usize,
    x: Vec<ComplexMatrix>,
    y: Vec<ComplexMatrix>,
    z: Vec<ComplexMatrix>,
}

impl Controls {
    pub fn new(n: usize, m: usize) -> Self {
        let id = ComplexMatrix::identity(n);
        let build = |letter| -> Vec<ComplexMatrix> {
            (1..=m)
                .map(|site| kron(&id, &PauliWord::single(m, site, letter).matrix()).scaled_complex(I))
                .collect()
        };
        let x = build(PauliLetter::X);
        let y = build(PauliLetter::Y);
        let z = x.iter().zip(&y).map(|(a, b)| a.bracket(b).scaled(-0.5)).collect();
        Self { n, m, x, y, z }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n << self.m
    }

    pub fn get(&self, letter: PauliLetter, site: usize) -> Result<&ComplexMatrix> {
        if site == 0 || site > self.m {
            return Err(Error::SiteOutOfRange { site, m: self.m });
        }
        match letter {
            PauliLetter::X => Ok(&self.x[site - 1]),
            PauliLetter::Y => Ok(&self.y[site - 1]),
            PauliLetter::Z => Ok(&self.z[site - 1]),
            PauliLetter::I => Err(Error::InvalidWord {
                word: "i".into(),
                reason: "no identity control".into(),
            }),
        }
    }

    fn check(&self, element: &ComplexMatrix) -> Result<()> {
        if element.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: element.dim(),
            });
        }
        Ok(())
    }

    /// [i·1⊗σ_letter^site, element]
    pub fn commute(&self, letter: PauliLetter, site: usize, element: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check(element)?;
        Ok(self.get(letter, site)?.bracket(element))
    }

    pub fn select(&self, variant: SelectionVariant, site: usize, element: &ComplexMatrix) -> Result<ComplexMatrix> {
        let (outer, inner) = variant.letters();
        let once = self.commute(inner, site, element)?;
        let mut twice = self.commute(outer, site, &once)?;
        twice.scale_in_place(0.25);
        Ok(twice)
    }

    /// Left fold of commutators with the listed site controls; every site
    /// must appear exactly once and letters must be x or z.
    pub fn cascade(&self, element: &ComplexMatrix, ops: &[(usize, PauliLetter)]) -> Result<ComplexMatrix> {
        let mut seen = vec![false; self.m];
        for &(site, letter) in ops {
            if site == 0 || site > self.m {
                return Err(Error::SiteOutOfRange { site, m: self.m });
            }
            if seen[site - 1] {
                return Err(Error::InvalidCascade(format!("site {site} repeated")));
            }
            if !matches!(letter, PauliLetter::X | PauliLetter::Z) {
                return Err(Error::InvalidCascade(format!("letter {} at site {site}", letter.as_char())));
            }
            seen[site - 1] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidCascade(format!("site {} missing", missing + 1)));
        }
        let mut out = element.clone();
        for &(site, letter) in ops {
            out = self.commute(letter, site, &out)?;
        }
        Ok(out)
    }
}

/// Action of ad_{iσ_a} on iσ_b at one site: Some((factor, c)) with
/// [iσ_a, iσ_b] = factor · iσ_c, or None when the result vanishes.
pub fn letter_ad(a: PauliLetter, b: PauliLetter) -> Option<(f64, PauliLetter)> {
    if a == PauliLetter::I || b == PauliLetter::I || a == b {
        return None;
    }
    let c = a.third(b);
    Some((-2.0 * levi_civita(a, b, c), c))
}

/// Action of a selection operator on one letter.
pub fn letter_select(variant: SelectionVariant, b: PauliLetter) -> Option<(f64, PauliLetter)> {
    let (outer, inner) = variant.letters();
    let (f1, mid) = letter_ad(inner, b)?;
    let (f2, out) = letter_ad(outer, mid)?;
    Some((0.25 * f1 * f2, out))
}

/// (1/2^M)·Tr_A[(1_N ⊗ P_word)·element]: the system factor of the
/// `word` component.
pub fn nomial_project(element: &ComplexMatrix, word: &PauliWord, n: usize) -> ComplexMatrix {
    let a = 1usize << word.len();
    debug_assert_eq!(element.dim(), n * a);
    let p = word.matrix();
    let mut out = ComplexMatrix::zeros(n);
    let scale = 1.0 / a as f64;
    for s in 0..n {
        for t in 0..n {
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            for r in 0..a {
                for b in 0..a {
                    let pv = p[(r, b)];
                    if pv.re != 0.0 || pv.im != 0.0 {
                        acc += pv * element[(s * a + b, t * a + r)];
                    }
                }
            }
            out[(s, t)] = acc * scale;
        }
    }
    out
}

/// (1/N)·Tr_S[element]: the accessor factor of a 1_N ⊗ A element.
pub fn accessor_factor(element: &ComplexMatrix, n: usize) -> ComplexMatrix {
    let a = element.dim() / n;
    let mut out = ComplexMatrix::zeros(a);
    for r in 0..a {
        for c in 0..a {
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            for s in 0..n {
                acc += element[(s * a + r, s * a + c)];
            }
            out[(r, c)] = acc / n as f64;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hs_inner;
    use crate::operators::nonidentity_words;

    fn on_site(n: usize, m: usize, a: &ComplexMatrix, word: &str) -> ComplexMatrix {
        let w: PauliWord = word.parse().unwrap();
        assert_eq!((a.dim(), w.len()), (n, m));
        kron(a, &w.matrix()).scaled_complex(I)
    }

    #[test]
    fn selection_case_tables() {
        let c = Controls::new(2, 2);
        let id = ComplexMatrix::identity(2);
        for site in 1..=2 {
            let w = |l| PauliWord::single(2, site, l).to_string();
            let x = on_site(2, 2, &id, &w(PauliLetter::X));
            let y = on_site(2, 2, &id, &w(PauliLetter::Y));
            let z = on_site(2, 2, &id, &w(PauliLetter::Z));
            assert!(c.select(SelectionVariant::Xy, site, &x).unwrap().max_abs_diff(&y) < 1e-15);
            assert_eq!(c.select(SelectionVariant::Xy, site, &y).unwrap().norm(), 0.0);
            assert_eq!(c.select(SelectionVariant::Xy, site, &z).unwrap().norm(), 0.0);
            assert!(c.select(SelectionVariant::Yx, site, &y).unwrap().max_abs_diff(&x) < 1e-15);
            assert_eq!(c.select(SelectionVariant::Yx, site, &x).unwrap().norm(), 0.0);
            assert_eq!(c.select(SelectionVariant::Yx, site, &z).unwrap().norm(), 0.0);
        }
        assert!(matches!(
            c.select(SelectionVariant::Xy, 3, &ComplexMatrix::zeros(8)),
            Err(Error::SiteOutOfRange { site: 3, m: 2 })
        ));
    }

    #[test]
    fn selection_nilpotent_on_single_letters() {
        let c = Controls::new(2, 1);
        let a = PauliLetter::X.matrix();
        for variant in [SelectionVariant::Xy, SelectionVariant::Yx] {
            for l in PauliLetter::XYZ {
                let e = on_site(2, 1, &a, &l.as_char().to_string());
                let twice = c.select(variant, 1, &c.select(variant, 1, &e).unwrap()).unwrap();
                assert_eq!(twice.norm(), 0.0);
                let predicted = letter_select(variant, l);
                let actual = c.select(variant, 1, &e).unwrap();
                match predicted {
                    Some((f, out)) => {
                        let expect = on_site(2, 1, &a, &out.as_char().to_string()).scaled(f);
                        assert!(actual.max_abs_diff(&expect) < 1e-15);
                    }
                    None => assert_eq!(actual.norm(), 0.0),
                }
            }
        }
    }

    #[test]
    fn letter_rules_match_matrices() {
        let c = Controls::new(2, 1);
        let a = PauliLetter::Z.matrix();
        for ctrl in PauliLetter::XYZ {
            for b in PauliLetter::XYZ {
                let e = on_site(2, 1, &a, &b.as_char().to_string());
                let actual = c.commute(ctrl, 1, &e).unwrap();
                match letter_ad(ctrl, b) {
                    Some((f, out)) => {
                        let expect = on_site(2, 1, &a, &out.as_char().to_string()).scaled(f);
                        assert!(actual.max_abs_diff(&expect) < 1e-14);
                    }
                    None => assert_eq!(actual.norm(), 0.0),
                }
            }
        }
    }

    #[test]
    fn cascade_examples() {
        let c = Controls::new(3, 1);
        let a = crate::operators::chevalley(3).unwrap().x[0].clone();
        let ix = on_site(3, 1, &a, "x");
        let out = c.cascade(&ix, &[(1, PauliLetter::Z)]).unwrap();
        assert!(out.max_abs_diff(&on_site(3, 1, &a, "y").scaled(-2.0)) < 1e-15);
        let iz = on_site(3, 1, &a, "z");
        assert_eq!(c.cascade(&iz, &[(1, PauliLetter::Z)]).unwrap().norm(), 0.0);

        let c2 = Controls::new(3, 2);
        let id = ComplexMatrix::identity(3);
        let xx = on_site(3, 2, &id, "xx");
        let out = c2.cascade(&xx, &[(1, PauliLetter::Z), (2, PauliLetter::Z)]).unwrap();
        assert!(out.max_abs_diff(&on_site(3, 2, &id, "yy").scaled(4.0)) < 1e-14);

        assert!(matches!(c2.cascade(&xx, &[(1, PauliLetter::Z)]), Err(Error::InvalidCascade(_))));
        assert!(matches!(
            c2.cascade(&xx, &[(1, PauliLetter::Z), (1, PauliLetter::X)]),
            Err(Error::InvalidCascade(_))
        ));
        assert!(c2.cascade(&xx, &[(1, PauliLetter::Y), (2, PauliLetter::Z)]).is_err());
    }

    #[test]
    fn projection_reconstructs() {
        let (n, m) = (2, 2);
        let mut rng = crate::random::rng(3);
        let data: Vec<num_complex::Complex64> = (0..64)
            .map(|_| {
                num_complex::Complex64::new(
                    crate::random::quantized_uniform(&mut rng, 1e6),
                    crate::random::quantized_uniform(&mut rng, 1e6),
                )
            })
            .collect();
        let e = ComplexMatrix::from_row_major(data);
        let mut rebuilt = kron(&nomial_project(&e, &PauliWord::identity(m), n), &ComplexMatrix::identity(4));
        for w in nonidentity_words(m) {
            rebuilt += &kron(&nomial_project(&e, &w, n), &w.matrix());
        }
        assert!(rebuilt.max_abs_diff(&e) < 1e-14);

        let hs = ComplexMatrix::from_diag(&[1.0, -1.0]);
        let full = kron(&hs, &ComplexMatrix::identity(4));
        assert_eq!(nomial_project(&full, &PauliWord::identity(2), 2), hs);
        let acc = accessor_factor(&on_site(2, 2, &ComplexMatrix::identity(2), "xy"), 2);
        let xy: PauliWord = "xy".parse().unwrap();
        assert!(acc.max_abs_diff(&xy.matrix().scaled_complex(I)) < 1e-15);
        assert!(hs_inner(&acc, &acc).unwrap() > 0.0);
    }

    #[test]
    fn selection_is_linear() {
        let c = Controls::new(2, 1);
        let a = on_site(2, 1, &PauliLetter::X.matrix(), "x");
        let b = on_site(2, 1, &PauliLetter::Y.matrix(), "y");
        let mut combo = a.scaled(0.3);
        combo.axpy(-1.7, &b);
        let lhs = c.select(SelectionVariant::Xy, 1, &combo).unwrap();
        let mut rhs = c.select(SelectionVariant::Xy, 1, &a).unwrap().scaled(0.3);
        rhs.axpy(-1.7, &c.select(SelectionVariant::Xy, 1, &b).unwrap());
        assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }
}
