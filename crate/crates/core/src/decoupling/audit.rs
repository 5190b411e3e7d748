// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

//! Counting and independence audit of the derived operator families.

use serde::Serialize;

use crate::closure::LieBasis;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, OrthonormalBasis, ToleranceConfig};

#[derive(Debug, Clone, Serialize)]
pub struct FamilyCount {
    pub name: String,
    pub count: usize,
    pub expected: usize,
    /// Largest relative residual against the closure span, when one was given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub membership_residual: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub n: usize,
    pub m: usize,
    pub families: Vec<FamilyCount>,
    pub total: usize,
    pub target: usize,
    /// (N²−1) + (N²−1)(4^M−1) + (4^M−1) = N²·4^M − 1, in exact integers.
    pub identity_holds: bool,
    pub joint_rank: usize,
    pub complete: bool,
}

/// Both sides of the counting identity.
pub fn counting_identity(n: usize, m: usize) -> (u128, u128) {
    let n2 = (n as u128) * (n as u128);
    let a = 1u128 << (2 * m);
    let lhs = (n2 - 1) + (n2 - 1) * (a - 1) + (a - 1);
    (lhs, n2 * a - 1)
}

/// Checks the counts, inserts every family member into one orthonormal
/// basis and, with a closure at hand, measures membership. Dependence or a
/// short count is an error.
pub fn audit_generated_dimension(
    n: usize,
    m: usize,
    families: &[(&str, &[ComplexMatrix], usize)],
    closure: Option<&LieBasis>,
    tol: &ToleranceConfig,
) -> Result<AuditReport> {
    let (lhs, rhs) = counting_identity(n, m);
    let d = n << m;
    let mut joint = OrthonormalBasis::new(d);
    let mut counts = Vec::new();
    let mut total = 0;
    for &(name, members, expected) in families {
        let mut worst: Option<f64> = None;
        for e in members {
            if !joint.insert(e, tol)?.accepted() {
                return Err(Error::Audit(format!("{name} member {} is dependent on earlier elements", joint.len())));
            }
            if let Some(basis) = closure {
                let (_, r) = basis.contains(e, tol)?;
                worst = Some(worst.unwrap_or(0.0).max(r));
            }
        }
        if members.len() != expected {
            return Err(Error::Audit(format!("{name} has {} elements, expected {expected}", members.len())));
        }
        total += members.len();
        counts.push(FamilyCount {
            name: name.into(),
            count: members.len(),
            expected,
            membership_residual: worst,
        });
    }
    let target = d * d - 1;
    let report = AuditReport {
        n,
        m,
        families: counts,
        total,
        target,
        identity_holds: lhs == rhs && lhs == target as u128,
        joint_rank: joint.len(),
        complete: joint.len() == target,
    };
    if !report.identity_holds {
        return Err(Error::Audit(format!("counting identity fails: {lhs} vs {rhs}")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_holds_broadly() {
        for n in 2..=40 {
            for m in 1..=20 {
                let (l, r) = counting_identity(n, m);
                assert_eq!(l, r);
            }
        }
    }

    #[test]
    fn detects_dependence() {
        let tol = ToleranceConfig::default();
        let a = crate::operators::PauliWord::single(1, 1, crate::operators::PauliLetter::X)
            .matrix()
            .scaled_complex(crate::linalg::I);
        let dup = [a.clone(), a.scaled(2.0)];
        let err = audit_generated_dimension(1, 1, &[("dup", &dup, 2)], None, &tol).unwrap_err();
        assert!(err.to_string().contains("dependent"));
    }
}
