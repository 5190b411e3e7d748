// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

//! Constructive decoupling: isolate every coupling nomial with selection
//! chains, solve for the system components, then rebuild the system,
//! accessor and coupled operator families and audit their count.

pub mod audit;
pub mod certificate;
pub mod extraction;
pub mod selection;
pub mod solve;

use serde::Serialize;

pub use audit::{audit_generated_dimension, counting_identity, AuditReport};
pub use certificate::{decouple_interaction, decouple_interaction_unchecked, Decoupling, DecouplingCertificate, Step};
pub use extraction::{
    extract_accessor_operators, extract_coupled_operators, extract_system_operators, AccessorExtraction, CoupledExtraction,
    SystemExtraction,
};
pub use selection::{Controls, SelectionVariant};
pub use solve::{solve_system_components, SolveReport, SystemComponents};

use crate::closure::LieBasis;
use crate::error::{Error, Result};
use crate::linalg::ToleranceConfig;
use crate::model::ControlModel;

#[derive(Debug, Clone, Serialize)]
pub struct StageFailure {
    pub stage: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecouplingReport {
    pub layer_sizes: Vec<usize>,
    pub certificates: Vec<DecouplingCertificate>,
    pub max_certificate_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solve: Option<SolveReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemExtraction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub accessor: Option<AccessorExtraction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coupled: Option<CoupledExtraction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditReport>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<StageFailure>,
}

pub struct DecouplingRun {
    pub decoupling: Decoupling,
    pub components: Option<SystemComponents>,
    pub report: DecouplingReport,
}

fn bound(stage: &str, what: &str, value: f64, tolerance: f64) -> Result<()> {
    if value.is_finite() && value <= tolerance {
        Ok(())
    } else {
        Err(Error::ResidualTooLarge {
            context: format!("{stage} {what}"),
            residual: value,
            tolerance,
        })
    }
}

/// Runs the whole pipeline. A stage that fails verification ends the run
/// with `passed = false` and the reason recorded; only structural errors in
/// the model itself are returned as `Err`.
pub fn run_decoupling(
    model: &ControlModel,
    tol: &ToleranceConfig,
    closure: Option<&LieBasis>,
    workers: Option<usize>,
) -> Result<DecouplingRun> {
    tol.validate()?;
    let decoupling = decouple_interaction_unchecked(model, workers)?;
    let mut report = DecouplingReport {
        layer_sizes: decoupling.layer_sizes.clone(),
        certificates: decoupling.certificates.clone(),
        max_certificate_residual: decoupling.max_residual(),
        solve: None,
        system: None,
        accessor: None,
        coupled: None,
        audit: None,
        passed: false,
        failure: None,
    };
    let mut components = None;
    let outcome = stages(model, tol, closure, workers, &decoupling, &mut report, &mut components);
    match outcome {
        Ok(()) => report.passed = true,
        Err((stage, err)) => {
            report.failure = Some(StageFailure {
                stage: stage.into(),
                message: err.to_string(),
            })
        }
    }
    Ok(DecouplingRun {
        decoupling,
        components,
        report,
    })
}

type Staged<T> = std::result::Result<T, (&'static str, Error)>;

fn at<T>(stage: &'static str, r: Result<T>) -> Staged<T> {
    r.map_err(|e| (stage, e))
}

fn stages(
    model: &ControlModel,
    tol: &ToleranceConfig,
    closure: Option<&LieBasis>,
    workers: Option<usize>,
    decoupling: &Decoupling,
    report: &mut DecouplingReport,
    components_out: &mut Option<SystemComponents>,
) -> Staged<()> {
    let (n, m) = (model.n(), model.m());
    at("certificates", bound("certificates", "residual", report.max_certificate_residual, tol.verify))?;

    let components = at("solve", solve_system_components(decoupling, model.coupling(), tol))?;
    report.solve = Some(components.report.clone());
    *components_out = Some(components.clone());

    let system = at("system", extract_system_operators(&components, n, m, tol, workers))?;
    report.system = Some(system.clone());
    at("system", bound("system", "element residual", system.max_residual, tol.verify))?;
    at("system", bound("system", "membership residual", system.max_membership_residual, tol.verify))?;

    let accessor = at("accessor", extract_accessor_operators(model, decoupling, &system, &components, tol, workers))?;
    report.accessor = Some(accessor.clone());
    let chain_worst = accessor.chain.iter().map(|t| t.residual.max(t.relative_error)).fold(0.0, f64::max);
    at("accessor", bound("accessor", "chain residual", chain_worst, tol.verify))?;
    at("accessor", bound("accessor", "remainder", accessor.remainder, tol.verify))?;
    at("accessor", bound("accessor", "membership residual", accessor.max_membership_residual, tol.verify))?;

    let coupled = at("coupled", extract_coupled_operators(&components, &system, n, m, tol))?;
    report.coupled = Some(coupled.clone());
    at("coupled", bound("coupled", "transport residual", coupled.max_transport_residual, tol.verify))?;
    at("coupled", bound("coupled", "membership residual", coupled.max_membership_residual, tol.verify))?;

    let accessor_family: Vec<_> = accessor.family.iter().map(|(_, e)| e.clone()).collect();
    let a = (1usize << (2 * m)) - 1;
    let s = n * n - 1;
    let families = [
        ("system", system.family.as_slice(), s),
        ("coupled", coupled.family.as_slice(), s * a),
        ("accessor", accessor_family.as_slice(), a),
    ];
    let audit = at("audit", audit_generated_dimension(n, m, &families, closure, tol))?;
    let complete = audit.complete;
    let membership = audit
        .families
        .iter()
        .filter_map(|f| f.membership_residual)
        .fold(0.0, f64::max);
    report.audit = Some(audit);
    if !complete {
        return Err(("audit", Error::Audit("joint rank below d²−1".into())));
    }
    at("audit", bound("audit", "closure membership", membership, tol.verify))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_config, DECIMAL_GRID};

    fn run(n: usize, m: usize, seed: u64) -> DecouplingReport {
        let (model, tol) = random_config(n, m, seed, DECIMAL_GRID).build().unwrap();
        run_decoupling(&model, &tol, None, Some(1)).unwrap().report
    }

    #[test]
    fn random_models_decouple() {
        for (n, m) in [(2, 1), (2, 2), (3, 2), (2, 3)] {
            let r = run(n, m, 11);
            assert!(r.passed, "{n},{m}: {:?}", r.failure);
            let audit = r.audit.unwrap();
            assert_eq!(audit.joint_rank, ((n * n) << (2 * m)) - 1);
        }
    }

    #[test]
    fn shared_chain_word_is_reported() {
        let r = run(4, 2, 3);
        let failure = r.failure.expect("fails");
        assert_eq!(failure.stage, "solve");
        assert!(failure.message.contains("9 < 10"), "{}", failure.message);
    }
}
