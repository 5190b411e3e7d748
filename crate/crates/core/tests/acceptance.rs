// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite. Runs every criterion, prints one line per criterion
//! and exits non-zero if any of them fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use accessor_control::closure::{controllability_verdict, generate_closure};
use accessor_control::config::{AccessorConfig, CouplingEntry, ModelConfig, SystemConfig};
use accessor_control::decoupling::{counting_identity, run_decoupling, solve::rotate};
use accessor_control::linalg::{kron, ComplexMatrix, ToleranceConfig, I};
use accessor_control::model::{check_size_condition, coupling_rank_check};
use accessor_control::operators::{chevalley, PauliLetter, PauliWord};
use accessor_control::oracle::{agreement_check, exact_closure_dim, exact_generators};
use accessor_control::random::{quantized_uniform, random_config, rng, DECIMAL_GRID};
use common::{conjugate, dimension, example, random_unitary, serial};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn closure_dim(cfg: &ModelConfig) -> Result<(usize, Duration), String> {
    let (model, tol) = cfg.build().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let (_, report) = controllability_verdict(&model, &tol, &serial()).map_err(|e| e.to_string())?;
    Ok((report.dimension, start.elapsed()))
}

fn two_level() -> Outcome {
    let cfg = example("two_level_diag");
    let (dim, took) = closure_dim(&cfg)?;
    ensure(dim == 15, format!("dimension {dim}"))?;
    ensure(took < Duration::from_secs(1), format!("took {took:?}"))?;
    let exact = exact_closure_dim(&exact_generators(&cfg).map_err(|e| e.to_string())?, None).map_err(|e| e.to_string())?;
    ensure(exact == 15, format!("exact dimension {exact}"))?;
    Ok(format!("dimension 15 (exact 15) in {took:.2?}"))
}

fn three_level() -> Outcome {
    let (dim, took) = closure_dim(&example("three_level_sec4"))?;
    ensure(dim == 143, format!("dimension {dim}"))?;
    ensure(took < Duration::from_secs(60), format!("took {took:?}"))?;
    Ok(format!("dimension 143 in {took:.2?}"))
}

fn four_level_boundary() -> Outcome {
    let size = check_size_condition(4, 2);
    ensure(size.holds && size.margin == 0, format!("margin {}", size.margin))?;
    let (seed, cfg) = (0u64..)
        .map(|s| (s, random_config(4, 2, s, DECIMAL_GRID)))
        .find(|(_, c)| coupling_rank_check(&c.coupling_tensor().unwrap()).feasible)
        .expect("a full-rank draw");
    let (dim, took) = closure_dim(&cfg)?;
    ensure(dim == 255, format!("dimension {dim}"))?;
    ensure(took < Duration::from_secs(600), format!("took {took:?}"))?;
    Ok(format!("seed {seed}: dimension 255 in {took:.2?}"))
}

fn truth_table() -> Outcome {
    let table = [((2, 1), true), ((3, 1), false), ((4, 2), true), ((5, 2), false)];
    for ((n, m), expect) in table {
        let got = check_size_condition(n, m).holds;
        ensure(got == expect, format!("({n},{m}) -> {got}"))?;
    }
    Ok("(2,1) yes, (3,1) no, (4,2) yes, (5,2) no".into())
}

/// Transverse system operators coupled through accessor letters x and y
/// only, with no σ_z component anywhere in the interaction.
fn xy_only_member(mask: u32, seed: u64) -> ModelConfig {
    let slots = [("x", 1i8), ("x", -1), ("y", 1), ("y", -1)];
    let mut r = rng(seed);
    let e = quantized_uniform(&mut r, 8.0);
    let w = quantized_uniform(&mut r, 8.0);
    let coupling = slots
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &(word, k))| CouplingEntry {
            word: word.into(),
            j: 1,
            k,
            g: quantized_uniform(&mut r, 8.0),
        })
        .collect();
    ModelConfig {
        system: SystemConfig {
            dim: 2,
            energies: vec![e, -e],
        },
        accessor: AccessorConfig {
            qubits: 1,
            frequencies: vec![w],
            chain_couplings: vec![],
        },
        coupling,
        tolerances: None,
    }
}

fn xy_only() -> Outcome {
    let mut observed = BTreeSet::new();
    let mut members = 0;
    for mask in 1u32..16 {
        for seed in 0..4u64 {
            let cfg = xy_only_member(mask, 1000 * u64::from(mask) + seed);
            let (dim, _) = closure_dim(&cfg)?;
            ensure(dim < 15, format!("mask {mask:04b} seed {seed}: dimension {dim}"))?;
            observed.insert(dim);
            members += 1;
        }
    }
    let cfg = example("xy_only_sp4");
    let (dim, _) = closure_dim(&cfg)?;
    let exact = exact_closure_dim(&exact_generators(&cfg).map_err(|e| e.to_string())?, None).map_err(|e| e.to_string())?;
    ensure(dim == 10 && exact == 10, format!("reproduced configuration gives {dim} (exact {exact})"))?;
    Ok(format!("reproduced configuration 10 (exact 10); {members} members all < 15, observed {observed:?}"))
}

fn certificates() -> Outcome {
    let cfg = example("three_level_sec4");
    let (model, tol) = cfg.build().map_err(|e| e.to_string())?;
    let run = run_decoupling(&model, &tol, None, Some(1)).map_err(|e| e.to_string())?;
    let dec = &run.decoupling;
    ensure(dec.certificates.len() == 9, format!("{} certificates", dec.certificates.len()))?;
    ensure(dec.layer_sizes == [4, 4, 1], format!("layers {:?}", dec.layer_sizes))?;
    let worst = dec.max_residual();
    ensure(worst < 1e-8, format!("certificate residual {worst:.3e}"))?;

    let chev = chevalley(3).map_err(|e| e.to_string())?;
    let displayed = [("yy", "xx"), ("yx", "xy"), ("yz", "xz"), ("zy", "xx"), ("zx", "xy"), ("zz", "xz")];
    let mut entry_worst: f64 = 0.0;
    for (source, shown) in displayed {
        let (w, p): (PauliWord, PauliWord) = (source.parse().unwrap(), shown.parse().unwrap());
        let cert = dec.get(&w).ok_or(format!("no certificate for {w}"))?;
        let moved = rotate(&cert.produced, &w, &p, &dec.controls).map_err(|e| e.to_string())?;
        let direct = kron(&model.coupling().system_part(&w, &chev), &p.matrix()).scaled_complex(I);
        entry_worst = entry_worst.max(moved.max_abs_diff(&direct));
    }
    ensure(entry_worst < 1e-8, format!("displayed elements differ by {entry_worst:.3e}"))?;
    ensure(run.report.passed, format!("pipeline failed: {:?}", run.report.failure))?;
    Ok(format!(
        "9 certificates, layers 4/4/1, max residual {worst:.1e}, displayed elements within {entry_worst:.1e}"
    ))
}

fn chain_generators(m: usize) -> Vec<ComplexMatrix> {
    let mut gens = Vec::new();
    for site in 1..=m {
        for letter in [PauliLetter::X, PauliLetter::Y] {
            gens.push(PauliWord::single(m, site, letter).matrix().scaled_complex(I));
        }
        if site < m {
            let xx = PauliWord::single(m, site, PauliLetter::X).with_letter(site + 1, PauliLetter::X);
            gens.push(xx.matrix().scaled_complex(I));
        }
    }
    gens
}

fn accessor_generation() -> Outcome {
    for (m, target) in [(2usize, 15usize), (3, 63)] {
        let dim = dimension(&chain_generators(m));
        ensure(dim == target, format!("M={m}: dimension {dim}"))?;
    }
    let mut worst: f64 = 0.0;
    for cfg in [example("three_level_sec4"), random_config(2, 3, 5, DECIMAL_GRID)] {
        let (model, tol) = cfg.build().map_err(|e| e.to_string())?;
        let run = run_decoupling(&model, &tol, None, Some(1)).map_err(|e| e.to_string())?;
        let acc = run.report.accessor.ok_or(format!("no accessor stage: {:?}", run.report.failure))?;
        ensure(acc.closure_dim == acc.target, format!("derived accessor closure {}", acc.closure_dim))?;
        for t in &acc.chain {
            worst = worst.max(t.relative_error);
        }
    }
    ensure(worst < 1e-12, format!("double commutator coefficient error {worst:.3e}"))?;
    Ok(format!("15 and 63 reached; −4c recovered to {worst:.1e}"))
}

fn counting() -> Outcome {
    for n in 2..=6 {
        for m in 1..=4 {
            let (l, r) = counting_identity(n, m);
            ensure(l == r && r == ((n as u128) << m).pow(2) - 1, format!("N={n}, M={m}: {l} vs {r}"))?;
        }
    }
    Ok("identity exact for 2 ≤ N ≤ 6, 1 ≤ M ≤ 4".into())
}

fn oracle_agreement() -> Outcome {
    let tol = ToleranceConfig::default();
    let mut agreed = 0;
    let mut dims = BTreeSet::new();
    for m in [1usize, 2] {
        for seed in 0..10u64 {
            let cfg = random_config(2, m, 100 + seed, 8.0);
            let report = agreement_check(&cfg, &tol, &serial()).map_err(|e| e.to_string())?;
            ensure(report.agree, format!("M={m} seed {seed}: numeric {} vs exact {}", report.numeric, report.exact))?;
            dims.insert(report.exact);
            agreed += 1;
        }
    }
    Ok(format!("{agreed}/20 agree, dimensions {dims:?}"))
}

fn properties() -> Outcome {
    let tol = ToleranceConfig::default();
    let mut r = rng(2026);
    for (n, m) in [(2usize, 1usize), (3, 1)] {
        for seed in 0..3u64 {
            let (model, _) = random_config(n, m, seed, DECIMAL_GRID).build().map_err(|e| e.to_string())?;
            let gens = model.skew_generators();
            let base = dimension(&gens);
            let u = random_unitary(&mut r, model.dim());
            let rotated: Vec<_> = gens.iter().map(|g| conjugate(&u, g)).collect();
            ensure(dimension(&rotated) == base, format!("conjugation changed ({n},{m}) seed {seed}"))?;
            let mut scaled = gens.clone();
            let k = r.random_range(0..scaled.len());
            scaled[k] = scaled[k].scaled(-2.75);
            ensure(dimension(&scaled) == base, format!("scaling changed ({n},{m}) seed {seed}"))?;
            let mut last = 0;
            for len in 1..=gens.len() {
                let d = dimension(&gens[..len]);
                ensure(d >= last, format!("monotonicity broke at {len} generators"))?;
                last = d;
            }
        }
    }
    let (model, _) = random_config(3, 2, 9, DECIMAL_GRID).build().map_err(|e| e.to_string())?;
    let (basis, _) = generate_closure(&model.skew_generators(), &tol, &serial()).map_err(|e| e.to_string())?;
    let len = basis.len();
    let pairs: Vec<(usize, usize)> = (0..200).map(|_| (r.random_range(0..len), r.random_range(0..len))).collect();
    let defect = basis.bracket_defect(&pairs);
    ensure(defect < 1e-8, format!("bracket defect {defect:.3e}"))?;
    let mut jacobi: f64 = 0.0;
    for _ in 0..100 {
        let e = basis.elements();
        let (a, b, c) = (&e[r.random_range(0..len)], &e[r.random_range(0..len)], &e[r.random_range(0..len)]);
        let mut sum = a.bracket(&b.bracket(c));
        sum += &b.bracket(&c.bracket(a));
        sum += &c.bracket(&a.bracket(b));
        jacobi = jacobi.max(sum.norm());
    }
    ensure(jacobi < 1e-10, format!("Jacobi residual {jacobi:.3e}"))?;
    let gram = basis.orthonormal().gram_deviation();
    ensure(gram < 1e-10, format!("Gram deviation {gram:.3e}"))?;
    Ok(format!("invariances hold; bracket defect {defect:.1e}, Jacobi {jacobi:.1e}, Gram {gram:.1e}"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("two-level complete controllability", two_level),
        ("three-level complete controllability", three_level),
        ("four-level boundary case", four_level_boundary),
        ("size condition truth table", truth_table),
        ("x,y-only coupling family", xy_only),
        ("decoupling certificates", certificates),
        ("accessor generation", accessor_generation),
        ("dimension counting identity", counting),
        ("exact oracle agreement", oracle_agreement),
        ("property suite", properties),
    ];
    let mut failed = 0;
    for (idx, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("acceptance {:>2} {status} {name}: {detail} [{:.2?}]", idx + 1, start.elapsed());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
