//! Acceptance suite: each test is one release criterion, printed as a
//! single pass/fail line. Algebraic claims are exact (zero tolerance);
//! the simulation criteria carry the pinned drift bounds below.

use gtoda_core::aks::{
    aks_identity_report, characters_report, ore_report, ratio_commutativity_classical_report,
    ratio_commutativity_quantum_report,
};
use gtoda_core::family::{
    classical_commutativity_report, delta_coefficients, grading_report, quantization_report,
    quantum_commutativity_report, symmetrized_match_report,
};
use gtoda_core::report::CheckReport;
use gtoda_core::sim;
use gtoda_core::verify::{
    conjugation_report, determinant_equivalence_report, CONJUGATION_SEED, DET_EQUIVALENCE_SEED,
};

/// Open-chain spectral coefficients, RK4 at dt = 1e-3 over T = 10.
const OPEN_CHAIN_DRIFT_BOUND: f64 = 1e-8;
/// Every chopped-minor coefficient along the flow of one of them.
const KK_FLOW_DRIFT_BOUND: f64 = 1e-6;

const SIM_DT: f64 = 1e-3;
const SIM_T_END: f64 = 10.0;

fn gate(name: &str, report: &CheckReport) {
    let detail = format!("{} checks", report.checks.len());
    if report.passed() {
        println!("[PASS] {name}: {detail}");
    } else {
        println!("[FAIL] {name}: {detail}");
        for f in report.failures() {
            println!("       failing: {} ({})", f.name, f.detail);
        }
    }
    assert!(report.passed(), "{name} failed");
}

#[test]
fn classical_commutativity() {
    for n in 2..=4 {
        let r = classical_commutativity_report(n).unwrap();
        gate(&format!("classical-commutativity n={n}"), &r);
    }
}

#[test]
fn quantum_commutativity() {
    for n in 2..=3 {
        let r = quantum_commutativity_report(n).unwrap();
        gate(&format!("quantum-commutativity n={n}"), &r);
    }
}

#[test]
fn grading_both_modes() {
    for n in 2..=4 {
        let r = grading_report(n, true, true).unwrap();
        gate(&format!("grading n={n}"), &r);
    }
}

#[test]
fn determinant_definition_equivalence() {
    let r = determinant_equivalence_report(3, 50, DET_EQUIVALENCE_SEED).unwrap();
    gate("determinant-equivalence (pencils n=2,3 + 50 random)", &r);
}

#[test]
fn conjugation_lemma() {
    let r = conjugation_report(3, 20, CONJUGATION_SEED).unwrap();
    gate("conjugation (20 random g at n=2,3)", &r);
}

#[test]
fn characters() {
    for n in 2..=4 {
        let r = characters_report(n, true, n <= 3).unwrap();
        gate(&format!("characters n={n}"), &r);
    }
}

#[test]
fn quantum_aks_identity() {
    for n in 2..=3 {
        let r = aks_identity_report(n).unwrap();
        gate(&format!("aks-identity n={n}"), &r);
    }
}

#[test]
fn reduced_family_commutativity() {
    for n in 2..=3 {
        let r = ratio_commutativity_quantum_report(n).unwrap();
        gate(&format!("ratio-commutativity quantum n={n}"), &r);
    }
    for n in 2..=4 {
        let r = ratio_commutativity_classical_report(n).unwrap();
        gate(&format!("ratio-commutativity classical n={n}"), &r);
    }
}

#[test]
fn quantization_consistency() {
    for n in 2..=3 {
        let r = quantization_report(n).unwrap();
        gate(&format!("quantization n={n}"), &r);
    }
}

#[test]
fn symmetrized_match_all_levels() {
    for n in 2..=4 {
        let r = symmetrized_match_report(n).unwrap();
        gate(&format!("symmetrized-match n={n}"), &r);
    }
}

#[test]
fn ore_witnesses() {
    for n in 2..=3 {
        let r = ore_report(n).unwrap();
        gate(&format!("ore-witnesses n={n}"), &r);
    }
}

#[test]
fn simulation_conservation() {
    let n = 3;
    let steps = (SIM_T_END / SIM_DT).round() as usize;

    // open chain, generic bounded initial data, spectral coefficients of
    // the corner-augmented matrix at w = 0 and w = 1
    let y0 = vec![0.3, -0.1, 0.2, -0.2, 0.4, 0.1];
    let field = sim::open_toda_field(n);
    let traj = sim::integrate_rk4(&y0, 0.0, SIM_DT, steps, 100, &field).unwrap();
    for w in [0.0, 1.0] {
        let drift = sim::spectral_drift(&traj, n, w);
        let max = drift.overall_max();
        println!(
            "[{}] simulation open-chain w={w}: max relative drift {max:.3e} (bound {OPEN_CHAIN_DRIFT_BOUND:.0e})",
            if max <= OPEN_CHAIN_DRIFT_BOUND { "PASS" } else { "FAIL" }
        );
        assert!(max <= OPEN_CHAIN_DRIFT_BOUND);
    }

    // generic flow on the dual Borel algebra: Hamiltonian = lambda^1
    // coefficient of the full chopped minor, monitoring the spectral data
    // (root coefficients) of every chopped minor. For the full minor
    // these are the plain coefficients; lower minors are monitored as
    // ratios against their leading coefficient, which is the conserved
    // content of the family (the raw lower coefficients scale by a
    // common conformal factor along the flow, e.g.
    // {delta[0,1], x31} = (x33 - x11) x31 exactly).
    let hamiltonian = delta_coefficients(n, 0).unwrap()[1].clone();
    let kk_field = sim::kk_flow_field(&hamiltonian, n).unwrap();
    let x0 = vec![0.21, -0.37, 0.11, 0.42, -0.29, 0.33];
    let traj = sim::integrate_rk4(&x0, 0.0, SIM_DT, steps, 100, &kk_field).unwrap();
    let (mut names, mut monitors) = sim::minor_root_monitors(n).unwrap();
    assert!(names.len() >= 4, "n=3 has four monitored root coefficients");
    names.push("hamiltonian".into());
    monitors.push(sim::Monitor::Poly(
        sim::CompiledPoly::compile(&hamiltonian, n).unwrap(),
    ));
    let drift = sim::monitor_drift(&traj, names, &monitors);
    let max = drift.overall_max();
    println!(
        "[{}] simulation kk-flow of delta[0,1], minor spectral data: max relative drift {max:.3e} (bound {KK_FLOW_DRIFT_BOUND:.0e})",
        if max <= KK_FLOW_DRIFT_BOUND { "PASS" } else { "FAIL" }
    );
    assert!(max <= KK_FLOW_DRIFT_BOUND);
    // the Hamiltonian itself stays at integrator scale
    let h_drift = *drift.max_rel_drift.last().unwrap();
    assert!(h_drift <= 1e-8, "hamiltonian drift {h_drift:.3e}");
}
