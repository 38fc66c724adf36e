//! Named verification suites behind the CLI and the acceptance tests.
//! Every suite is deterministic: randomized checks draw from a fixed
//! seeded generator.

use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::aks::{
    aks_identity_report, characters_report, ore_report, parabolic_report,
    ratio_commutativity_classical_report, ratio_commutativity_quantum_report,
};
use crate::det::{conjugation_check, det_nc_antisym, det_nc_permsum};
use crate::error::{Error, Result};
use crate::family::{
    classical_commutativity_report, grading_report, quantum_commutativity_report,
    symmetrized_match_report,
};
use crate::matrix::{pencil_quantum, SquareMatrix};
use crate::quantum::QuantumPoly;
use crate::rational::{rat, rat_int, Rational};
use crate::report::{CheckItem, CheckReport};

pub const DET_EQUIVALENCE_SEED: u64 = 0x5eed_0001;
pub const CONJUGATION_SEED: u64 = 0x5eed_0002;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    PoissonCommutativity,
    QuantumCommutativity,
    Grading,
    SymmetrizedMatch,
    DeterminantEquivalence,
    Conjugation,
    Characters,
    AksIdentity,
    RatioCommutativity,
    Ore,
    Parabolic,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::PoissonCommutativity,
        Suite::QuantumCommutativity,
        Suite::Grading,
        Suite::SymmetrizedMatch,
        Suite::DeterminantEquivalence,
        Suite::Conjugation,
        Suite::Characters,
        Suite::AksIdentity,
        Suite::RatioCommutativity,
        Suite::Ore,
        Suite::Parabolic,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::PoissonCommutativity => "poisson-commutativity",
            Suite::QuantumCommutativity => "quantum-commutativity",
            Suite::Grading => "grading",
            Suite::SymmetrizedMatch => "symmetrized-match",
            Suite::DeterminantEquivalence => "determinant-equivalence",
            Suite::Conjugation => "conjugation",
            Suite::Characters => "characters",
            Suite::AksIdentity => "aks-identity",
            Suite::RatioCommutativity => "ratio-commutativity",
            Suite::Ore => "ore",
            Suite::Parabolic => "parabolic",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Classical,
    Quantum,
    Both,
}

impl Mode {
    pub fn classical(&self) -> bool {
        matches!(self, Mode::Classical | Mode::Both)
    }

    pub fn quantum(&self) -> bool {
        matches!(self, Mode::Quantum | Mode::Both)
    }
}

/// Runs a suite at one rank. Quantum-side work is skipped above rank 3
/// unless forced (cost grows with (n!)^2 and normal ordering).
pub fn run_suite(suite: Suite, n: usize, mode: Mode, force: bool) -> Result<CheckReport> {
    if n < 1 {
        return Err(Error::InvalidRank(n));
    }
    let quantum_ok = n <= 3 || force;
    match suite {
        Suite::PoissonCommutativity => classical_commutativity_report(n),
        Suite::QuantumCommutativity => {
            if !quantum_ok {
                return Err(Error::InvalidParameter(format!(
                    "quantum commutativity at n = {n} needs --force"
                )));
            }
            quantum_commutativity_report(n)
        }
        Suite::Grading => {
            let do_quantum = mode.quantum() && (n <= 4 || force);
            if !mode.classical() && !do_quantum {
                return Err(Error::InvalidParameter(format!(
                    "quantum grading at n = {n} needs --force"
                )));
            }
            grading_report(n, mode.classical(), do_quantum)
        }
        Suite::SymmetrizedMatch => symmetrized_match_report(n),
        Suite::DeterminantEquivalence => {
            determinant_equivalence_report(n, 50, DET_EQUIVALENCE_SEED)
        }
        Suite::Conjugation => conjugation_report(n, 20, CONJUGATION_SEED),
        Suite::Characters => {
            let do_quantum = mode.quantum() && quantum_ok;
            if !mode.classical() && !do_quantum {
                return Err(Error::InvalidParameter(format!(
                    "quantum characters at n = {n} need --force"
                )));
            }
            characters_report(n, mode.classical(), do_quantum)
        }
        Suite::AksIdentity => {
            if !quantum_ok {
                return Err(Error::InvalidParameter(format!(
                    "the exchange identity at n = {n} needs --force"
                )));
            }
            aks_identity_report(n)
        }
        Suite::RatioCommutativity => {
            let mut report = CheckReport::new("ratio-commutativity", n);
            if mode.classical() {
                report.merge(ratio_commutativity_classical_report(n)?);
            }
            if mode.quantum() {
                if !quantum_ok {
                    return Err(Error::InvalidParameter(format!(
                        "quantum ratio commutativity at n = {n} needs --force"
                    )));
                }
                report.merge(ratio_commutativity_quantum_report(n)?);
            }
            Ok(report)
        }
        Suite::Ore => {
            if !quantum_ok {
                return Err(Error::InvalidParameter(format!(
                    "the division witnesses at n = {n} need --force"
                )));
            }
            ore_report(n)
        }
        Suite::Parabolic => parabolic_report(n),
    }
}

/// Random degree-<=1 entry: a rational combination of 1, u, D and up to
/// two generators.
fn random_entry(rng: &mut ChaCha8Rng, n: usize) -> QuantumPoly {
    let mut entry = QuantumPoly::constant(n, small_rat(rng));
    if rng.gen_bool(0.7) {
        entry = entry.add(&QuantumPoly::var_u(n).scale(&small_rat(rng)));
    }
    if rng.gen_bool(0.5) {
        entry = entry.add(&QuantumPoly::var_d(n).scale(&small_rat(rng)));
    }
    for _ in 0..rng.gen_range(0..=2) {
        let i = rng.gen_range(1..=n as u8);
        let j = rng.gen_range(1..=n as u8);
        entry = entry.add(&QuantumPoly::gen_e(n, i, j).scale(&small_rat(rng)));
    }
    entry
}

fn small_rat(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-4i64..=4), rng.gen_range(1i64..=3))
}

/// Permutation-sum and antisymmetrizer-trace determinants on the quantum
/// pencils and on random degree-<=1 matrices, exact equality.
pub fn determinant_equivalence_report(
    n: usize,
    random_cases: usize,
    seed: u64,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("determinant-equivalence", n);
    for rank in 2..=n.min(3) {
        let p = pencil_quantum(rank)?;
        let ok = det_nc_permsum(&p)? == det_nc_antisym(&p)?;
        report.push(CheckItem::new(
            format!("quantum pencil, n = {rank}"),
            ok,
            String::new(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..random_cases {
        let size = if case % 2 == 0 { 2 } else { 3 };
        let m = SquareMatrix::from_fn(size, |_, _| random_entry(&mut rng, size));
        let ok = det_nc_permsum(&m)? == det_nc_antisym(&m)?;
        report.push(CheckItem::new(
            format!("random degree-<=1 matrix {case} (size {size})"),
            ok,
            String::new(),
        ));
    }
    Ok(report)
}

/// Random invertible rational matrix with small integer entries.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> SquareMatrix<Rational> {
    loop {
        let g = SquareMatrix::from_fn(n, |_, _| rat_int(rng.gen_range(-3i64..=3)));
        if crate::det::rational_inverse(&g).is_ok() {
            return g;
        }
    }
}

/// det(g M g^{-1}) = det(M) on the quantum pencil for random exact
/// rational g.
pub fn conjugation_report(n: usize, cases: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("conjugation", n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for rank in 2..=n.min(3) {
        let p = pencil_quantum(rank)?;
        for case in 0..cases {
            let g = random_invertible(&mut rng, rank);
            report.push(CheckItem::new(
                format!("n = {rank}, random g #{case}"),
                conjugation_check(&p, &g)?,
                String::new(),
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_str(s.name()).unwrap(), s);
        }
        assert!(Suite::from_str("bogus").is_err());
    }

    #[test]
    fn determinant_equivalence_small() {
        let r = determinant_equivalence_report(2, 4, 7).unwrap();
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn conjugation_small() {
        let r = conjugation_report(2, 3, 11).unwrap();
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn guardrails() {
        assert!(run_suite(Suite::QuantumCommutativity, 4, Mode::Both, false).is_err());
        assert!(run_suite(Suite::PoissonCommutativity, 0, Mode::Both, false).is_err());
    }
}
