//! Expansion of the classical and quantum characteristic polynomials and
//! extraction of the graded commutative families.
//!
//! Terms are grouped by homogeneous degree n-k in the spectral pair
//! (u, lambda) or (u, D); within a level the leading eps order must be
//! exactly k(k-1)/2, and its coefficients, split by u power, are the
//! family entries. The top u-power entry of each level (always at
//! u-power n-k) is the level's denominator for the ratio construction.

use std::collections::BTreeMap;

use crate::comm::{CommPoly, CommTerm};
use crate::det::{det_commutative, det_nc_permsum};
use crate::error::{Error, Result};
use crate::matrix::{borel_lax, chop, pencil_classical, pencil_quantum};
use crate::pbw::UeaElement;
use crate::quantum::QuantumPoly;
use crate::rational::Rational;
use crate::report::{CheckItem, CheckReport};

#[derive(Clone, PartialEq, Debug)]
pub struct GradedFamily<T> {
    pub n: usize,
    /// (level k, u power i) -> coefficient element.
    pub entries: BTreeMap<(usize, usize), T>,
    /// level k -> u power of the level's top (denominator) entry.
    pub denominator_index: BTreeMap<usize, usize>,
}

impl<T> GradedFamily<T> {
    pub fn levels(&self) -> Vec<usize> {
        let mut ks: Vec<usize> = self.denominator_index.keys().copied().collect();
        ks.sort_unstable();
        ks
    }

    pub fn entry(&self, k: usize, i: usize) -> Option<&T> {
        self.entries.get(&(k, i))
    }

    pub fn denominator(&self, k: usize) -> Option<&T> {
        self.entries.get(&(k, *self.denominator_index.get(&k)?))
    }

    pub fn indices(&self) -> Vec<(usize, usize)> {
        self.entries.keys().copied().collect()
    }
}

pub type ClassicalFamily = GradedFamily<CommPoly>;
pub type QuantumFamily = GradedFamily<UeaElement>;

/// Expanded determinant of the classical pencil, canonical form.
pub fn classical_charpoly(n: usize) -> Result<CommPoly> {
    det_commutative(&pencil_classical(n)?)
}

/// Normal-form determinant of the quantum pencil.
pub fn quantum_charpoly(n: usize) -> Result<QuantumPoly> {
    det_nc_permsum(&pencil_quantum(n)?)
}

fn expected_leading_eps(k: usize) -> u32 {
    (k * (k.saturating_sub(1)) / 2) as u32
}

/// Extract the graded family from an expanded classical characteristic
/// polynomial. Errors on any grading violation.
pub fn extract_classical(p: &CommPoly) -> Result<ClassicalFamily> {
    let n = p.rank();
    // level -> eps -> u -> x-polynomial
    let mut levels: BTreeMap<usize, BTreeMap<u32, BTreeMap<u32, CommPoly>>> = BTreeMap::new();
    for (t, c) in p.terms() {
        let m = t.spectral_degree() as usize;
        if m > n {
            return Err(Error::GradingViolation {
                level: 0,
                expected: n as u32,
                found: m as u32,
            });
        }
        let k = n - m;
        let cell = levels
            .entry(k)
            .or_default()
            .entry(t.eps)
            .or_default()
            .entry(t.u)
            .or_insert_with(|| CommPoly::zero(n));
        cell.add_term(
            CommTerm {
                xs: t.xs.clone(),
                ..CommTerm::default()
            },
            c.clone(),
        );
    }
    let mut fam = GradedFamily {
        n,
        entries: BTreeMap::new(),
        denominator_index: BTreeMap::new(),
    };
    for (k, by_eps) in levels {
        let leading = *by_eps.keys().next().expect("nonempty level");
        let expected = expected_leading_eps(k);
        if leading != expected {
            return Err(Error::GradingViolation {
                level: k,
                expected,
                found: leading,
            });
        }
        let mut top_u = 0usize;
        for (&u, poly) in &by_eps[&leading] {
            if poly.is_zero() {
                continue;
            }
            fam.entries.insert((k, u as usize), poly.clone());
            top_u = top_u.max(u as usize);
        }
        if top_u != n - k {
            return Err(Error::GradingViolation {
                level: k,
                expected: (n - k) as u32,
                found: top_u as u32,
            });
        }
        fam.denominator_index.insert(k, top_u);
    }
    Ok(fam)
}

/// Quantum counterpart; entries are pure enveloping-algebra elements.
pub fn extract_quantum(p: &QuantumPoly) -> Result<QuantumFamily> {
    let n = p.rank();
    let mut levels: BTreeMap<usize, BTreeMap<u32, BTreeMap<u32, UeaElement>>> = BTreeMap::new();
    for (t, c) in p.terms() {
        let m = t.spectral_degree() as usize;
        if m > n {
            return Err(Error::GradingViolation {
                level: 0,
                expected: n as u32,
                found: m as u32,
            });
        }
        let k = n - m;
        let cell = levels
            .entry(k)
            .or_default()
            .entry(t.eps)
            .or_default()
            .entry(t.u)
            .or_insert_with(|| UeaElement::zero(n));
        cell.add_term(t.mono.clone(), c.clone());
    }
    let mut fam = GradedFamily {
        n,
        entries: BTreeMap::new(),
        denominator_index: BTreeMap::new(),
    };
    for (k, by_eps) in levels {
        let leading = *by_eps.keys().next().expect("nonempty level");
        let expected = expected_leading_eps(k);
        if leading != expected {
            return Err(Error::GradingViolation {
                level: k,
                expected,
                found: leading,
            });
        }
        let mut top_u = 0usize;
        for (&u, elem) in &by_eps[&leading] {
            if elem.is_zero() {
                continue;
            }
            fam.entries.insert((k, u as usize), elem.clone());
            top_u = top_u.max(u as usize);
        }
        if top_u != n - k {
            return Err(Error::GradingViolation {
                level: k,
                expected: (n - k) as u32,
                found: top_u as u32,
            });
        }
        fam.denominator_index.insert(k, top_u);
    }
    Ok(fam)
}

pub fn classical_family(n: usize) -> Result<ClassicalFamily> {
    extract_classical(&classical_charpoly(n)?)
}

pub fn quantum_family(n: usize) -> Result<QuantumFamily> {
    extract_quantum(&quantum_charpoly(n)?)
}

/// Chopped-minor polynomial: determinant of the Borel matrix with k right
/// columns and k upper rows deleted after subtracting lambda on the
/// diagonal. A polynomial in the lower coordinates and lambda.
pub fn delta_k(n: usize, k: usize) -> Result<CommPoly> {
    det_commutative(&chop(&borel_lax(n)?, k)?)
}

/// Coefficients of delta_k by lambda power, index 0 = constant term.
/// delta_n is the empty chop and equals 1.
pub fn delta_coefficients(n: usize, k: usize) -> Result<Vec<CommPoly>> {
    if k == n {
        return Ok(vec![CommPoly::one(n)]);
    }
    let d = delta_k(n, k)?;
    let top = d.lambda_degree().unwrap_or(0);
    Ok((0..=top).map(|p| d.lambda_coefficient(p)).collect())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SymmetrizedMatch {
    pub matches: bool,
    pub sign: i8,
}

/// Compares the Borel symmetrization of the level-k slice of the
/// generating function at u = 1 against the chopped minor, up to an
/// overall sign. The sign is normalized on the leading lambda
/// coefficient.
pub fn symmetrized_match(n: usize, k: usize) -> Result<SymmetrizedMatch> {
    if k >= n {
        return Err(Error::LevelOutOfRange { n, k });
    }
    let fam = classical_family(n)?;
    // reassemble I_k^0(1, lambda) = sum_i I_{k,i} lambda^{n-k-i}
    let mut slice = CommPoly::zero(n);
    for ((level, i), poly) in &fam.entries {
        if *level != k {
            continue;
        }
        let lam = (n - k - i) as u32;
        for (t, c) in poly.terms() {
            slice.add_term(
                CommTerm {
                    xs: t.xs.clone(),
                    lambda: lam,
                    ..CommTerm::default()
                },
                c.clone(),
            );
        }
    }
    let symmetrized = slice.transpose_upper();
    let delta = delta_k(n, k)?;
    if symmetrized == delta {
        Ok(SymmetrizedMatch {
            matches: true,
            sign: 1,
        })
    } else if symmetrized == delta.neg() {
        Ok(SymmetrizedMatch {
            matches: true,
            sign: -1,
        })
    } else {
        Ok(SymmetrizedMatch {
            matches: false,
            sign: 0,
        })
    }
}

/// All pairwise Kirillov-Kostant brackets of the classical family,
/// asserted exactly zero. The report lists every pair.
pub fn classical_commutativity_report(n: usize) -> Result<CheckReport> {
    let fam = classical_family(n)?;
    let mut report = CheckReport::pairs("poisson-commutativity", n);
    let idx = fam.indices();
    for (a, &(k, i)) in idx.iter().enumerate() {
        for &(m, j) in &idx[a..] {
            let b = fam.entries[&(k, i)].poisson_bracket(&fam.entries[&(m, j)])?;
            report.push(CheckItem::exact_zero(
                format!("{{I[{k},{i}], I[{m},{j}]}}"),
                b.is_zero(),
                || format!("{} terms: {b}", b.num_terms()),
            ));
        }
    }
    Ok(report)
}

/// All pairwise commutators of the quantum family in normal form,
/// asserted exactly zero.
pub fn quantum_commutativity_report(n: usize) -> Result<CheckReport> {
    let fam = quantum_family(n)?;
    let mut report = CheckReport::pairs("quantum-commutativity", n);
    let idx = fam.indices();
    for (a, &(k, i)) in idx.iter().enumerate() {
        for &(m, j) in &idx[a..] {
            let c = fam.entries[&(k, i)].commutator(&fam.entries[&(m, j)])?;
            report.push(CheckItem::exact_zero(
                format!("[QI[{k},{i}], QI[{m},{j}]]"),
                c.is_zero(),
                || format!("{} terms: {c}", c.num_terms()),
            ));
        }
    }
    Ok(report)
}

/// Grading report: leading eps exponent k(k-1)/2 and homogeneity degree
/// n-k for every level, in one or both modes.
pub fn grading_report(n: usize, classical: bool, quantum: bool) -> Result<CheckReport> {
    let mut report = CheckReport::new("grading", n);
    if classical {
        match classical_family(n) {
            Ok(fam) => {
                for k in fam.levels() {
                    report.push(CheckItem::pass(format!(
                        "classical level {k}: leading eps {} at degree {}",
                        expected_leading_eps(k),
                        n - k
                    )));
                }
            }
            Err(e) => report.push(CheckItem::fail("classical extraction", e.to_string())),
        }
    }
    if quantum {
        match quantum_family(n) {
            Ok(fam) => {
                for k in fam.levels() {
                    report.push(CheckItem::pass(format!(
                        "quantum level {k}: leading eps {} at degree {}",
                        expected_leading_eps(k),
                        n - k
                    )));
                }
            }
            Err(e) => report.push(CheckItem::fail("quantum extraction", e.to_string())),
        }
    }
    Ok(report)
}

/// Symmetrized-match report over all chop counts.
pub fn symmetrized_match_report(n: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("symmetrized-match", n);
    for k in 0..n {
        let m = symmetrized_match(n, k)?;
        report.push(CheckItem::new(
            format!("level {k}"),
            m.matches,
            format!("sign {}", m.sign),
        ));
    }
    Ok(report)
}

/// Quantization consistency: the principal symbol of every quantum family
/// entry equals the classical entry, exactly.
pub fn quantization_report(n: usize) -> Result<CheckReport> {
    let classical = classical_family(n)?;
    let quantum = quantum_family(n)?;
    let mut report = CheckReport::new("quantization", n);
    report.push(CheckItem::new(
        "index sets agree".into(),
        classical.indices() == quantum.indices(),
        format!(
            "classical {:?} quantum {:?}",
            classical.indices(),
            quantum.indices()
        ),
    ));
    for ((k, i), q) in &quantum.entries {
        let sym = q.principal_symbol();
        let ok = classical.entry(*k, *i).map(|c| *c == sym).unwrap_or(false);
        report.push(CheckItem::new(
            format!("symbol(QI[{k},{i}]) = I[{k},{i}]"),
            ok,
            String::new(),
        ));
    }
    Ok(report)
}

/// The classical splitting of a polynomial along
/// S(gl_n) = S(b) + so_n S(gl_n): the plus part substitutes
/// x_ij -> x_ji for i < j, the minus part is the difference.
pub fn split_classical(f: &CommPoly) -> (CommPoly, CommPoly) {
    let plus = f.transpose_upper();
    let minus = f.sub(&plus);
    (plus, minus)
}

/// Proportionality scalar helper shared by the character computations.
pub fn proportionality_comm(e: &CommPoly, r: &CommPoly) -> Option<Rational> {
    e.proportionality_to(r)
}
