//! The splitting U(gl_n) = so_n U(gl_n) + U(b) given by the normal
//! ordering, Borel characters of the family, the eta twist, and the
//! denominator-free verification of the reduced commutative family.
//!
//! Localized statements are never checked in a fraction ring. Each one is
//! reduced to the polynomial identities its proof rests on: the twisted
//! exchange identity on projections, commutativity of the level tops, and
//! the eta relation m c = c eta_k(m). Those are verified exactly.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::comm::CommPoly;
use crate::error::{Error, Result};
use crate::family::{classical_family, delta_k, quantum_family, ClassicalFamily, QuantumFamily};
use crate::gens::{borel_basis, bracket, GenKind, MixedGen};
use crate::pbw::{PbwMonomial, UeaElement};
use crate::rational::{binomial, rat_int, Rational};
use crate::report::{CheckItem, CheckReport};

/// Projection along the normal ordering: the plus part keeps the
/// monomials with no antisymmetric factor (they lie in U(b)), the minus
/// part is the rest. a = a_plus + a_minus exactly.
pub fn split(a: &UeaElement) -> (UeaElement, UeaElement) {
    let mut plus = UeaElement::zero(a.rank());
    let mut minus = UeaElement::zero(a.rank());
    for (m, c) in a.terms() {
        if m.starts_with_f() {
            minus.add_term(m.clone(), c.clone());
        } else {
            plus.add_term(m.clone(), c.clone());
        }
    }
    (plus, minus)
}

/// A one-dimensional representation of the Borel subalgebra, recorded on
/// basis generators. Strictly lower generators must act by zero and the
/// diagonal ones by integers; both facts are produced, not assumed, by
/// `compute_character_*`. The group-level value on exp(tX) would be
/// exp(t chi(X)); only the Lie-algebra values enter any computation here.
#[derive(Clone, PartialEq, Debug)]
pub struct Character {
    pub level: usize,
    pub values: BTreeMap<MixedGen, Rational>,
}

impl Character {
    pub fn value(&self, g: MixedGen) -> Rational {
        self.values.get(&g).cloned().unwrap_or_else(Rational::zero)
    }

    /// Linear extension to an element of b given as generator terms.
    pub fn value_on_combination(&self, terms: &[(MixedGen, i64)]) -> Rational {
        let mut acc = Rational::zero();
        for &(g, c) in terms {
            acc += self.value(g) * rat_int(c);
        }
        acc
    }

    pub fn vanishes_on_strictly_lower(&self) -> bool {
        self.values.iter().all(|(g, v)| g.i == g.j || v.is_zero())
    }

    pub fn cartan_values_are_integers(&self) -> bool {
        self.values
            .iter()
            .filter(|(g, _)| g.i == g.j)
            .all(|(_, v)| v.denom().is_one())
    }
}

/// Character of the Borel action on a quantum family level: every
/// coefficient of the level must be an ad-eigenvector with one scalar per
/// generator.
pub fn compute_character_quantum(fam: &QuantumFamily, k: usize) -> Result<Character> {
    let n = fam.n;
    let entries: Vec<(usize, &UeaElement)> = fam
        .entries
        .iter()
        .filter(|((lvl, _), _)| *lvl == k)
        .map(|((_, i), e)| (*i, e))
        .collect();
    if entries.is_empty() {
        return Err(Error::LevelOutOfRange { n, k });
    }
    let mut values = BTreeMap::new();
    for x in borel_basis(n) {
        let mut chi: Option<Rational> = None;
        for &(i, e) in &entries {
            let r = e.adjoint(x);
            let ratio = e
                .proportionality_to(&r)
                .ok_or_else(|| Error::CharacterFailure {
                    k,
                    i,
                    generator: x.to_string(),
                })?;
            match &chi {
                None => chi = Some(ratio),
                Some(prev) if *prev == ratio => {}
                Some(_) => {
                    return Err(Error::CharacterFailure {
                        k,
                        i,
                        generator: x.to_string(),
                    })
                }
            }
        }
        values.insert(x, chi.unwrap());
    }
    Ok(Character { level: k, values })
}

/// Classical counterpart through the Kirillov-Kostant bracket.
pub fn compute_character_classical(fam: &ClassicalFamily, k: usize) -> Result<Character> {
    let n = fam.n;
    let entries: Vec<(usize, &CommPoly)> = fam
        .entries
        .iter()
        .filter(|((lvl, _), _)| *lvl == k)
        .map(|((_, i), e)| (*i, e))
        .collect();
    if entries.is_empty() {
        return Err(Error::LevelOutOfRange { n, k });
    }
    let mut values = BTreeMap::new();
    for x in borel_basis(n) {
        let xpoly = CommPoly::x(n, x.i, x.j);
        let mut chi: Option<Rational> = None;
        for &(i, e) in &entries {
            let r = xpoly.poisson_bracket(e)?;
            let ratio = e
                .proportionality_to(&r)
                .ok_or_else(|| Error::CharacterFailure {
                    k,
                    i,
                    generator: x.to_string(),
                })?;
            match &chi {
                None => chi = Some(ratio),
                Some(prev) if *prev == ratio => {}
                Some(_) => {
                    return Err(Error::CharacterFailure {
                        k,
                        i,
                        generator: x.to_string(),
                    })
                }
            }
        }
        values.insert(x, chi.unwrap());
    }
    Ok(Character { level: k, values })
}

/// The twist with m a = a eta_k(m): on a normal monomial b_1...b_s it is
/// the expanded product (b_1 + chi(b_1))...(b_s + chi(b_s)), extended
/// linearly. Subwords of a normal monomial stay normal, so the expansion
/// needs no reordering.
pub fn eta_map(m: &UeaElement, chi: &Character) -> Result<UeaElement> {
    let n = m.rank();
    let mut out = UeaElement::zero(n);
    for (mono, coef) in m.terms() {
        if mono.starts_with_f() {
            return Err(Error::NotInBorel(format!("{mono}")));
        }
        // accumulate (factor, kept exponent) choices with binomial weights
        let mut partial: Vec<(Rational, Vec<(MixedGen, u32)>)> = vec![(coef.clone(), Vec::new())];
        for &(g, e) in mono.factors() {
            let chi_g = chi.value(g);
            let mut next = Vec::with_capacity(partial.len() * (e as usize + 1));
            for keep in (0..=e).rev() {
                let dropped = e - keep;
                if dropped > 0 && chi_g.is_zero() {
                    continue;
                }
                let mut w = binomial(e, dropped);
                for _ in 0..dropped {
                    w *= &chi_g;
                }
                if w.is_zero() {
                    continue;
                }
                for (c, factors) in &partial {
                    let mut f = factors.clone();
                    if keep > 0 {
                        f.push((g, keep));
                    }
                    next.push((c * &w, f));
                }
            }
            partial = next;
        }
        for (c, factors) in partial {
            out.add_term(PbwMonomial::from_factors(factors), c);
        }
    }
    Ok(out)
}

/// The reduced family document: numerators and denominators live in U(b)
/// (E generators only); denominators are the projections of the top
/// u-power coefficients. The unprojected tops are kept alongside because
/// the exchange and localization identities hold for them.
#[derive(Clone, Debug)]
pub struct ReducedFamily {
    pub n: usize,
    pub numerators: BTreeMap<(usize, usize), UeaElement>,
    pub denominators: BTreeMap<usize, UeaElement>,
    pub characters: BTreeMap<usize, Character>,
    pub full_tops: BTreeMap<usize, UeaElement>,
}

/// Builds the quantum family at rank n, verifies the character property
/// on every level, and projects numerators and denominators to U(b).
pub fn reduce(n: usize) -> Result<ReducedFamily> {
    let fam = quantum_family(n)?;
    reduce_family(&fam)
}

pub fn reduce_family(fam: &QuantumFamily) -> Result<ReducedFamily> {
    let n = fam.n;
    let mut characters = BTreeMap::new();
    for k in fam.levels() {
        characters.insert(k, compute_character_quantum(fam, k)?);
    }
    let mut numerators = BTreeMap::new();
    for ((k, i), e) in &fam.entries {
        numerators.insert((*k, *i), split(e).0);
    }
    let mut denominators = BTreeMap::new();
    let mut full_tops = BTreeMap::new();
    for k in fam.levels() {
        let top = fam.denominator(k).expect("level present").clone();
        denominators.insert(k, split(&top).0);
        full_tops.insert(k, top);
    }
    Ok(ReducedFamily {
        n,
        numerators,
        denominators,
        characters,
        full_tops,
    })
}

/// Twisted exchange identity on projections:
/// a_+ eta_k(b_+) = b_+ eta_l(a_+) for every pair of family entries,
/// where k and l are the levels of a and b.
pub fn aks_identity_report(n: usize) -> Result<CheckReport> {
    let fam = quantum_family(n)?;
    let red = reduce_family(&fam)?;
    let mut report = CheckReport::new("aks-identity", n);
    let idx: Vec<(usize, usize)> = red.numerators.keys().copied().collect();
    for (a_pos, &(k, i)) in idx.iter().enumerate() {
        for &(l, j) in &idx[a_pos..] {
            let a_plus = &red.numerators[&(k, i)];
            let b_plus = &red.numerators[&(l, j)];
            let lhs = a_plus.nc_mul(&eta_map(b_plus, &red.characters[&k])?)?;
            let rhs = b_plus.nc_mul(&eta_map(a_plus, &red.characters[&l])?)?;
            let resid = lhs.sub(&rhs);
            report.push(CheckItem::exact_zero(
                format!("QI[{k},{i}]+ eta_{k}(QI[{l},{j}]+) = QI[{l},{j}]+ eta_{l}(QI[{k},{i}]+)"),
                resid.is_zero(),
                || format!("{} terms: {resid}", resid.num_terms()),
            ));
        }
    }
    Ok(report)
}

/// Denominator-free verification of commutativity of the localized ratio
/// family. Checks, exactly:
///   1. the exchange identity on the projected numerators,
///   2. pairwise commutativity of the unprojected level tops,
///   3. the eta relation m c = c eta_k(m) for every numerator m and
///      every unprojected top c.
pub fn ratio_commutativity_quantum_report(n: usize) -> Result<CheckReport> {
    let fam = quantum_family(n)?;
    let red = reduce_family(&fam)?;
    let mut report = aks_identity_report(n)?;
    report.suite = "ratio-commutativity-quantum".into();

    let levels: Vec<usize> = red.full_tops.keys().copied().collect();
    for (pos, &k) in levels.iter().enumerate() {
        for &m in &levels[pos..] {
            let c = red.full_tops[&k].commutator(&red.full_tops[&m])?;
            report.push(CheckItem::exact_zero(
                format!("[top_{k}, top_{m}]"),
                c.is_zero(),
                || format!("{} terms: {c}", c.num_terms()),
            ));
        }
    }
    for &k in &levels {
        let c = &red.full_tops[&k];
        let chi = &red.characters[&k];
        for ((l, j), m) in &red.numerators {
            let lhs = m.nc_mul(c)?;
            let rhs = c.nc_mul(&eta_map(m, chi)?)?;
            let resid = lhs.sub(&rhs);
            report.push(CheckItem::exact_zero(
                format!("QI[{l},{j}]+ top_{k} = top_{k} eta_{k}(QI[{l},{j}]+)"),
                resid.is_zero(),
                || format!("{} terms: {resid}", resid.num_terms()),
            ));
        }
    }
    Ok(report)
}

/// Classical ratio commutativity: with a = delta_k(lambda),
/// c = delta_{n-k}(lambda), b = delta_m(mu), d = delta_{n-m}(mu), the
/// bracket of the two ratios vanishes iff
/// cd{a,b} - ad{c,b} - cb{a,d} + ab{c,d} = 0 as a polynomial in the lower
/// coordinates and the two central spectral parameters.
pub fn ratio_commutativity_classical_report(n: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("ratio-commutativity-classical", n);
    let half = n / 2;
    let numerator = |k: usize| -> Result<CommPoly> { delta_k(n, k) };
    let denominator = |k: usize| -> Result<CommPoly> {
        if n - k == n {
            Ok(CommPoly::one(n))
        } else {
            delta_k(n, n - k)
        }
    };
    for k in 0..=half {
        for m in k..=half {
            let a = numerator(k)?;
            let c = denominator(k)?;
            let b = numerator(m)?.lambda_to_mu();
            let d = denominator(m)?.lambda_to_mu();
            let ab = a.poisson_bracket(&b)?;
            let cb = c.poisson_bracket(&b)?;
            let ad = a.poisson_bracket(&d)?;
            let cd_br = c.poisson_bracket(&d)?;
            let resid = c
                .mul(&d)
                .mul(&ab)
                .sub(&a.mul(&d).mul(&cb))
                .sub(&c.mul(&b).mul(&ad))
                .add(&a.mul(&b).mul(&cd_br));
            report.push(CheckItem::exact_zero(
                format!("{{P_{k}(lambda), P_{m}(mu)}} cross-multiplied"),
                resid.is_zero(),
                || format!("{} terms: {resid}", resid.num_terms()),
            ));
        }
    }
    Ok(report)
}

/// Right-division witnesses for the multiplicative set generated by the
/// level tops: for s = c_{k_1}...c_{k_r} and a in U(b) the witness pair
/// is s' = s, a' = eta_{k_r}(...eta_{k_1}(a)...), and s a' = a s' is
/// verified exactly.
pub fn ore_report(n: usize) -> Result<CheckReport> {
    let fam = quantum_family(n)?;
    let red = reduce_family(&fam)?;
    let mut report = CheckReport::new("ore", n);

    let e = |i: u8, j: u8| UeaElement::gen_e(n, i, j);
    let mut samples: Vec<(String, UeaElement)> = vec![
        ("1".into(), UeaElement::one(n)),
        ("e[1,1]".into(), e(1, 1)),
        ("e[2,1]".into(), e(2, 1)),
        ("e[1,1]*e[2,1]".into(), e(1, 1).nc_mul(&e(2, 1))?),
    ];
    let nn = n as u8;
    samples.push((format!("e[{nn},{nn}]^2"), e(nn, nn).nc_mul(&e(nn, nn))?));

    let levels: Vec<usize> = red.full_tops.keys().copied().collect();
    let mut denominator_words: Vec<Vec<usize>> = levels.iter().map(|&k| vec![k]).collect();
    if levels.len() >= 2 {
        denominator_words.push(vec![levels[0], levels[1]]);
    }
    if let Some(&k) = levels.last() {
        denominator_words.push(vec![k, k]);
    }

    for (name, a) in &samples {
        for word in &denominator_words {
            let mut s = UeaElement::one(n);
            let mut a_prime = a.clone();
            for &k in word {
                s = s.nc_mul(&red.full_tops[&k])?;
                a_prime = eta_map(&a_prime, &red.characters[&k])?;
            }
            let lhs = s.nc_mul(&a_prime)?;
            let rhs = a.nc_mul(&s)?;
            let resid = lhs.sub(&rhs);
            report.push(CheckItem::exact_zero(
                format!("s=tops{word:?}, a={name}: s a' = a s"),
                resid.is_zero(),
                || format!("{} terms: {resid}", resid.num_terms()),
            ));
        }
    }
    Ok(report)
}

/// Positive simple-root directions of the parabolic attached to level k:
/// the block parabolic with diagonal Levi blocks of sizes (k, n-2k, k),
/// i.e. every simple root except the two cut boundaries a_k and a_{n-k}.
/// Chopping k rows and columns distinguishes exactly the positions k and
/// n-k, and those two directions demonstrably break the invariance.
fn parabolic_window(n: usize, k: usize) -> Vec<(u8, u8)> {
    (1..n)
        .filter(|&t| t != k && t + k != n)
        .map(|t| (t as u8, t as u8 + 1))
        .collect()
}

/// Invariance of the level-k ratios under the parabolic subalgebra:
/// ad_X(I_{k,i}) I_{k,j} - I_{k,i} ad_X(I_{k,j}) = 0 for every generator
/// X of the parabolic and every pair of entries of the level.
pub fn parabolic_report(n: usize) -> Result<CheckReport> {
    let fam = classical_family(n)?;
    let mut report = CheckReport::new("parabolic", n);
    for k in 0..n {
        let entries: Vec<(usize, &CommPoly)> = fam
            .entries
            .iter()
            .filter(|((lvl, _), _)| *lvl == k)
            .map(|((_, i), e)| (*i, e))
            .collect();
        if entries.len() < 2 && parabolic_window(n, k).is_empty() {
            continue;
        }
        let mut gens: Vec<((u8, u8), String)> = borel_basis(n)
            .iter()
            .map(|g| ((g.i, g.j), format!("{g}")))
            .collect();
        for (i, j) in parabolic_window(n, k) {
            gens.push(((i, j), format!("e[{i},{j}]")));
        }
        for ((gi, gj), gname) in gens {
            let x = CommPoly::x(n, gi, gj);
            for &(i, ei) in &entries {
                for &(j, ej) in &entries {
                    if i > j {
                        continue;
                    }
                    let ad_i = x.poisson_bracket(ei)?;
                    let ad_j = x.poisson_bracket(ej)?;
                    let resid = ad_i.mul(ej).sub(&ei.mul(&ad_j));
                    report.push(CheckItem::exact_zero(
                        format!("level {k}, X={gname}, ratio ({i},{j})"),
                        resid.is_zero(),
                        || format!("{} terms: {resid}", resid.num_terms()),
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Characters report, both modes where requested: proportionality holds
/// on every level and generator, strictly-lower generators act by zero,
/// diagonal values are integers, and the character kills brackets.
pub fn characters_report(n: usize, classical: bool, quantum: bool) -> Result<CheckReport> {
    let mut report = CheckReport::new("characters", n);
    if classical {
        let fam = classical_family(n)?;
        for k in fam.levels() {
            match compute_character_classical(&fam, k) {
                Ok(chi) => push_character_items(&mut report, "classical", n, k, &chi),
                Err(e) => report.push(CheckItem::fail(
                    &format!("classical level {k}"),
                    e.to_string(),
                )),
            }
        }
    }
    if quantum {
        let fam = quantum_family(n)?;
        for k in fam.levels() {
            match compute_character_quantum(&fam, k) {
                Ok(chi) => push_character_items(&mut report, "quantum", n, k, &chi),
                Err(e) => report.push(CheckItem::fail(
                    &format!("quantum level {k}"),
                    e.to_string(),
                )),
            }
        }
    }
    Ok(report)
}

fn push_character_items(report: &mut CheckReport, mode: &str, n: usize, k: usize, chi: &Character) {
    report.push(CheckItem::new(
        format!("{mode} level {k}: proportional on all Borel generators"),
        true,
        format!(
            "cartan values {:?}",
            chi.values
                .iter()
                .filter(|(g, _)| g.i == g.j)
                .map(|(_, v)| v.to_string())
                .collect::<Vec<_>>()
        ),
    ));
    report.push(CheckItem::new(
        format!("{mode} level {k}: vanishes on strictly lower generators"),
        chi.vanishes_on_strictly_lower(),
        String::new(),
    ));
    report.push(CheckItem::new(
        format!("{mode} level {k}: integer Cartan values"),
        chi.cartan_values_are_integers(),
        String::new(),
    ));
    // character kills the derived algebra: chi([X, Y]) = 0 on basis pairs
    let basis = borel_basis(n);
    let mut derived_ok = true;
    for &x in &basis {
        for &y in &basis {
            let br = bracket(x, y);
            debug_assert!(br.iter().all(|(g, _)| g.kind == GenKind::E));
            if !chi.value_on_combination(&br).is_zero() {
                derived_ok = false;
            }
        }
    }
    report.push(CheckItem::new(
        format!("{mode} level {k}: vanishes on the derived algebra"),
        derived_ok,
        String::new(),
    ));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u8, j: u8) -> UeaElement {
        UeaElement::gen_e(2, i, j)
    }

    #[test]
    fn split_examples() {
        // e_12 = F(1,2) + E(2,1): plus part is e_21
        let (plus, minus) = split(&e(1, 2));
        assert_eq!(plus, e(2, 1));
        assert_eq!(plus.add(&minus), e(1, 2));

        // e_12 e_21: plus part is e_21^2
        let prod = e(1, 2).nc_mul(&e(2, 1)).unwrap();
        let (plus, _) = split(&prod);
        assert_eq!(plus, e(2, 1).nc_mul(&e(2, 1)).unwrap());

        // elements of U(b) are fixed
        let b = e(1, 1).nc_mul(&e(2, 1)).unwrap();
        let (plus, minus) = split(&b);
        assert_eq!(plus, b);
        assert!(minus.is_zero());
    }

    #[test]
    fn split_is_a_projection() {
        let a = e(1, 2).nc_mul(&e(2, 1)).unwrap().add(&e(1, 1));
        let (plus, minus) = split(&a);
        let (pp, pm) = split(&plus);
        assert_eq!(pp, plus);
        assert!(pm.is_zero());
        assert_eq!(plus.add(&minus), a);
    }

    #[test]
    fn characters_at_rank_two() {
        let fam = quantum_family(2).unwrap();
        let chi1 = compute_character_quantum(&fam, 1).unwrap();
        assert_eq!(chi1.value(MixedGen::e(1, 1)), rat_int(-1));
        assert_eq!(chi1.value(MixedGen::e(2, 2)), rat_int(1));
        assert_eq!(chi1.value(MixedGen::e(2, 1)), rat_int(0));

        let chi0 = compute_character_quantum(&fam, 0).unwrap();
        for v in chi0.values.values() {
            assert!(v.is_zero(), "level 0 acts trivially");
        }

        let cfam = classical_family(2).unwrap();
        let chi1c = compute_character_classical(&cfam, 1).unwrap();
        assert_eq!(chi1c.values, chi1.values);
    }

    #[test]
    fn eta_examples() {
        let fam = quantum_family(2).unwrap();
        let chi1 = compute_character_quantum(&fam, 1).unwrap();

        // eta(1) = 1
        assert_eq!(
            eta_map(&UeaElement::one(2), &chi1).unwrap(),
            UeaElement::one(2)
        );

        // eta_1(e_11) = e_11 - 1, witnessed by e_11 e_21 = e_21 (e_11 - 1)
        let eta_e11 = eta_map(&e(1, 1), &chi1).unwrap();
        assert_eq!(eta_e11, e(1, 1).sub(&UeaElement::one(2)));
        let lhs = e(1, 1).nc_mul(&e(2, 1)).unwrap();
        let rhs = e(2, 1).nc_mul(&eta_e11).unwrap();
        assert_eq!(lhs, rhs);

        // eta_1(e_11^2) = (e_11 - 1)^2
        let sq = e(1, 1).nc_mul(&e(1, 1)).unwrap();
        let shifted = e(1, 1).sub(&UeaElement::one(2));
        assert_eq!(
            eta_map(&sq, &chi1).unwrap(),
            shifted.nc_mul(&shifted).unwrap()
        );
    }

    #[test]
    fn eta_rejects_so_part() {
        let fam = quantum_family(2).unwrap();
        let chi = compute_character_quantum(&fam, 1).unwrap();
        assert!(eta_map(&e(1, 2), &chi).is_err());
    }

    #[test]
    fn aks_identity_rank_two() {
        let r = aks_identity_report(2).unwrap();
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn ratio_commutativity_rank_two() {
        let r = ratio_commutativity_quantum_report(2).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        let r = ratio_commutativity_classical_report(2).unwrap();
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn ore_rank_two() {
        let r = ore_report(2).unwrap();
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn parabolic_windows() {
        // level 0 keeps every positive simple root
        assert_eq!(parabolic_window(3, 0), vec![(1, 2), (2, 3)]);
        // the cut boundaries a_k and a_{n-k} are excluded
        assert!(parabolic_window(3, 1).is_empty());
        assert!(parabolic_window(3, 2).is_empty());
        assert_eq!(parabolic_window(4, 1), vec![(2, 3)]);
        assert_eq!(parabolic_window(5, 2), vec![(1, 2), (4, 5)]);
    }

    #[test]
    fn reduce_stores_borel_elements_only() {
        let red = reduce(2).unwrap();
        for e in red.numerators.values() {
            assert!(e.in_borel());
        }
        for e in red.denominators.values() {
            assert!(e.in_borel());
        }
        assert_eq!(red.characters.len(), red.denominators.len());
    }
}
