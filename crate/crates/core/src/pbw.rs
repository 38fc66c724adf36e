//! The universal enveloping algebra of gl_n in PBW normal form over the
//! mixed basis.
//!
//! A monomial is a strictly increasing sequence of generators with
//! positive exponents; an element is a finite rational combination of
//! monomials. Products are normalized by repeatedly transposing adjacent
//! out-of-order factors, `X Y = Y X + [X, Y]`, which terminates because a
//! transposition removes one inversion and a bracket insertion lowers the
//! word degree. Equality of elements is literal equality of term maps.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::comm::CommPoly;
use crate::error::{Error, Result};
use crate::gens::{bracket, GenKind, MixedGen};
use crate::rational::{rat_int, Rational};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct PbwMonomial {
    factors: Vec<(MixedGen, u32)>,
}

impl PbwMonomial {
    pub fn one() -> Self {
        PbwMonomial::default()
    }

    pub fn generator(g: MixedGen) -> Self {
        PbwMonomial {
            factors: vec![(g, 1)],
        }
    }

    /// Builds from a sorted flat word; panics if the word is unsorted.
    pub fn from_sorted_word(word: &[MixedGen]) -> Self {
        let mut factors: Vec<(MixedGen, u32)> = Vec::new();
        for &g in word {
            match factors.last_mut() {
                Some((last, e)) if *last == g => *e += 1,
                Some((last, _)) => {
                    assert!(*last < g, "word is not sorted");
                    factors.push((g, 1));
                }
                None => factors.push((g, 1)),
            }
        }
        PbwMonomial { factors }
    }

    pub fn from_factors(factors: Vec<(MixedGen, u32)>) -> Self {
        let m = PbwMonomial { factors };
        debug_assert!(m
            .factors
            .windows(2)
            .all(|w| w[0].0 < w[1].0 && w[0].1 > 0 && w[1].1 > 0));
        m
    }

    pub fn factors(&self) -> &[(MixedGen, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// With the global order (F first) a normal monomial contains an F
    /// generator iff its first factor is one.
    pub fn starts_with_f(&self) -> bool {
        matches!(self.factors.first(), Some((g, _)) if g.kind == GenKind::F)
    }

    pub fn fits_rank(&self, n: usize) -> bool {
        self.factors.iter().all(|(g, _)| g.fits_rank(n))
    }

    fn to_word(&self) -> Vec<MixedGen> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        for &(g, e) in &self.factors {
            for _ in 0..e {
                w.push(g);
            }
        }
        w
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    format!("{g}")
                } else {
                    format!("{g}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Element of U(gl_n) in canonical form (no zero coefficients).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UeaElement {
    n: usize,
    terms: BTreeMap<PbwMonomial, Rational>,
}

impl UeaElement {
    pub fn zero(n: usize) -> Self {
        UeaElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut e = UeaElement::zero(n);
        e.add_term(PbwMonomial::one(), c);
        e
    }

    pub fn one(n: usize) -> Self {
        UeaElement::constant(n, Rational::one())
    }

    pub fn from_generator(n: usize, g: MixedGen) -> Self {
        assert!(g.fits_rank(n), "generator {g} does not fit rank {n}");
        let mut e = UeaElement::zero(n);
        e.add_term(PbwMonomial::generator(g), Rational::one());
        e
    }

    /// The raw matrix-unit generator e_ij expressed in the mixed basis:
    /// e_ij = F(i,j) + E(j,i) for i < j, and E(i,j) otherwise.
    pub fn gen_e(n: usize, i: u8, j: u8) -> Self {
        assert!(i >= 1 && j >= 1 && i as usize <= n && j as usize <= n);
        let mut e = UeaElement::zero(n);
        for (g, c) in crate::gens::elementary_to_mixed(i, j) {
            e.add_term(PbwMonomial::generator(g), rat_int(c));
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &UeaElement) -> UeaElement {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &UeaElement) -> UeaElement {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> UeaElement {
        let mut out = UeaElement::zero(self.n);
        for (m, c) in self.terms() {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> UeaElement {
        if c.is_zero() {
            return UeaElement::zero(self.n);
        }
        let mut out = UeaElement::zero(self.n);
        for (m, cm) in self.terms() {
            out.terms.insert(m.clone(), cm * c);
        }
        out
    }

    /// Noncommutative product in normal form.
    pub fn nc_mul(&self, other: &UeaElement) -> Result<UeaElement> {
        if self.n != other.n {
            return Err(Error::RankMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = UeaElement::zero(self.n);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                mono_mul_into(ma, mb, &(ca * cb), &mut out);
            }
        }
        Ok(out)
    }

    /// `a b - b a` in normal form.
    pub fn commutator(&self, other: &UeaElement) -> Result<UeaElement> {
        Ok(self.nc_mul(other)?.sub(&other.nc_mul(self)?))
    }

    /// Derivation action of a basis generator: `[X, a]`.
    pub fn adjoint(&self, x: MixedGen) -> UeaElement {
        UeaElement::from_generator(self.n, x)
            .commutator(self)
            .expect("same rank")
    }

    /// Classical limit: top generator-degree part with F(i,j) -> x_ij - x_ji
    /// and E(i,j) -> x_ij.
    pub fn principal_symbol(&self) -> CommPoly {
        let top = self.terms().map(|(m, _)| m.degree()).max().unwrap_or(0);
        let mut out = CommPoly::zero(self.n);
        for (m, c) in self.terms() {
            if m.degree() == top {
                out = out.add(&monomial_symbol(self.n, m).scale(c));
            }
        }
        out
    }

    /// Some(c) with `other == c * self`; see CommPoly::proportionality_to.
    pub fn proportionality_to(&self, other: &UeaElement) -> Option<Rational> {
        if other.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_zero() {
            return None;
        }
        let (m0, c0) = self.terms.iter().next().unwrap();
        let c1 = other.terms.get(m0)?;
        let ratio = c1 / c0;
        if self.scale(&ratio) == *other {
            Some(ratio)
        } else {
            None
        }
    }

    /// True if every monomial lies in U(b) (no F generators).
    pub fn in_borel(&self) -> bool {
        self.terms().all(|(m, _)| !m.starts_with_f())
    }
}

pub fn monomial_symbol(n: usize, m: &PbwMonomial) -> CommPoly {
    let mut acc = CommPoly::one(n);
    for &(g, e) in m.factors() {
        let base = match g.kind {
            GenKind::F => CommPoly::x(n, g.i, g.j).sub(&CommPoly::x(n, g.j, g.i)),
            GenKind::E => CommPoly::x(n, g.i, g.j),
        };
        for _ in 0..e {
            acc = acc.mul(&base);
        }
    }
    acc
}

/// Normal-ordered product of two monomials, accumulated into `out` with
/// overall coefficient `coef`.
pub(crate) fn mono_mul_into(
    a: &PbwMonomial,
    b: &PbwMonomial,
    coef: &Rational,
    out: &mut UeaElement,
) {
    // Fast path: concatenation already ordered.
    let ordered = match (a.factors().last(), b.factors().first()) {
        (None, _) | (_, None) => true,
        (Some(&(ga, _)), Some(&(gb, _))) => ga <= gb,
    };
    if ordered {
        let mut factors = a.factors().to_vec();
        for &(g, e) in b.factors() {
            match factors.last_mut() {
                Some((last, le)) if *last == g => *le += e,
                _ => factors.push((g, e)),
            }
        }
        out.add_term(PbwMonomial::from_factors(factors), coef.clone());
        return;
    }

    let mut word = a.to_word();
    word.extend(b.to_word());
    normal_order_into(coef, word, out);
}

fn first_inversion(w: &[MixedGen]) -> Option<usize> {
    w.windows(2).position(|p| p[0] > p[1])
}

fn normal_order_into(coef: &Rational, word: Vec<MixedGen>, out: &mut UeaElement) {
    let mut stack: Vec<(Rational, Vec<MixedGen>)> = vec![(coef.clone(), word)];
    while let Some((c, w)) = stack.pop() {
        match first_inversion(&w) {
            None => out.add_term(PbwMonomial::from_sorted_word(&w), c),
            Some(t) => {
                for (g, cg) in bracket(w[t], w[t + 1]) {
                    let mut reduced = Vec::with_capacity(w.len() - 1);
                    reduced.extend_from_slice(&w[..t]);
                    reduced.push(g);
                    reduced.extend_from_slice(&w[t + 2..]);
                    stack.push((&c * rat_int(cg), reduced));
                }
                let mut swapped = w;
                swapped.swap(t, t + 1);
                stack.push((c, swapped));
            }
        }
    }
}

impl fmt::Display for UeaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let ac = c.abs();
            if ac.is_one() && !m.is_one() {
                write!(f, "{m}")?;
            } else if m.is_one() {
                write!(f, "{ac}")?;
            } else {
                write!(f, "{ac}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u8, j: u8) -> UeaElement {
        UeaElement::gen_e(2, i, j)
    }

    #[test]
    fn unit_law() {
        let a = e(1, 2).nc_mul(&e(2, 1)).unwrap();
        assert_eq!(UeaElement::one(2).nc_mul(&a).unwrap(), a);
        assert_eq!(a.nc_mul(&UeaElement::one(2)).unwrap(), a);
    }

    #[test]
    fn defining_gl2_relation() {
        // e_12 e_21 = e_21 e_12 + e_11 - e_22
        let lhs = e(1, 2).nc_mul(&e(2, 1)).unwrap();
        let rhs = e(2, 1)
            .nc_mul(&e(1, 2))
            .unwrap()
            .add(&e(1, 1))
            .sub(&e(2, 2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn associativity_on_the_sl2_triple() {
        let ab = e(1, 2).nc_mul(&e(2, 1)).unwrap();
        let bc = e(2, 1).nc_mul(&e(1, 2)).unwrap();
        assert_eq!(ab.nc_mul(&e(1, 2)).unwrap(), e(1, 2).nc_mul(&bc).unwrap());
    }

    #[test]
    fn commutator_examples() {
        // [e_11, e_12] = e_12
        assert_eq!(e(1, 1).commutator(&e(1, 2)).unwrap(), e(1, 2));
        // [e_12, e_21] = e_11 - e_22
        assert_eq!(e(1, 2).commutator(&e(2, 1)).unwrap(), e(1, 1).sub(&e(2, 2)));
        // [e_12, e_34] = 0 at rank 4
        let a = UeaElement::gen_e(4, 1, 2);
        let b = UeaElement::gen_e(4, 3, 4);
        assert!(a.commutator(&b).unwrap().is_zero());
    }

    #[test]
    fn adjoint_examples() {
        // ad(e_11)(e_21) = -e_21
        assert_eq!(e(2, 1).adjoint(MixedGen::e(1, 1)), e(2, 1).neg());
        // ad(e_21)(e_21) = 0
        assert!(e(2, 1).adjoint(MixedGen::e(2, 1)).is_zero());
        // ad(e_11)(e_21^2) = -2 e_21^2
        let sq = e(2, 1).nc_mul(&e(2, 1)).unwrap();
        assert_eq!(sq.adjoint(MixedGen::e(1, 1)), sq.scale(&rat_int(-2)));
    }

    #[test]
    fn symbol_examples() {
        let n = 2;
        let x = |i, j| CommPoly::x(n, i, j);
        // e_11 e_22 - e_21 e_12 -> x_11 x_22 - x_21 x_12
        let a = e(1, 1)
            .nc_mul(&e(2, 2))
            .unwrap()
            .sub(&e(2, 1).nc_mul(&e(1, 2)).unwrap());
        assert_eq!(
            a.principal_symbol(),
            x(1, 1).mul(&x(2, 2)).sub(&x(2, 1).mul(&x(1, 2)))
        );
        // e_12 e_21 -> x_21 x_12, the degree-1 tail drops
        let b = e(1, 2).nc_mul(&e(2, 1)).unwrap();
        assert_eq!(b.principal_symbol(), x(2, 1).mul(&x(1, 2)));
        // scalars
        assert_eq!(UeaElement::one(n).principal_symbol(), CommPoly::one(n));
    }

    #[test]
    fn borel_projection_shape() {
        // e_12 = F(1,2) + E(2,1): exactly one monomial starts with F
        let a = e(1, 2);
        let f_terms: Vec<_> = a.terms().filter(|(m, _)| m.starts_with_f()).collect();
        assert_eq!(f_terms.len(), 1);
        assert!(!a.in_borel());
        assert!(e(2, 1).in_borel());
    }

    #[test]
    fn rank_mismatch() {
        let a = UeaElement::gen_e(2, 1, 1);
        let b = UeaElement::gen_e(3, 1, 1);
        assert!(a.nc_mul(&b).is_err());
        assert!(a.commutator(&b).is_err());
    }
}
