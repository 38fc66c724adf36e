//! Differential operators in the spectral variable, written in the
//! coordinates u = z^{-1} and D = d/dz with the relation D u = u D - u^2
//! (the u-coordinate form of D z - z D = 1). Elements are stored with all
//! u powers to the left of all D powers; multiplication re-normalizes via
//! D u^a = u^a D - a u^{a+1}.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{rat_int, Rational};

/// Normal-ordered composition of u^a1 D^b1 and u^a2 D^b2 as a list of
/// (u power, D power, integer coefficient).
pub(crate) fn compose_weyl_monomials(a1: u32, b1: u32, a2: u32, b2: u32) -> Vec<(u32, u32, i64)> {
    // Push the b1 D's one at a time through u^a2.
    let mut terms: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    terms.insert((a2, 0), 1);
    for _ in 0..b1 {
        let mut next: BTreeMap<(u32, u32), i64> = BTreeMap::new();
        for (&(a, d), &c) in &terms {
            *next.entry((a, d + 1)).or_insert(0) += c;
            if a > 0 {
                *next.entry((a + 1, d)).or_insert(0) -= c * a as i64;
            }
        }
        terms = next;
    }
    terms
        .into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|((a, d), c)| (a1 + a, d + b2, c))
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylElement {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl WeylElement {
    pub fn zero() -> Self {
        WeylElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        WeylElement::monomial(0, 0, Rational::one())
    }

    pub fn u() -> Self {
        WeylElement::monomial(1, 0, Rational::one())
    }

    pub fn d() -> Self {
        WeylElement::monomial(0, 1, Rational::one())
    }

    pub fn monomial(u: u32, d: u32, c: Rational) -> Self {
        let mut e = WeylElement::zero();
        e.add_term(u, d, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, u: u32, d: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((u, d)) {
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

    pub fn add(&self, other: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        for (&(u, d), c) in other.terms() {
            out.add_term(u, d, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        for (&(u, d), c) in other.terms() {
            out.add_term(u, d, -c.clone());
        }
        out
    }

    pub fn weyl_mul(&self, other: &WeylElement) -> WeylElement {
        let mut out = WeylElement::zero();
        for (&(a1, b1), c1) in self.terms() {
            for (&(a2, b2), c2) in other.terms() {
                for (u, d, c) in compose_weyl_monomials(a1, b1, a2, b2) {
                    out.add_term(u, d, c1 * c2 * rat_int(c));
                }
            }
        }
        out
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(u, d), c) in self.terms() {
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
            let mut parts = Vec::new();
            if !ac.is_one() || (u == 0 && d == 0) {
                parts.push(format!("{ac}"));
            }
            if u > 0 {
                parts.push(if u == 1 { "u".into() } else { format!("u^{u}") });
            }
            if d > 0 {
                parts.push(if d == 1 { "D".into() } else { format!("D^{d}") });
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relation() {
        // D u = u D - u^2
        let lhs = WeylElement::d().weyl_mul(&WeylElement::u());
        let expect = WeylElement::monomial(1, 1, Rational::one()).add(&WeylElement::monomial(
            2,
            0,
            rat_int(-1),
        ));
        assert_eq!(lhs, expect);
    }

    #[test]
    fn already_normal() {
        // u D is already normal ordered
        let lhs = WeylElement::u().weyl_mul(&WeylElement::d());
        assert_eq!(lhs, WeylElement::monomial(1, 1, Rational::one()));
    }

    #[test]
    fn d_through_square() {
        // D u^2 = u^2 D - 2 u^3
        let u2 = WeylElement::monomial(2, 0, Rational::one());
        let lhs = WeylElement::d().weyl_mul(&u2);
        let expect = WeylElement::monomial(2, 1, Rational::one()).add(&WeylElement::monomial(
            3,
            0,
            rat_int(-2),
        ));
        assert_eq!(lhs, expect);
    }
}
