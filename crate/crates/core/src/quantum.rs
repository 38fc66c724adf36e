//! The coefficient ring of the quantum spectral pencil:
//! U(gl_n) tensored with the differential-operator algebra in (u, D) and
//! the central deformation variable eps. The enveloping part and the
//! spectral part commute with each other, so a term is a PBW monomial
//! times u^a D^b eps^c and multiplication normalizes the two parts
//! independently.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::comm::{CommPoly, CommTerm};
use crate::error::{Error, Result};
use crate::pbw::{mono_mul_into, monomial_symbol, PbwMonomial, UeaElement};
use crate::rational::{rat_int, Rational};
use crate::weyl::compose_weyl_monomials;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct QuantumTerm {
    pub mono: PbwMonomial,
    pub u: u32,
    pub d: u32,
    pub eps: u32,
}

impl QuantumTerm {
    /// Degree in the spectral pair (u, D), preserved by multiplication.
    pub fn spectral_degree(&self) -> u32 {
        self.u + self.d
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuantumPoly {
    n: usize,
    terms: BTreeMap<QuantumTerm, Rational>,
}

impl QuantumPoly {
    pub fn zero(n: usize) -> Self {
        QuantumPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = QuantumPoly::zero(n);
        p.add_term(QuantumTerm::default(), c);
        p
    }

    pub fn one(n: usize) -> Self {
        QuantumPoly::constant(n, Rational::one())
    }

    pub fn from_uea(a: &UeaElement) -> Self {
        let mut p = QuantumPoly::zero(a.rank());
        for (m, c) in a.terms() {
            p.add_term(
                QuantumTerm {
                    mono: m.clone(),
                    ..QuantumTerm::default()
                },
                c.clone(),
            );
        }
        p
    }

    pub fn gen_e(n: usize, i: u8, j: u8) -> Self {
        QuantumPoly::from_uea(&UeaElement::gen_e(n, i, j))
    }

    pub fn var_u(n: usize) -> Self {
        let mut p = QuantumPoly::zero(n);
        p.add_term(
            QuantumTerm {
                u: 1,
                ..QuantumTerm::default()
            },
            Rational::one(),
        );
        p
    }

    pub fn var_d(n: usize) -> Self {
        let mut p = QuantumPoly::zero(n);
        p.add_term(
            QuantumTerm {
                d: 1,
                ..QuantumTerm::default()
            },
            Rational::one(),
        );
        p
    }

    pub fn var_eps(n: usize) -> Self {
        let mut p = QuantumPoly::zero(n);
        p.add_term(
            QuantumTerm {
                eps: 1,
                ..QuantumTerm::default()
            },
            Rational::one(),
        );
        p
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QuantumTerm, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, t: QuantumTerm, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
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

    pub fn add(&self, other: &QuantumPoly) -> QuantumPoly {
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &QuantumPoly) -> QuantumPoly {
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> QuantumPoly {
        let mut out = QuantumPoly::zero(self.n);
        for (t, c) in self.terms() {
            out.terms.insert(t.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> QuantumPoly {
        if c.is_zero() {
            return QuantumPoly::zero(self.n);
        }
        let mut out = QuantumPoly::zero(self.n);
        for (t, ct) in self.terms() {
            out.terms.insert(t.clone(), ct * c);
        }
        out
    }

    pub fn mul(&self, other: &QuantumPoly) -> Result<QuantumPoly> {
        if self.n != other.n {
            return Err(Error::RankMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = QuantumPoly::zero(self.n);
        for (ta, ca) in self.terms() {
            for (tb, cb) in other.terms() {
                let eps = ta.eps + tb.eps;
                let weyl = compose_weyl_monomials(ta.u, ta.d, tb.u, tb.d);
                // enveloping part of the product, normal ordered
                let mut mono_part = UeaElement::zero(self.n);
                mono_mul_into(&ta.mono, &tb.mono, &(ca * cb), &mut mono_part);
                for (m, cm) in mono_part.terms() {
                    for &(u, d, cw) in &weyl {
                        out.add_term(
                            QuantumTerm {
                                mono: m.clone(),
                                u,
                                d,
                                eps,
                            },
                            cm * rat_int(cw),
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &QuantumPoly) -> Result<QuantumPoly> {
        Ok(self.mul(other)?.sub(&other.mul(self)?))
    }

    /// Classical limit. Within each fixed spectral monomial (u^a, D^b,
    /// eps^c) the top generator-degree part survives, with
    /// F(i,j) -> x_ij - x_ji, E(i,j) -> x_ij, D -> lambda, u -> u.
    pub fn principal_symbol(&self) -> CommPoly {
        let mut top: BTreeMap<(u32, u32, u32), u32> = BTreeMap::new();
        for (t, _) in self.terms() {
            let key = (t.u, t.d, t.eps);
            let deg = t.mono.degree();
            let e = top.entry(key).or_insert(deg);
            if deg > *e {
                *e = deg;
            }
        }
        let mut out = CommPoly::zero(self.n);
        for (t, c) in self.terms() {
            if t.mono.degree() != top[&(t.u, t.d, t.eps)] {
                continue;
            }
            let sym = monomial_symbol(self.n, &t.mono).scale(c);
            for (ct, cc) in sym.terms() {
                out.add_term(
                    CommTerm {
                        xs: ct.xs.clone(),
                        u: t.u,
                        lambda: t.d,
                        mu: 0,
                        eps: t.eps,
                    },
                    cc.clone(),
                );
            }
        }
        out
    }

    /// Strips the spectral part; errors if any u, D or eps power remains.
    pub fn to_uea(&self) -> Result<UeaElement> {
        let mut out = UeaElement::zero(self.n);
        for (t, c) in self.terms() {
            if t.u != 0 || t.d != 0 || t.eps != 0 {
                return Err(Error::SpectralVariable(format!(
                    "u^{} D^{} eps^{}",
                    t.u, t.d, t.eps
                )));
            }
            out.add_term(t.mono.clone(), c.clone());
        }
        Ok(out)
    }

    /// Multiply by an enveloping-algebra element on the left.
    pub fn scale_uea_left(&self, a: &UeaElement) -> Result<QuantumPoly> {
        QuantumPoly::from_uea(a).mul(self)
    }
}

impl fmt::Display for QuantumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, c) in self.terms() {
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
            if !ac.is_one() || (t.mono.is_one() && t.u == 0 && t.d == 0 && t.eps == 0) {
                parts.push(format!("{ac}"));
            }
            if !t.mono.is_one() {
                parts.push(format!("{}", t.mono));
            }
            for (name, e) in [("u", t.u), ("D", t.d), ("eps", t.eps)] {
                if e > 0 {
                    parts.push(if e == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{e}")
                    });
                }
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
    fn spectral_and_enveloping_parts_commute() {
        let n = 2;
        let a = QuantumPoly::gen_e(n, 2, 1)
            .mul(&QuantumPoly::var_d(n))
            .unwrap();
        let b = QuantumPoly::var_d(n)
            .mul(&QuantumPoly::gen_e(n, 2, 1))
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn weyl_relation_inside_the_ring() {
        let n = 2;
        let du = QuantumPoly::var_d(n).mul(&QuantumPoly::var_u(n)).unwrap();
        let ud = QuantumPoly::var_u(n).mul(&QuantumPoly::var_d(n)).unwrap();
        let mut u2 = QuantumPoly::zero(n);
        u2.add_term(
            QuantumTerm {
                u: 2,
                ..QuantumTerm::default()
            },
            rat_int(-1),
        );
        assert_eq!(du, ud.add(&u2));
    }

    #[test]
    fn symbol_of_pencil_like_entry_keeps_all_spectral_cells() {
        // e_12 u + 1 -> x_12 u + 1
        let n = 2;
        let entry = QuantumPoly::gen_e(n, 1, 2)
            .mul(&QuantumPoly::var_u(n))
            .unwrap()
            .add(&QuantumPoly::one(n));
        let sym = entry.principal_symbol();
        let expect = CommPoly::x(n, 1, 2)
            .mul(&CommPoly::var_u(n))
            .add(&CommPoly::one(n));
        assert_eq!(sym, expect);
    }

    #[test]
    fn to_uea_rejects_spectral_parts() {
        assert!(QuantumPoly::var_u(2).to_uea().is_err());
        assert!(QuantumPoly::gen_e(2, 1, 1).to_uea().is_ok());
    }
}
