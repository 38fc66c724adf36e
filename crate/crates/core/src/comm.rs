//! Commutative polynomials in the coordinate functions x_ij on gl_n*
//! together with the central formal variables lambda, mu, eps and
//! u = z^{-1}, over exact rationals. This is where every classical
//! integral lives, and the target of the principal-symbol map.
//!
//! `mu` is a second central spectral variable used by the ratio
//! commutativity checks (two independent spectral parameters at once);
//! it never appears in serialized family documents.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat_int, Rational};

/// Exponent data of a single monomial. `xs` is sorted by coordinate
/// index and carries no zero exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct CommTerm {
    pub xs: Vec<((u8, u8), u32)>,
    pub u: u32,
    pub lambda: u32,
    pub mu: u32,
    pub eps: u32,
}

impl CommTerm {
    pub fn one() -> Self {
        CommTerm::default()
    }

    pub fn x(i: u8, j: u8) -> Self {
        CommTerm {
            xs: vec![((i, j), 1)],
            ..CommTerm::default()
        }
    }

    pub fn x_degree(&self) -> u32 {
        self.xs.iter().map(|&(_, e)| e).sum()
    }

    /// Degree in the spectral pair (u, lambda); the grading the family
    /// extraction groups by.
    pub fn spectral_degree(&self) -> u32 {
        self.u + self.lambda
    }

    fn mul(&self, other: &CommTerm) -> CommTerm {
        let mut xs = Vec::with_capacity(self.xs.len() + other.xs.len());
        let (mut a, mut b) = (self.xs.iter().peekable(), other.xs.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => {
                    if va < vb {
                        xs.push((va, ea));
                        a.next();
                    } else if vb < va {
                        xs.push((vb, eb));
                        b.next();
                    } else {
                        xs.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                }
                (Some(_), None) => {
                    xs.extend(a.by_ref().copied());
                    break;
                }
                (None, Some(_)) => {
                    xs.extend(b.by_ref().copied());
                    break;
                }
                (None, None) => break,
            }
        }
        CommTerm {
            xs,
            u: self.u + other.u,
            lambda: self.lambda + other.lambda,
            mu: self.mu + other.mu,
            eps: self.eps + other.eps,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommPoly {
    n: usize,
    terms: BTreeMap<CommTerm, Rational>,
}

impl CommPoly {
    pub fn zero(n: usize) -> Self {
        CommPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = CommPoly::zero(n);
        p.add_term(CommTerm::one(), c);
        p
    }

    pub fn one(n: usize) -> Self {
        CommPoly::constant(n, Rational::one())
    }

    pub fn x(n: usize, i: u8, j: u8) -> Self {
        assert!(i >= 1 && j >= 1 && i as usize <= n && j as usize <= n);
        let mut p = CommPoly::zero(n);
        p.add_term(CommTerm::x(i, j), Rational::one());
        p
    }

    pub fn var_u(n: usize) -> Self {
        let mut p = CommPoly::zero(n);
        p.add_term(
            CommTerm {
                u: 1,
                ..CommTerm::default()
            },
            Rational::one(),
        );
        p
    }

    pub fn var_lambda(n: usize) -> Self {
        let mut p = CommPoly::zero(n);
        p.add_term(
            CommTerm {
                lambda: 1,
                ..CommTerm::default()
            },
            Rational::one(),
        );
        p
    }

    pub fn var_mu(n: usize) -> Self {
        let mut p = CommPoly::zero(n);
        p.add_term(
            CommTerm {
                mu: 1,
                ..CommTerm::default()
            },
            Rational::one(),
        );
        p
    }

    pub fn var_eps(n: usize) -> Self {
        let mut p = CommPoly::zero(n);
        p.add_term(
            CommTerm {
                eps: 1,
                ..CommTerm::default()
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

    pub fn terms(&self) -> impl Iterator<Item = (&CommTerm, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, t: CommTerm, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
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

    pub fn add(&self, other: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> CommPoly {
        let mut out = CommPoly::zero(self.n);
        for (t, c) in self.terms() {
            out.terms.insert(t.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> CommPoly {
        if c.is_zero() {
            return CommPoly::zero(self.n);
        }
        let mut out = CommPoly::zero(self.n);
        for (t, ct) in self.terms() {
            out.terms.insert(t.clone(), ct * c);
        }
        out
    }

    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        let mut out = CommPoly::zero(self.n);
        for (ta, ca) in self.terms() {
            for (tb, cb) in other.terms() {
                out.add_term(ta.mul(tb), ca * cb);
            }
        }
        out
    }

    /// x-coordinates appearing with nonzero exponent anywhere.
    pub fn x_vars(&self) -> BTreeSet<(u8, u8)> {
        let mut out = BTreeSet::new();
        for (t, _) in self.terms() {
            for &(v, _) in &t.xs {
                out.insert(v);
            }
        }
        out
    }

    pub fn partial_x(&self, v: (u8, u8)) -> CommPoly {
        let mut out = CommPoly::zero(self.n);
        for (t, c) in self.terms() {
            if let Some(pos) = t.xs.iter().position(|&(w, _)| w == v) {
                let e = t.xs[pos].1;
                let mut xs = t.xs.clone();
                if e == 1 {
                    xs.remove(pos);
                } else {
                    xs[pos].1 = e - 1;
                }
                out.add_term(CommTerm { xs, ..t.clone() }, c * rat_int(e as i64));
            }
        }
        out
    }

    /// Kirillov-Kostant bracket on coordinate functions,
    /// `{x_ab, x_cd} = d_bc x_ad - d_da x_cb`, extended by Leibniz;
    /// lambda, mu, eps and u are central.
    pub fn poisson_bracket(&self, other: &CommPoly) -> Result<CommPoly> {
        if self.n != other.n {
            return Err(Error::RankMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        let mut out = CommPoly::zero(n);
        let gvars: Vec<((u8, u8), CommPoly)> = other
            .x_vars()
            .into_iter()
            .map(|v| (v, other.partial_x(v)))
            .collect();
        for a in self.x_vars() {
            let df = self.partial_x(a);
            if df.is_zero() {
                continue;
            }
            for (c, dg) in &gvars {
                let mut br = CommPoly::zero(n);
                if a.1 == c.0 {
                    br = br.add(&CommPoly::x(n, a.0, c.1));
                }
                if c.1 == a.0 {
                    br = br.sub(&CommPoly::x(n, c.0, a.1));
                }
                if br.is_zero() {
                    continue;
                }
                out = out.add(&df.mul(dg).mul(&br));
            }
        }
        Ok(out)
    }

    /// Substitute x_ij -> x_ji for every strictly upper coordinate.
    /// This is the projection onto functions on b* along so_n.
    pub fn transpose_upper(&self) -> CommPoly {
        let mut out = CommPoly::zero(self.n);
        for (t, c) in self.terms() {
            let mut folded: BTreeMap<(u8, u8), u32> = BTreeMap::new();
            for &((i, j), e) in &t.xs {
                let v = if i < j { (j, i) } else { (i, j) };
                *folded.entry(v).or_insert(0) += e;
            }
            out.add_term(
                CommTerm {
                    xs: folded.into_iter().collect(),
                    ..t.clone()
                },
                c.clone(),
            );
        }
        out
    }

    /// Evaluate the spectral variable u at 1, keeping everything else.
    pub fn set_u_one(&self) -> CommPoly {
        let mut out = CommPoly::zero(self.n);
        for (t, c) in self.terms() {
            out.add_term(CommTerm { u: 0, ..t.clone() }, c.clone());
        }
        out
    }

    pub fn max_x_degree(&self) -> u32 {
        self.terms().map(|(t, _)| t.x_degree()).max().unwrap_or(0)
    }

    pub fn lambda_degree(&self) -> Option<u32> {
        self.terms().map(|(t, _)| t.lambda).max()
    }

    /// Coefficient of lambda^d as a polynomial in the remaining variables.
    pub fn lambda_coefficient(&self, d: u32) -> CommPoly {
        let mut out = CommPoly::zero(self.n);
        for (t, c) in self.terms() {
            if t.lambda == d {
                out.add_term(
                    CommTerm {
                        lambda: 0,
                        ..t.clone()
                    },
                    c.clone(),
                );
            }
        }
        out
    }

    /// Rename lambda to mu. Used to form identities in two independent
    /// spectral parameters.
    pub fn lambda_to_mu(&self) -> CommPoly {
        let mut out = CommPoly::zero(self.n);
        for (t, c) in self.terms() {
            assert_eq!(t.mu, 0, "polynomial already involves mu");
            out.add_term(
                CommTerm {
                    lambda: 0,
                    mu: t.lambda,
                    ..t.clone()
                },
                c.clone(),
            );
        }
        out
    }

    /// Some(c) with `other == c * self`, None if not proportional.
    /// Zero `other` gives Some(0); zero `self` only matches zero.
    pub fn proportionality_to(&self, other: &CommPoly) -> Option<Rational> {
        if other.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_zero() {
            return None;
        }
        let (t0, c0) = self.terms.iter().next().unwrap();
        let c1 = other.terms.get(t0)?;
        let ratio = c1 / c0;
        if self.scale(&ratio) == *other {
            Some(ratio)
        } else {
            None
        }
    }

    /// Evaluate at a point of b*: coordinates x_ij with i >= j. Errors on
    /// upper coordinates or leftover spectral variables.
    pub fn eval_lower(&self, values: &BTreeMap<(u8, u8), f64>) -> Result<f64> {
        let mut acc = 0.0;
        for (t, c) in self.terms() {
            if t.u != 0 || t.lambda != 0 || t.mu != 0 || t.eps != 0 {
                return Err(Error::SpectralVariable(
                    "evaluation requires a pure coordinate polynomial".into(),
                ));
            }
            let mut prod = c.to_f64().unwrap_or(f64::NAN);
            for &((i, j), e) in &t.xs {
                if i < j {
                    return Err(Error::UpperCoordinate { i, j });
                }
                let v = values.get(&(i, j)).copied().unwrap_or(0.0);
                prod *= v.powi(e as i32);
            }
            acc += prod;
        }
        Ok(acc)
    }
}

impl fmt::Display for CommPoly {
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
            let mut factors: Vec<String> = Vec::new();
            if !ac.is_one() || (t.xs.is_empty() && t.u + t.lambda + t.mu + t.eps == 0) {
                factors.push(if ac.denom().is_one() {
                    format!("{}", ac.numer())
                } else {
                    format!("{}", ac)
                });
            }
            for &((i, j), e) in &t.xs {
                factors.push(pow_str(&format!("x{i}{j}"), e));
            }
            for (name, e) in [
                ("u", t.u),
                ("lambda", t.lambda),
                ("mu", t.mu),
                ("eps", t.eps),
            ] {
                if e > 0 {
                    factors.push(pow_str(name, e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

fn pow_str(base: &str, e: u32) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("{base}^{e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn x(i: u8, j: u8) -> CommPoly {
        CommPoly::x(2, i, j)
    }

    #[test]
    fn structure_constants() {
        // {x_11, x_21} = -x_21
        let b = x(1, 1).poisson_bracket(&x(2, 1)).unwrap();
        assert_eq!(b, x(2, 1).neg());
        // {x_21, x_22} = -x_21
        let b = x(2, 1).poisson_bracket(&x(2, 2)).unwrap();
        assert_eq!(b, x(2, 1).neg());
    }

    #[test]
    fn leibniz_in_first_argument() {
        // {x_11 x_22, x_21} = x_11 x_21 - x_22 x_21
        let b = x(1, 1).mul(&x(2, 2)).poisson_bracket(&x(2, 1)).unwrap();
        let expect = x(1, 1).mul(&x(2, 1)).sub(&x(2, 2).mul(&x(2, 1)));
        assert_eq!(b, expect);
    }

    #[test]
    fn centrals_have_zero_bracket() {
        let f = CommPoly::var_u(2)
            .mul(&CommPoly::var_lambda(2))
            .mul(&x(1, 1));
        let g = CommPoly::var_eps(2).add(&x(2, 1));
        let b = f.poisson_bracket(&g).unwrap();
        // only the x-parts contribute: {x_11, x_21} * u * lambda
        let expect = CommPoly::var_u(2)
            .mul(&CommPoly::var_lambda(2))
            .mul(&x(2, 1).neg());
        assert_eq!(b, expect);
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let f = CommPoly::x(2, 1, 1);
        let g = CommPoly::x(3, 1, 1);
        assert!(f.poisson_bracket(&g).is_err());
    }

    #[test]
    fn transpose_upper_folds_exponents() {
        let p = CommPoly::x(2, 1, 2).mul(&x(2, 1)).add(&x(1, 1));
        let q = p.transpose_upper();
        let expect = x(2, 1).mul(&x(2, 1)).add(&x(1, 1));
        assert_eq!(q, expect);
    }

    #[test]
    fn proportionality() {
        let p = x(2, 1).mul(&x(2, 2)).scale(&rat(2, 3));
        let q = p.scale(&rat(-5, 7));
        assert_eq!(p.proportionality_to(&q), Some(rat(-5, 7)));
        assert_eq!(p.proportionality_to(&CommPoly::zero(2)), Some(rat(0, 1)));
        assert_eq!(p.proportionality_to(&x(1, 1)), None);
    }

    #[test]
    fn eval_rejects_upper_coordinates() {
        let p = CommPoly::x(2, 1, 2);
        assert!(p.eval_lower(&BTreeMap::new()).is_err());
    }
}
