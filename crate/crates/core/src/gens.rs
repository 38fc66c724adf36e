//! The mixed linear basis of gl_n.
//!
//! `F(i,j) = e_ij - e_ji` for `i < j` spans the antisymmetric part so_n;
//! `E(i,j) = e_ij` for `i >= j` spans the lower Borel subalgebra b
//! (strictly lower part plus the Cartan diagonal). Together they form a
//! basis of gl_n, and the raw generator `e_ij` with `i < j` re-expresses
//! as `F(i,j) + E(j,i)`.
//!
//! The derived order (all F before all E, lexicographic on `(i, j)`
//! within each kind) is the global order used for PBW normal forms. With
//! this order, projecting onto the Borel enveloping algebra is "drop
//! every monomial whose first factor is an F".

use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GenKind {
    F,
    E,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MixedGen {
    pub kind: GenKind,
    pub i: u8,
    pub j: u8,
}

impl MixedGen {
    pub fn f(i: u8, j: u8) -> Self {
        assert!(i < j, "F(i,j) requires i < j");
        MixedGen {
            kind: GenKind::F,
            i,
            j,
        }
    }

    pub fn e(i: u8, j: u8) -> Self {
        assert!(i >= j, "E(i,j) requires i >= j");
        assert!(j >= 1, "indices are 1-based");
        MixedGen {
            kind: GenKind::E,
            i,
            j,
        }
    }

    pub fn fits_rank(&self, n: usize) -> bool {
        self.i >= 1 && self.j >= 1 && (self.i as usize) <= n && (self.j as usize) <= n
    }

    /// Expansion in elementary matrix units `e_pq`, with integer signs.
    pub fn as_elementary(&self) -> Vec<((u8, u8), i64)> {
        match self.kind {
            GenKind::F => vec![((self.i, self.j), 1), ((self.j, self.i), -1)],
            GenKind::E => vec![((self.i, self.j), 1)],
        }
    }
}

impl fmt::Display for MixedGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::F => write!(f, "f[{},{}]", self.i, self.j),
            GenKind::E => write!(f, "e[{},{}]", self.i, self.j),
        }
    }
}

/// Re-expression of an elementary matrix unit in the mixed basis.
pub fn elementary_to_mixed(p: u8, q: u8) -> Vec<(MixedGen, i64)> {
    if p < q {
        vec![(MixedGen::f(p, q), 1), (MixedGen::e(q, p), 1)]
    } else {
        vec![(MixedGen::e(p, q), 1)]
    }
}

/// Lie bracket `[a, b]` of two mixed-basis generators, expanded back in
/// the mixed basis. Derived from `[e_pq, e_rs] = d_qr e_ps - d_sp e_rq`.
pub fn bracket(a: MixedGen, b: MixedGen) -> Vec<(MixedGen, i64)> {
    let mut elementary: BTreeMap<(u8, u8), i64> = BTreeMap::new();
    for ((p, q), ca) in a.as_elementary() {
        for ((r, s), cb) in b.as_elementary() {
            let c = ca * cb;
            if q == r {
                *elementary.entry((p, s)).or_insert(0) += c;
            }
            if s == p {
                *elementary.entry((r, q)).or_insert(0) -= c;
            }
        }
    }
    let mut mixed: BTreeMap<MixedGen, i64> = BTreeMap::new();
    for ((p, q), c) in elementary {
        if c == 0 {
            continue;
        }
        for (g, cg) in elementary_to_mixed(p, q) {
            *mixed.entry(g).or_insert(0) += c * cg;
        }
    }
    mixed.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// Basis of the Borel subalgebra at rank n: E(i,j), 1 <= j <= i <= n,
/// in the global order.
pub fn borel_basis(n: usize) -> Vec<MixedGen> {
    let mut out = Vec::new();
    for i in 1..=n as u8 {
        for j in 1..=i {
            out.push(MixedGen::e(i, j));
        }
    }
    out
}

/// Full mixed basis at rank n, in the global order.
pub fn mixed_basis(n: usize) -> Vec<MixedGen> {
    let mut out = Vec::new();
    for i in 1..=n as u8 {
        for j in (i + 1)..=n as u8 {
            out.push(MixedGen::f(i, j));
        }
    }
    out.extend(borel_basis(n));
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn global_order_puts_f_before_e() {
        assert!(MixedGen::f(2, 3) < MixedGen::e(1, 1));
        assert!(MixedGen::f(1, 2) < MixedGen::f(1, 3));
        assert!(MixedGen::e(2, 1) < MixedGen::e(2, 2));
        assert!(MixedGen::e(2, 2) < MixedGen::e(3, 1));
    }

    #[test]
    fn bracket_of_cartan_and_lowering() {
        // [e_11, e_21] = -e_21
        let out = bracket(MixedGen::e(1, 1), MixedGen::e(2, 1));
        assert_eq!(out, vec![(MixedGen::e(2, 1), -1)]);
    }

    #[test]
    fn bracket_with_f_generator() {
        // [e_21, f_12] = [e_21, e_12 - e_21] = e_22 - e_11
        let out = bracket(MixedGen::e(2, 1), MixedGen::f(1, 2));
        assert_eq!(out, vec![(MixedGen::e(1, 1), -1), (MixedGen::e(2, 2), 1)]);
    }

    #[test]
    fn antisymmetry_on_basis() {
        for a in mixed_basis(3) {
            for b in mixed_basis(3) {
                let mut ab = bracket(a, b);
                let ba = bracket(b, a);
                for t in ab.iter_mut() {
                    t.1 = -t.1;
                }
                assert_eq!(ab, ba, "[{a},{b}] != -[{b},{a}]");
            }
        }
    }
}
