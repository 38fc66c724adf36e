//! Commutative and noncommutative determinants.
//!
//! The permutation-pair sum is the production implementation for
//! noncommutative entries; the antisymmetrizer-trace form is kept as an
//! independent oracle (naive cost n! * n^n) and the two are required to
//! agree exactly. Factor order inside every product is ascending position
//! k = 1..n, with no reorderings that would assume commutativity.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::quantum::QuantumPoly;
use crate::rational::{factorial, Rational};

/// All permutations of 0..n with their signs, in lexicographic order.
pub fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i8)>) {
        if rest.is_empty() {
            out.push((prefix.clone(), perm_sign(prefix)));
            return;
        }
        for idx in 0..rest.len() {
            let v = rest.remove(idx);
            prefix.push(v);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(idx, v);
        }
    }
    rec(&mut Vec::new(), &mut items, &mut out);
    out
}

fn perm_sign(p: &[usize]) -> i8 {
    let mut inv = 0usize;
    for a in 0..p.len() {
        for b in (a + 1)..p.len() {
            if p[a] > p[b] {
                inv += 1;
            }
        }
    }
    if inv & 1 == 0 {
        1
    } else {
        -1
    }
}

/// Minimal ring interface for the Leibniz determinant.
pub trait ComRing: Clone {
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
}

impl ComRing for crate::comm::CommPoly {
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
}

impl ComRing for f64 {
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
}

/// Leibniz determinant over a commutative ring.
pub fn det_commutative<T: ComRing>(m: &SquareMatrix<T>) -> Result<T> {
    let n = m.size();
    if n == 0 {
        return Err(Error::InvalidRank(0));
    }
    let mut acc: Option<T> = None;
    for (perm, sign) in permutations_with_sign(n) {
        let mut prod = m.get(0, perm[0]).clone();
        for (k, &c) in perm.iter().enumerate().skip(1) {
            prod = prod.ring_mul(m.get(k, c));
        }
        if sign < 0 {
            prod = prod.ring_neg();
        }
        acc = Some(match acc {
            None => prod,
            Some(a) => a.ring_add(&prod),
        });
    }
    Ok(acc.unwrap())
}

/// Noncommutative determinant as the normalized double permutation sum
/// (1/n!) sum over (tau, sigma) of sign(tau) sign(sigma)
/// B_{tau(1),sigma(1)} ... B_{tau(n),sigma(n)}.
/// Enumeration is lexicographic in (tau, sigma).
pub fn det_nc_permsum(m: &SquareMatrix<QuantumPoly>) -> Result<QuantumPoly> {
    let n = m.size();
    if n == 0 {
        return Err(Error::InvalidRank(0));
    }
    let rank = m.get(0, 0).rank();
    let perms = permutations_with_sign(n);
    let mut acc = QuantumPoly::zero(rank);
    for (tau, ts) in &perms {
        for (sigma, ss) in &perms {
            let mut prod = m.get(tau[0], sigma[0]).clone();
            for k in 1..n {
                prod = prod.mul(m.get(tau[k], sigma[k]))?;
            }
            if ts * ss < 0 {
                prod = prod.neg();
            }
            acc = acc.add(&prod);
        }
    }
    let norm = Rational::new(1.into(), factorial(n).numer().clone());
    Ok(acc.scale(&norm))
}

/// Noncommutative determinant via the antisymmetrizer on the n-fold
/// tensor space: expand B_1...B_n over matrix units, antisymmetrize,
/// trace. Oracle implementation; cost n! * n^n products.
pub fn det_nc_antisym(m: &SquareMatrix<QuantumPoly>) -> Result<QuantumPoly> {
    let n = m.size();
    if n == 0 {
        return Err(Error::InvalidRank(0));
    }
    let rank = m.get(0, 0).rank();
    let mut acc = QuantumPoly::zero(rank);
    for (sigma, sign) in permutations_with_sign(n) {
        let mut sigma_inv = vec![0usize; n];
        for (a, &b) in sigma.iter().enumerate() {
            sigma_inv[b] = a;
        }
        // sum over all column multi-indices j in [0,n)^n of the slotwise
        // product B_{j[sigma^{-1}(t)], j[t]}, t ascending
        let mut j = vec![0usize; n];
        loop {
            let mut prod = m.get(j[sigma_inv[0]], j[0]).clone();
            for t in 1..n {
                prod = prod.mul(m.get(j[sigma_inv[t]], j[t]))?;
            }
            if sign < 0 {
                prod = prod.neg();
            }
            acc = acc.add(&prod);

            // advance the multi-index
            let mut t = n;
            loop {
                if t == 0 {
                    break;
                }
                t -= 1;
                j[t] += 1;
                if j[t] < n {
                    break;
                }
                j[t] = 0;
            }
            if j.iter().all(|&v| v == 0) {
                break;
            }
        }
        let _ = &j;
    }
    let norm = Rational::new(1.into(), factorial(n).numer().clone());
    Ok(acc.scale(&norm))
}

/// Exact inverse of a rational matrix by Gauss-Jordan elimination.
pub fn rational_inverse(g: &SquareMatrix<Rational>) -> Result<SquareMatrix<Rational>> {
    let n = g.size();
    let mut a = g.clone();
    let mut inv = crate::matrix::rational_identity(n);
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !a.get(r, col).is_zero())
            .ok_or(Error::SingularMatrix)?;
        if pivot_row != col {
            for c in 0..n {
                let tmp = a.get(pivot_row, c).clone();
                *a.get_mut(pivot_row, c) = a.get(col, c).clone();
                *a.get_mut(col, c) = tmp;
                let tmp = inv.get(pivot_row, c).clone();
                *inv.get_mut(pivot_row, c) = inv.get(col, c).clone();
                *inv.get_mut(col, c) = tmp;
            }
        }
        let pivot = a.get(col, col).clone();
        for c in 0..n {
            *a.get_mut(col, c) = a.get(col, c) / &pivot;
            *inv.get_mut(col, c) = inv.get(col, c) / &pivot;
        }
        for r in 0..n {
            if r == col || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for c in 0..n {
                let va = a.get(col, c).clone();
                *a.get_mut(r, c) = a.get(r, c) - &factor * va;
                let vi = inv.get(col, c).clone();
                *inv.get_mut(r, c) = inv.get(r, c) - &factor * vi;
            }
        }
    }
    Ok(inv)
}

/// g M g^{-1} for exact rational g and quantum entries.
pub fn conjugate_matrix(
    g: &SquareMatrix<Rational>,
    m: &SquareMatrix<QuantumPoly>,
) -> Result<SquareMatrix<QuantumPoly>> {
    let n = m.size();
    if g.size() != n {
        return Err(Error::RankMismatch {
            left: g.size(),
            right: n,
        });
    }
    let ginv = rational_inverse(g)?;
    let rank = m.get(0, 0).rank();
    // left = g * M
    let left = SquareMatrix::from_fn(n, |r, c| {
        let mut acc = QuantumPoly::zero(rank);
        for t in 0..n {
            acc = acc.add(&m.get(t, c).scale(g.get(r, t)));
        }
        acc
    });
    Ok(SquareMatrix::from_fn(n, |r, c| {
        let mut acc = QuantumPoly::zero(rank);
        for t in 0..n {
            acc = acc.add(&left.get(r, t).scale(ginv.get(t, c)));
        }
        acc
    }))
}

/// Whether det(g M g^{-1}) = det(M) exactly, with the permutation-sum
/// determinant on both sides.
pub fn conjugation_check(
    m: &SquareMatrix<QuantumPoly>,
    g: &SquareMatrix<Rational>,
) -> Result<bool> {
    let conj = conjugate_matrix(g, m)?;
    Ok(det_nc_permsum(&conj)? == det_nc_permsum(m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comm::CommPoly;
    use crate::matrix::{borel_lax, chop, pencil_quantum};
    use crate::rational::{rat, rat_int};

    #[test]
    fn permutation_signs() {
        let perms = permutations_with_sign(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms[0], (vec![0, 1, 2], 1));
        assert_eq!(perms[1], (vec![0, 2, 1], -1));
        // lexicographic enumeration
        assert!(perms.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn det_commutative_examples() {
        // 1x1: x_11 - lambda
        let a = chop(&borel_lax(1).unwrap(), 0).unwrap();
        let d = det_commutative(&a).unwrap();
        assert_eq!(d, CommPoly::x(1, 1, 1).sub(&CommPoly::var_lambda(1)));

        // 2x2 Borel pencil: (x_11-L)(x_22-L) - x_21^2
        let a = chop(&borel_lax(2).unwrap(), 0).unwrap();
        let d = det_commutative(&a).unwrap();
        let x = |i, j| CommPoly::x(2, i, j);
        let l = CommPoly::var_lambda(2);
        let expect = x(1, 1)
            .sub(&l)
            .mul(&x(2, 2).sub(&l))
            .sub(&x(2, 1).mul(&x(2, 1)));
        assert_eq!(d, expect);

        // identity matrix
        let id = SquareMatrix::from_fn(3, |r, c| if r == c { 1.0 } else { 0.0 });
        assert_eq!(det_commutative(&id).unwrap(), 1.0);
    }

    #[test]
    fn permsum_on_generator_entries() {
        // [[e11, e12], [e21, e22]] -> (e11 e22 + e22 e11 - e12 e21 - e21 e12)/2
        let n = 2;
        let e = |i, j| QuantumPoly::gen_e(n, i, j);
        let m = SquareMatrix::from_fn(2, |r, c| e((r + 1) as u8, (c + 1) as u8));
        let d = det_nc_permsum(&m).unwrap();
        let expect = e(1, 1)
            .mul(&e(2, 2))
            .unwrap()
            .add(&e(2, 2).mul(&e(1, 1)).unwrap())
            .sub(&e(1, 2).mul(&e(2, 1)).unwrap())
            .sub(&e(2, 1).mul(&e(1, 2)).unwrap())
            .scale(&rat(1, 2));
        assert_eq!(d, expect);
    }

    #[test]
    fn permsum_1x1_and_antisym_1x1() {
        let m = SquareMatrix::from_fn(1, |_, _| QuantumPoly::gen_e(1, 1, 1));
        assert_eq!(det_nc_permsum(&m).unwrap(), QuantumPoly::gen_e(1, 1, 1));
        assert_eq!(det_nc_antisym(&m).unwrap(), QuantumPoly::gen_e(1, 1, 1));
    }

    #[test]
    fn antisym_equals_permsum_on_pencils() {
        for n in [2usize, 3] {
            let p = pencil_quantum(n).unwrap();
            assert_eq!(
                det_nc_permsum(&p).unwrap(),
                det_nc_antisym(&p).unwrap(),
                "definitions disagree at n = {n}"
            );
        }
    }

    #[test]
    fn antisym_equals_permsum_with_quadratic_entries() {
        // entry degree 2: products of two generators plus spectral parts
        for n in [2usize, 3] {
            let e =
                |i: usize, j: usize| QuantumPoly::gen_e(n, (i % n + 1) as u8, (j % n + 1) as u8);
            let m = SquareMatrix::from_fn(n, |r, c| {
                e(r, c)
                    .mul(&e(c, r + 1))
                    .unwrap()
                    .add(&QuantumPoly::var_d(n).scale(&rat_int((r + 2 * c) as i64)))
                    .add(&QuantumPoly::var_u(n))
            });
            assert_eq!(
                det_nc_permsum(&m).unwrap(),
                det_nc_antisym(&m).unwrap(),
                "degree-2 entries at n = {n}"
            );
        }
    }

    #[test]
    fn permsum_reduces_to_commutative_case() {
        // entries scalar + powers of the single generator e_21: everything
        // commutes, so the single-permutation Leibniz sum must agree.
        let n = 2;
        let g = QuantumPoly::gen_e(n, 2, 1);
        let entries = [
            QuantumPoly::constant(n, rat_int(3)),
            g.clone(),
            g.mul(&g).unwrap(),
            g.add(&QuantumPoly::one(n)),
        ];
        let m = SquareMatrix::from_fn(2, |r, c| entries[2 * r + c].clone());
        let leibniz = m
            .get(0, 0)
            .mul(m.get(1, 1))
            .unwrap()
            .sub(&m.get(0, 1).mul(m.get(1, 0)).unwrap());
        assert_eq!(det_nc_permsum(&m).unwrap(), leibniz);
    }

    #[test]
    fn conjugation_cases() {
        let p = pencil_quantum(2).unwrap();
        let id = crate::matrix::rational_identity(2);
        assert!(conjugation_check(&p, &id).unwrap());

        let diag = SquareMatrix::from_fn(2, |r, c| {
            if r == c {
                rat_int(if r == 0 { 2 } else { 1 })
            } else {
                rat_int(0)
            }
        });
        assert!(conjugation_check(&p, &diag).unwrap());

        let p3 = pencil_quantum(3).unwrap();
        let unipotent = SquareMatrix::from_fn(3, |r, c| {
            if r == c {
                rat_int(1)
            } else if r == 2 && c == 0 {
                rat_int(5)
            } else {
                rat_int(0)
            }
        });
        assert!(conjugation_check(&p3, &unipotent).unwrap());
    }

    #[test]
    fn singular_g_is_an_error() {
        let z = SquareMatrix::from_fn(2, |_, _| rat_int(1));
        assert!(rational_inverse(&z).is_err());
        let p = pencil_quantum(2).unwrap();
        assert!(conjugation_check(&p, &z).is_err());
    }

    #[test]
    fn row_scaling_by_central_scalar() {
        let p = pencil_quantum(2).unwrap();
        let c = rat(7, 3);
        let scaled = SquareMatrix::from_fn(2, |r, col| {
            if r == 0 {
                p.get(r, col).scale(&c)
            } else {
                p.get(r, col).clone()
            }
        });
        assert_eq!(
            det_nc_permsum(&scaled).unwrap(),
            det_nc_permsum(&p).unwrap().scale(&c)
        );
    }
}
