//! Construction of the Lax-type matrices: the full and Borel coordinate
//! matrices, the antidiagonal deformation, the classical and quantum
//! spectral pencils, the chopped matrices, and the numeric open-chain
//! matrix.

use crate::comm::CommPoly;
use crate::error::{Error, Result};
use crate::quantum::QuantumPoly;
use crate::rational::rat_int;
use crate::sim::OpenChainState;

/// Dense square matrix, row-major. Entries are tiny (n <= 6), nothing
/// clever is needed.
#[derive(Clone, PartialEq, Debug)]
pub struct SquareMatrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T> SquareMatrix<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(f(r, c));
            }
        }
        SquareMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// 0-based access.
    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.n + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.entries[r * self.n + c]
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> SquareMatrix<U> {
        SquareMatrix::from_fn(self.n, |r, c| f(self.get(r, c)))
    }
}

/// The antidiagonal deformation matrix: entry (i, n+1-i) is eps^{i-1}
/// (1-based), everything else zero. Exponents increase from the top-right
/// corner down to the bottom-left.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OmegaMatrix {
    pub n: usize,
}

impl OmegaMatrix {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidRank(n));
        }
        Ok(OmegaMatrix { n })
    }

    /// eps exponent at 1-based position (i, j), None off the antidiagonal.
    pub fn eps_exponent(&self, i: usize, j: usize) -> Option<u32> {
        if i >= 1 && i <= self.n && j == self.n + 1 - i {
            Some((i - 1) as u32)
        } else {
            None
        }
    }

    pub fn nonzero_count(&self) -> usize {
        self.n
    }

    pub fn eps_exponent_sum(&self) -> u32 {
        (self.n * (self.n - 1) / 2) as u32
    }

    pub fn to_classical(&self) -> SquareMatrix<CommPoly> {
        SquareMatrix::from_fn(self.n, |r, c| match self.eps_exponent(r + 1, c + 1) {
            Some(e) => eps_power_classical(self.n, e),
            None => CommPoly::zero(self.n),
        })
    }

    pub fn to_quantum(&self) -> SquareMatrix<QuantumPoly> {
        SquareMatrix::from_fn(self.n, |r, c| match self.eps_exponent(r + 1, c + 1) {
            Some(e) => eps_power_quantum(self.n, e),
            None => QuantumPoly::zero(self.n),
        })
    }
}

fn eps_power_classical(n: usize, e: u32) -> CommPoly {
    let mut acc = CommPoly::one(n);
    let eps = CommPoly::var_eps(n);
    for _ in 0..e {
        acc = acc.mul(&eps);
    }
    acc
}

fn eps_power_quantum(n: usize, e: u32) -> QuantumPoly {
    let mut acc = QuantumPoly::one(n);
    let eps = QuantumPoly::var_eps(n);
    for _ in 0..e {
        acc = acc.mul(&eps).expect("same rank");
    }
    acc
}

/// Full coordinate matrix: entry (i,j) is x_ij.
pub fn full_lax_classical(n: usize) -> Result<SquareMatrix<CommPoly>> {
    if n < 1 {
        return Err(Error::InvalidRank(n));
    }
    Ok(SquareMatrix::from_fn(n, |r, c| {
        CommPoly::x(n, (r + 1) as u8, (c + 1) as u8)
    }))
}

/// Full generator matrix: entry (i,j) is e_ij in U(gl_n).
pub fn full_lax_quantum(n: usize) -> Result<SquareMatrix<QuantumPoly>> {
    if n < 1 {
        return Err(Error::InvalidRank(n));
    }
    Ok(SquareMatrix::from_fn(n, |r, c| {
        QuantumPoly::gen_e(n, (r + 1) as u8, (c + 1) as u8)
    }))
}

/// Symmetric matrix of Borel coordinates: entry (i,j) = entry (j,i) = x_ij
/// for i >= j. Functions on the dual of the lower Borel subalgebra.
pub fn borel_lax(n: usize) -> Result<SquareMatrix<CommPoly>> {
    if n < 1 {
        return Err(Error::InvalidRank(n));
    }
    Ok(SquareMatrix::from_fn(n, |r, c| {
        let (i, j) = if r >= c {
            (r + 1, c + 1)
        } else {
            (c + 1, r + 1)
        };
        CommPoly::x(n, i as u8, j as u8)
    }))
}

/// Forms A - lambda*Id, then deletes the k right columns and the k upper
/// rows. The result is (n-k) x (n-k); lambda survives exactly where an
/// original diagonal position did.
pub fn chop(a: &SquareMatrix<CommPoly>, k: usize) -> Result<SquareMatrix<CommPoly>> {
    let n = a.size();
    if k >= n {
        return Err(Error::ChopOutOfRange { n, k });
    }
    let rank = a.get(0, 0).rank();
    Ok(SquareMatrix::from_fn(n - k, |r, c| {
        let (orig_r, orig_c) = (r + k, c);
        let mut entry = a.get(orig_r, orig_c).clone();
        if orig_r == orig_c {
            entry = entry.sub(&CommPoly::var_lambda(rank));
        }
        entry
    }))
}

/// Classical spectral pencil: entries A_ij u + Omega_ij - d_ij lambda.
pub fn pencil_classical(n: usize) -> Result<SquareMatrix<CommPoly>> {
    let a = full_lax_classical(n)?;
    let omega = OmegaMatrix::new(n)?.to_classical();
    let u = CommPoly::var_u(n);
    let lambda = CommPoly::var_lambda(n);
    Ok(SquareMatrix::from_fn(n, |r, c| {
        let mut entry = a.get(r, c).mul(&u).add(omega.get(r, c));
        if r == c {
            entry = entry.sub(&lambda);
        }
        entry
    }))
}

/// Quantum spectral pencil: entries A_ij u + Omega_ij - d_ij D.
pub fn pencil_quantum(n: usize) -> Result<SquareMatrix<QuantumPoly>> {
    let a = full_lax_quantum(n)?;
    let omega = OmegaMatrix::new(n)?.to_quantum();
    let u = QuantumPoly::var_u(n);
    let d = QuantumPoly::var_d(n);
    Ok(SquareMatrix::from_fn(n, |r, c| {
        let mut entry = a.get(r, c).mul(&u).expect("same rank").add(omega.get(r, c));
        if r == c {
            entry = entry.sub(&d);
        }
        entry
    }))
}

/// Numeric open-chain matrix with the spectral corner: diagonal -p_k,
/// couplings exp((q_k - q_{k+1})/2) on the off-diagonals, and w times the
/// wrap-around coupling at position (n, 1). For n = 2 the corner and the
/// subdiagonal coincide and the entry is their sum.
pub fn open_lax(state: &OpenChainState, w: f64) -> SquareMatrix<f64> {
    let n = state.q.len();
    let coupling = |k: usize| -> f64 {
        // bond k between site k and k+1 (0-based), wrapping at the end
        let next = (k + 1) % n;
        ((state.q[k] - state.q[next]) / 2.0).exp()
    };
    let mut m = SquareMatrix::from_fn(n, |_, _| 0.0);
    for k in 0..n {
        *m.get_mut(k, k) = -state.p[k];
    }
    for k in 0..n.saturating_sub(1) {
        let c = coupling(k);
        *m.get_mut(k, k + 1) = c;
        *m.get_mut(k + 1, k) = c;
    }
    if n >= 2 {
        *m.get_mut(n - 1, 0) += w * coupling(n - 1);
    }
    m
}

/// Scalar multiple of the identity added entrywise, for numeric matrices.
pub fn rational_identity(n: usize) -> SquareMatrix<crate::rational::Rational> {
    SquareMatrix::from_fn(n, |r, c| if r == c { rat_int(1) } else { rat_int(0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;
    use num_traits::One;

    #[test]
    fn omega_small_ranks() {
        let o = OmegaMatrix::new(2).unwrap();
        assert_eq!(o.eps_exponent(1, 2), Some(0));
        assert_eq!(o.eps_exponent(2, 1), Some(1));
        assert_eq!(o.eps_exponent(1, 1), None);
        let o3 = OmegaMatrix::new(3).unwrap();
        assert_eq!(o3.eps_exponent(1, 3), Some(0));
        assert_eq!(o3.eps_exponent(2, 2), Some(1));
        assert_eq!(o3.eps_exponent(3, 1), Some(2));
        let o1 = OmegaMatrix::new(1).unwrap();
        assert_eq!(o1.eps_exponent(1, 1), Some(0));
    }

    #[test]
    fn full_lax_entries() {
        let a = full_lax_quantum(3).unwrap();
        assert_eq!(*a.get(2, 0), QuantumPoly::gen_e(3, 3, 1));
        let a1 = full_lax_classical(1).unwrap();
        assert_eq!(*a1.get(0, 0), CommPoly::x(1, 1, 1));
    }

    #[test]
    fn borel_lax_is_symmetric_in_lower_coordinates() {
        let a = borel_lax(3).unwrap();
        assert_eq!(*a.get(0, 2), CommPoly::x(3, 3, 1));
        assert_eq!(*a.get(2, 0), CommPoly::x(3, 3, 1));
        let a2 = borel_lax(2).unwrap();
        assert_eq!(*a2.get(0, 1), CommPoly::x(2, 2, 1));
    }

    #[test]
    fn chop_examples() {
        // n=2, k=1: single entry x_21, lambda gone
        let a = borel_lax(2).unwrap();
        let m = chop(&a, 1).unwrap();
        assert_eq!(m.size(), 1);
        assert_eq!(*m.get(0, 0), CommPoly::x(2, 2, 1));

        // k=0 is A - lambda Id
        let m0 = chop(&a, 0).unwrap();
        assert_eq!(
            *m0.get(0, 0),
            CommPoly::x(2, 1, 1).sub(&CommPoly::var_lambda(2))
        );
        assert_eq!(*m0.get(0, 1), CommPoly::x(2, 2, 1));

        // n=3, k=1: rows {2,3} x columns {1,2}
        let a3 = borel_lax(3).unwrap();
        let m3 = chop(&a3, 1).unwrap();
        assert_eq!(m3.size(), 2);
        assert_eq!(*m3.get(0, 0), CommPoly::x(3, 2, 1));
        assert_eq!(
            *m3.get(0, 1),
            CommPoly::x(3, 2, 2).sub(&CommPoly::var_lambda(3))
        );
        assert_eq!(*m3.get(1, 0), CommPoly::x(3, 3, 1));
        assert_eq!(*m3.get(1, 1), CommPoly::x(3, 3, 2));

        assert!(chop(&a3, 3).is_err());
    }

    #[test]
    fn pencil_entries() {
        let p = pencil_classical(2).unwrap();
        // (1,2): x_12 u + 1
        let expect = CommPoly::x(2, 1, 2)
            .mul(&CommPoly::var_u(2))
            .add(&CommPoly::one(2));
        assert_eq!(*p.get(0, 1), expect);
        // (2,1): x_21 u + eps
        let expect = CommPoly::x(2, 2, 1)
            .mul(&CommPoly::var_u(2))
            .add(&CommPoly::var_eps(2));
        assert_eq!(*p.get(1, 0), expect);

        let q = pencil_quantum(2).unwrap();
        // (1,1): e_11 u - D
        let expect = QuantumPoly::gen_e(2, 1, 1)
            .mul(&QuantumPoly::var_u(2))
            .unwrap()
            .sub(&QuantumPoly::var_d(2));
        assert_eq!(*q.get(0, 0), expect);
    }

    #[test]
    fn open_lax_shapes() {
        let s = OpenChainState::new(vec![0.0; 3], vec![0.0; 3]);
        let m = open_lax(&s, 0.5);
        for k in 0..3 {
            assert_eq!(*m.get(k, k), 0.0);
        }
        assert_eq!(*m.get(0, 1), 1.0);
        assert_eq!(*m.get(1, 2), 1.0);
        assert_eq!(*m.get(2, 0), 0.5);
        assert_eq!(*m.get(0, 2), 0.0);

        let s = OpenChainState::new(vec![0.0; 3], vec![1.0, 2.0, 3.0]);
        let m = open_lax(&s, 0.0);
        assert_eq!(*m.get(0, 0), -1.0);
        assert_eq!(*m.get(1, 1), -2.0);
        assert_eq!(*m.get(2, 2), -3.0);
        assert_eq!(*m.get(2, 0), 0.0);
    }

    #[test]
    fn open_lax_n2_degenerate_corner() {
        let s = OpenChainState::new(vec![0.5, -0.5], vec![0.0, 0.0]);
        let m = open_lax(&s, 2.0);
        let c1 = ((0.5 - (-0.5)) / 2.0_f64).exp();
        let c2 = ((-0.5 - 0.5) / 2.0_f64).exp();
        assert!((m.get(1, 0) - (c1 + 2.0 * c2)).abs() < 1e-15);
        assert_eq!(*m.get(0, 1), c1);
    }

    #[test]
    fn invalid_rank() {
        assert!(full_lax_classical(0).is_err());
        assert!(OmegaMatrix::new(0).is_err());
    }

    #[test]
    fn rational_identity_is_identity() {
        let id = rational_identity(3);
        assert!(id.get(0, 0).is_one());
        assert_eq!(*id.get(0, 1), rat_int(0));
    }
}
