//! Floating-point flows: the open chain with exponential couplings and
//! generic Hamiltonian flows on the dual Borel algebra, with conserved
//! quantity drift monitored against the exact families.
//!
//! Fixed-step fourth-order Runge-Kutta only; drift measurements are the
//! deliverable here and determinism beats adaptive efficiency at these
//! sizes. Invariants are compiled once from their exact forms and the
//! time loop is purely numeric.

use std::collections::BTreeMap;
use std::io::Write;

use num_traits::ToPrimitive;

use crate::comm::CommPoly;
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use serde_json::{json, Map, Value};

pub const EXP_ARG_LIMIT: f64 = 700.0;

/// Vector field signature accepted by the integrator.
pub type Field = dyn Fn(f64, &[f64]) -> Result<Vec<f64>>;

#[derive(Clone, PartialEq, Debug)]
pub struct OpenChainState {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub t: f64,
}

impl OpenChainState {
    pub fn new(q: Vec<f64>, p: Vec<f64>) -> Self {
        assert_eq!(q.len(), p.len());
        OpenChainState { q, p, t: 0.0 }
    }

    pub fn sites(&self) -> usize {
        self.q.len()
    }

    pub fn energy(&self) -> f64 {
        let kinetic: f64 = self.p.iter().map(|p| p * p / 2.0).sum();
        let potential: f64 = (0..self.q.len().saturating_sub(1))
            .map(|k| (self.q[k] - self.q[k + 1]).exp())
            .sum();
        kinetic + potential
    }

    pub fn total_momentum(&self) -> f64 {
        self.p.iter().sum()
    }

    pub fn pack(&self) -> Vec<f64> {
        let mut y = self.q.clone();
        y.extend_from_slice(&self.p);
        y
    }

    pub fn unpack(n: usize, y: &[f64], t: f64) -> Self {
        OpenChainState {
            q: y[..n].to_vec(),
            p: y[n..].to_vec(),
            t,
        }
    }
}

/// Point of the dual Borel algebra: values for the lower coordinates
/// x_ij, i >= j.
#[derive(Clone, PartialEq, Debug)]
pub struct BorelPoint {
    pub values: BTreeMap<(u8, u8), f64>,
    pub t: f64,
}

/// Lower-coordinate order used to pack a BorelPoint into a state vector.
pub fn borel_coords(n: usize) -> Vec<(u8, u8)> {
    let mut out = Vec::new();
    for i in 1..=n as u8 {
        for j in 1..=i {
            out.push((i, j));
        }
    }
    out
}

impl BorelPoint {
    pub fn pack(&self, n: usize) -> Vec<f64> {
        borel_coords(n)
            .iter()
            .map(|v| self.values.get(v).copied().unwrap_or(0.0))
            .collect()
    }

    pub fn unpack(n: usize, y: &[f64], t: f64) -> Self {
        let values = borel_coords(n).into_iter().zip(y.iter().copied()).collect();
        BorelPoint { values, t }
    }
}

/// Open-chain vector field: dq_k = p_k,
/// dp_k = exp(q_{k-1} - q_k) - exp(q_k - q_{k+1}) with missing neighbor
/// terms zero at the ends.
pub fn open_toda_rhs(s: &OpenChainState) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = s.sites();
    for k in 0..n.saturating_sub(1) {
        if (s.q[k] - s.q[k + 1]).abs() > EXP_ARG_LIMIT {
            return Err(Error::Overflow { t: s.t });
        }
    }
    let bond = |k: usize| (s.q[k] - s.q[k + 1]).exp();
    let dq = s.p.clone();
    let dp = (0..n)
        .map(|k| {
            let left = if k > 0 { bond(k - 1) } else { 0.0 };
            let right = if k + 1 < n { bond(k) } else { 0.0 };
            left - right
        })
        .collect();
    Ok((dq, dp))
}

/// Open-chain field on packed state vectors.
pub fn open_toda_field(n: usize) -> impl Fn(f64, &[f64]) -> Result<Vec<f64>> {
    move |t, y| {
        let s = OpenChainState::unpack(n, y, t);
        let (dq, mut dp) = open_toda_rhs(&s)?;
        let mut out = dq;
        out.append(&mut dp);
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub final_state: Vec<f64>,
    pub final_time: f64,
}

/// Classical fixed-step RK4 over [t0, t0 + steps*dt], sampling every
/// `stride` steps (the initial state is always sample 0). Aborts with the
/// last good time if the state leaves the finite range.
pub fn integrate_rk4(
    y0: &[f64],
    t0: f64,
    dt: f64,
    steps: usize,
    stride: usize,
    rhs: &Field,
) -> Result<Trajectory> {
    if dt == 0.0 || !dt.is_finite() {
        return Err(Error::InvalidParameter(
            "dt must be nonzero and finite".into(),
        ));
    }
    let stride = stride.max(1);
    let mut y = y0.to_vec();
    let mut t = t0;
    let mut traj = Trajectory {
        times: vec![t],
        states: vec![y.clone()],
        final_state: y.clone(),
        final_time: t,
    };
    let axpy = |y: &[f64], k: &[f64], h: f64| -> Vec<f64> {
        y.iter().zip(k).map(|(a, b)| a + h * b).collect()
    };
    for step in 1..=steps {
        let k1 = rhs(t, &y)?;
        let k2 = rhs(t + dt / 2.0, &axpy(&y, &k1, dt / 2.0))?;
        let k3 = rhs(t + dt / 2.0, &axpy(&y, &k2, dt / 2.0))?;
        let k4 = rhs(t + dt, &axpy(&y, &k3, dt))?;
        for i in 0..y.len() {
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t = t0 + step as f64 * dt;
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { t });
        }
        if step % stride == 0 || step == steps {
            traj.times.push(t);
            traj.states.push(y.clone());
        }
    }
    traj.final_state = y;
    traj.final_time = t;
    Ok(traj)
}

/// Characteristic polynomial coefficients of a numeric matrix by the
/// Faddeev-LeVerrier recursion: returns c with
/// det(lambda I - L) = lambda^n + c[n-1] lambda^{n-1} + ... + c[0],
/// reported as the full vector [c0, ..., c_{n-1}, 1].
pub fn charpoly_coeffs(l: &SquareMatrix<f64>) -> Vec<f64> {
    let n = l.size();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut m = SquareMatrix::from_fn(n, |r, c| if r == c { 1.0 } else { 0.0 });
    for step in 1..=n {
        // a = L * m
        let a = SquareMatrix::from_fn(n, |r, c| (0..n).map(|t| l.get(r, t) * m.get(t, c)).sum());
        let trace: f64 = (0..n).map(|r| *a.get(r, r)).sum();
        let ck = -trace / step as f64;
        coeffs[n - step] = ck;
        m = SquareMatrix::from_fn(n, |r, c| a.get(r, c) + if r == c { ck } else { 0.0 });
    }
    coeffs
}

/// Drift of monitored scalars along a trajectory, relative to their
/// values at the first sample; the relative scale is max(|v0|, 1).
#[derive(Clone, Debug)]
pub struct DriftReport {
    pub names: Vec<String>,
    pub times: Vec<f64>,
    pub series: Vec<Vec<f64>>,
    pub max_rel_drift: Vec<f64>,
}

impl DriftReport {
    pub fn from_series(names: Vec<String>, times: Vec<f64>, series: Vec<Vec<f64>>) -> Self {
        let max_rel_drift = series
            .iter()
            .map(|vals| {
                let v0 = vals.first().copied().unwrap_or(0.0);
                let scale = v0.abs().max(1.0);
                vals.iter()
                    .map(|v| (v - v0).abs() / scale)
                    .fold(0.0, f64::max)
            })
            .collect();
        DriftReport {
            names,
            times,
            series,
            max_rel_drift,
        }
    }

    pub fn overall_max(&self) -> f64 {
        self.max_rel_drift.iter().copied().fold(0.0, f64::max)
    }

    pub fn to_json(&self, extra: &[(&str, Value)]) -> Value {
        let mut m = Map::new();
        for (k, v) in extra {
            m.insert((*k).to_string(), v.clone());
        }
        m.insert("samples".into(), json!(self.times.len()));
        let invariants: Vec<Value> = self
            .names
            .iter()
            .enumerate()
            .map(|(idx, name)| {
                json!({
                    "name": name,
                    "initial": self.series[idx].first().copied().unwrap_or(0.0),
                    "max_rel_drift": self.max_rel_drift[idx],
                    "series": self.series[idx],
                })
            })
            .collect();
        m.insert("invariants".into(), Value::Array(invariants));
        m.insert("times".into(), json!(self.times));
        m.insert("max_rel_drift".into(), json!(self.overall_max()));
        Value::Object(m)
    }
}

/// Spectral drift of the open chain: the characteristic-polynomial
/// coefficients of the corner-augmented matrix at each sample, compared
/// with the first sample.
pub fn spectral_drift(traj: &Trajectory, n: usize, w: f64) -> DriftReport {
    let names: Vec<String> = (0..=n).map(|i| format!("charpoly_c{i}")).collect();
    let mut series = vec![Vec::with_capacity(traj.times.len()); n + 1];
    for (idx, y) in traj.states.iter().enumerate() {
        let s = OpenChainState::unpack(n, y, traj.times[idx]);
        let l = crate::matrix::open_lax(&s, w);
        let coeffs = charpoly_coeffs(&l);
        for (i, c) in coeffs.into_iter().enumerate() {
            series[i].push(c);
        }
    }
    DriftReport::from_series(names, traj.times.clone(), series)
}

/// Exact polynomial compiled to a flat evaluation form over the packed
/// lower-coordinate order.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<(f64, Vec<(usize, u32)>)>,
}

impl CompiledPoly {
    /// Compile a polynomial in lower coordinates; errors on upper
    /// coordinates or spectral variables.
    pub fn compile(p: &CommPoly, n: usize) -> Result<CompiledPoly> {
        let order: BTreeMap<(u8, u8), usize> = borel_coords(n)
            .into_iter()
            .enumerate()
            .map(|(idx, v)| (v, idx))
            .collect();
        let mut terms = Vec::new();
        for (t, c) in p.terms() {
            if t.u != 0 || t.lambda != 0 || t.mu != 0 || t.eps != 0 {
                return Err(Error::SpectralVariable(
                    "compiled invariants must be pure coordinate polynomials".into(),
                ));
            }
            let mut factors = Vec::with_capacity(t.xs.len());
            for &((i, j), e) in &t.xs {
                let idx = order.get(&(i, j)).ok_or(Error::UpperCoordinate { i, j })?;
                factors.push((*idx, e));
            }
            terms.push((c.to_f64().unwrap_or(f64::NAN), factors));
        }
        Ok(CompiledPoly { terms })
    }

    pub fn eval(&self, y: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (c, factors) in &self.terms {
            let mut prod = *c;
            for &(idx, e) in factors {
                prod *= y[idx].powi(e as i32);
            }
            acc += prod;
        }
        acc
    }
}

/// Hamiltonian vector field on the dual Borel algebra: for each lower
/// coordinate the bracket {H, x_ij} is computed symbolically once and
/// compiled; the time loop only evaluates.
pub fn kk_flow_field(h: &CommPoly, n: usize) -> Result<impl Fn(f64, &[f64]) -> Result<Vec<f64>>> {
    for (i, j) in h.x_vars() {
        if i < j {
            return Err(Error::UpperCoordinate { i, j });
        }
    }
    let mut compiled = Vec::new();
    for (i, j) in borel_coords(n) {
        let br = h.poisson_bracket(&CommPoly::x(n, i, j))?;
        compiled.push(CompiledPoly::compile(&br, n)?);
    }
    Ok(move |_t: f64, y: &[f64]| -> Result<Vec<f64>> {
        let out: Vec<f64> = compiled.iter().map(|p| p.eval(y)).collect();
        if out.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { t: _t });
        }
        Ok(out)
    })
}

/// Evaluate a list of compiled invariants along a trajectory.
pub fn invariant_drift(
    traj: &Trajectory,
    names: Vec<String>,
    invariants: &[CompiledPoly],
) -> DriftReport {
    let monitors: Vec<Monitor> = invariants.iter().cloned().map(Monitor::Poly).collect();
    monitor_drift(traj, names, &monitors)
}

/// A monitored scalar: a polynomial value or a quotient of two.
#[derive(Clone, Debug)]
pub enum Monitor {
    Poly(CompiledPoly),
    Ratio(CompiledPoly, CompiledPoly),
}

impl Monitor {
    pub fn eval(&self, y: &[f64]) -> f64 {
        match self {
            Monitor::Poly(p) => p.eval(y),
            Monitor::Ratio(num, den) => num.eval(y) / den.eval(y),
        }
    }
}

pub fn monitor_drift(traj: &Trajectory, names: Vec<String>, monitors: &[Monitor]) -> DriftReport {
    let mut series = vec![Vec::with_capacity(traj.times.len()); monitors.len()];
    for y in &traj.states {
        for (idx, m) in monitors.iter().enumerate() {
            series[idx].push(m.eval(y));
        }
    }
    DriftReport::from_series(names, traj.times.clone(), series)
}

/// Spectral data of every chopped minor as monitored scalars: the
/// coefficients of delta_k(lambda) normalized by the level's leading
/// lambda coefficient. These carry exactly the roots of the minors, the
/// conserved set of the commutative family; for the full minor the
/// leading coefficient is the constant (-1)^n, so its entries are the
/// plain coefficients. Unnormalized lower-level coefficients are NOT
/// conserved (they evolve by a common conformal factor).
pub fn minor_root_monitors(n: usize) -> Result<(Vec<String>, Vec<Monitor>)> {
    let mut names = Vec::new();
    let mut monitors = Vec::new();
    for k in 0..n {
        let coeffs = crate::family::delta_coefficients(n, k)?;
        let top_idx = coeffs.len() - 1;
        let top = CompiledPoly::compile(&coeffs[top_idx], n)?;
        for (i, c) in coeffs.iter().enumerate().take(top_idx) {
            names.push(format!("delta[{k},{i}]/delta[{k},{top_idx}]"));
            monitors.push(Monitor::Ratio(CompiledPoly::compile(c, n)?, top.clone()));
        }
    }
    Ok((names, monitors))
}

/// CSV trace: one row per sample with t, the state coordinates, then the
/// monitored invariants.
pub fn write_csv<W: Write>(
    mut w: W,
    coord_names: &[String],
    traj: &Trajectory,
    drift: &DriftReport,
) -> std::io::Result<()> {
    let mut header = vec!["t".to_string()];
    header.extend_from_slice(coord_names);
    header.extend(drift.names.iter().cloned());
    writeln!(w, "{}", header.join(","))?;
    for (idx, t) in traj.times.iter().enumerate() {
        let mut row = vec![format!("{t:.12e}")];
        for v in &traj.states[idx] {
            row.push(format!("{v:.12e}"));
        }
        for series in &drift.series {
            row.push(format!("{:.12e}", series[idx]));
        }
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rhs_at_the_origin() {
        let s = OpenChainState::new(vec![0.0, 0.0], vec![0.0, 0.0]);
        let (dq, dp) = open_toda_rhs(&s).unwrap();
        assert_eq!(dq, vec![0.0, 0.0]);
        assert_eq!(dp, vec![-1.0, 1.0]);
    }

    #[test]
    fn total_momentum_derivative_telescopes() {
        let s = OpenChainState::new(vec![0.3, -0.2, 0.5], vec![1.0, -2.0, 0.5]);
        let (_, dp) = open_toda_rhs(&s).unwrap();
        assert!(dp.iter().sum::<f64>().abs() < 1e-15);
    }

    #[test]
    fn decoupled_limit() {
        let s = OpenChainState::new(vec![0.0, 200.0_f64.min(EXP_ARG_LIMIT)], vec![1.0, 0.0]);
        // widely separated in the decreasing direction: couplings vanish
        let s = OpenChainState::new(vec![-100.0, 100.0], s.p);
        let (dq, dp) = open_toda_rhs(&s).unwrap();
        assert_eq!(dq, vec![1.0, 0.0]);
        assert!(dp[0].abs() < 1e-60 && dp[1].abs() < 1e-60);
    }

    #[test]
    fn overflow_guard() {
        let s = OpenChainState::new(vec![800.0, 0.0], vec![0.0, 0.0]);
        assert!(matches!(open_toda_rhs(&s), Err(Error::Overflow { .. })));
    }

    #[test]
    fn zero_field_constant_trajectory() {
        let rhs = |_: f64, y: &[f64]| Ok(vec![0.0; y.len()]);
        let traj = integrate_rk4(&[1.0, 2.0], 0.0, 0.01, 100, 10, &rhs).unwrap();
        assert_eq!(traj.final_state, vec![1.0, 2.0]);
        assert_eq!(traj.states.len(), 11);
    }

    #[test]
    fn harmonic_oscillator_period() {
        // y = (q, p), q' = p, p' = -q; dt divides one period exactly
        let rhs = |_: f64, y: &[f64]| Ok(vec![y[1], -y[0]]);
        let steps = 6283;
        let dt = 2.0 * std::f64::consts::PI / steps as f64;
        let traj = integrate_rk4(&[1.0, 0.0], 0.0, dt, steps, steps, &rhs).unwrap();
        let err = ((traj.final_state[0] - 1.0).powi(2) + traj.final_state[1].powi(2)).sqrt();
        assert!(err < 1e-8, "period return error {err}");
    }

    #[test]
    fn rk4_order_measurement() {
        let rhs = |_: f64, y: &[f64]| Ok(vec![y[1], -y[0]]);
        let endpoint = |steps: usize| {
            let dt = 2.0 * std::f64::consts::PI / steps as f64;
            integrate_rk4(&[1.0, 0.0], 0.0, dt, steps, steps, &rhs)
                .unwrap()
                .final_state
        };
        let err = |y: Vec<f64>| ((y[0] - 1.0).powi(2) + y[1].powi(2)).sqrt();
        let e1 = err(endpoint(126));
        let e2 = err(endpoint(252));
        let ratio = e1 / e2;
        assert!(
            (10.0..25.0).contains(&ratio),
            "halving dt should shrink the error ~16x, got {ratio}"
        );
    }

    #[test]
    fn charpoly_coeffs_match_polynomial_fit() {
        // independent oracle: evaluate det(lambda I - L) at n+1 points by
        // the Leibniz determinant and solve for the coefficients.
        let l = SquareMatrix::from_fn(3, |r, c| ((r * 3 + c) as f64 * 0.17).sin());
        let coeffs = charpoly_coeffs(&l);
        let eval_det = |lambda: f64| {
            let m =
                SquareMatrix::from_fn(3, |r, c| (if r == c { lambda } else { 0.0 }) - l.get(r, c));
            crate::det::det_commutative(&m).unwrap()
        };
        for lambda in [0.0, 0.5, -1.0, 2.0] {
            let horner: f64 = coeffs.iter().rev().fold(0.0, |acc, c| acc * lambda + c);
            assert!((horner - eval_det(lambda)).abs() < 1e-12);
        }
    }

    #[test]
    fn drift_report_uses_floor_scale() {
        let r = DriftReport::from_series(vec!["a".into()], vec![0.0, 1.0], vec![vec![0.5, 0.75]]);
        // |0.75 - 0.5| / max(0.5, 1) = 0.25
        assert!((r.max_rel_drift[0] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn kk_field_structure_constant() {
        // H = x_11: d(x_21)/dt = {x_11, x_21} = -x_21
        let n = 2;
        let h = CommPoly::x(n, 1, 1);
        let field = kk_flow_field(&h, n).unwrap();
        let coords = borel_coords(n);
        let x21 = coords.iter().position(|&v| v == (2, 1)).unwrap();
        let mut y = vec![0.0; coords.len()];
        y[x21] = 2.0;
        let dy = field(0.0, &y).unwrap();
        assert_eq!(dy[x21], -2.0);
    }

    #[test]
    fn kk_field_trace_is_casimir() {
        let n = 3;
        let h = CommPoly::x(n, 1, 1)
            .add(&CommPoly::x(n, 2, 2))
            .add(&CommPoly::x(n, 3, 3));
        let field = kk_flow_field(&h, n).unwrap();
        let y: Vec<f64> = (0..borel_coords(n).len())
            .map(|i| 0.1 * (i as f64 + 1.0))
            .collect();
        let dy = field(0.0, &y).unwrap();
        assert!(dy.iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn kk_field_rejects_upper_hamiltonian() {
        let h = CommPoly::x(2, 1, 2);
        assert!(kk_flow_field(&h, 2).is_err());
    }

    #[test]
    fn constant_invariant_has_zero_drift() {
        let n = 2;
        let one = CommPoly::one(n);
        let inv = CompiledPoly::compile(&one, n).unwrap();
        let traj = Trajectory {
            times: vec![0.0, 1.0],
            states: vec![vec![0.0; 3], vec![5.0; 3]],
            final_state: vec![5.0; 3],
            final_time: 1.0,
        };
        let report = invariant_drift(&traj, vec!["one".into()], &[inv]);
        assert_eq!(report.max_rel_drift, vec![0.0]);
    }
}
